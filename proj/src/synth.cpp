#include "l0graph/synth.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <random>
#include <string>

namespace l0graph {

namespace {

constexpr int kMaxRedraws = 200;

Eigen::MatrixXd gaussian_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

/// Thin Q factor of a Gaussian draw: a uniformly random orthonormal frame.
Eigen::MatrixXd random_orthonormal(std::mt19937_64& rng, int rows, int cols) {
  const Eigen::MatrixXd g = gaussian_matrix(rng, rows, cols);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

int numerical_rank(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  }
  return rank;
}

int pair_rank(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd joined(a.rows(), a.cols() + b.cols());
  joined << a, b;
  return numerical_rank(joined);
}

}  // namespace

int SubspaceSpec::total_count() const {
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

void SubspaceSpec::validate() const {
  if (ambient_dim < 1) throw std::invalid_argument("ambient_dim must be >= 1");
  if (dims.empty()) throw std::invalid_argument("need at least one subspace");
  if (dims.size() != counts.size()) {
    throw std::invalid_argument("dims and counts must have equal length");
  }
  int dim_sum = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 1) throw std::invalid_argument("subspace dimensions must be >= 1");
    if (dims[k] > ambient_dim) {
      throw std::invalid_argument("subspace dimension exceeds ambient dimension");
    }
    if (counts[k] < dims[k] + 1) {
      throw std::invalid_argument(
          "need at least d_k + 1 samples per subspace (subspace " +
          std::to_string(k) + " has " + std::to_string(counts[k]) + " < " +
          std::to_string(dims[k] + 1) + ")");
    }
    dim_sum += dims[k];
  }
  switch (mode) {
    case SubspaceMode::independent:
      if (dim_sum > ambient_dim) {
        throw std::invalid_argument(
            "independent mode needs the subspace dimensions to sum to at "
            "most the ambient dimension");
      }
      break;
    case SubspaceMode::disjoint:
      for (std::size_t a = 0; a < dims.size(); ++a) {
        for (std::size_t b = a + 1; b < dims.size(); ++b) {
          if (dims[a] + dims[b] > ambient_dim) {
            throw std::invalid_argument(
                "disjoint mode needs d_a + d_b <= ambient dimension for "
                "every pair of subspaces");
          }
        }
      }
      break;
    case SubspaceMode::overlapping:
      if (dims.size() >= 2 &&
          *std::min_element(dims.begin(), dims.end()) < 2) {
        throw std::invalid_argument(
            "overlapping mode needs every subspace dimension >= 2");
      }
      break;
    case SubspaceMode::distinct_random:
      break;
  }
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("noise_sigma must be >= 0");
  }
}

SynthDataset generate(const SubspaceSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const int d = spec.ambient_dim;
  const int K = spec.subspaces();

  std::vector<Eigen::MatrixXd> bases(K);
  switch (spec.mode) {
    case SubspaceMode::independent: {
      // Carve orthogonal blocks out of one random orthonormal frame, so the
      // subspaces are mutually orthogonal (hence independent).
      int needed = 0;
      for (int dk : spec.dims) needed += dk;
      const Eigen::MatrixXd frame = random_orthonormal(rng, d, needed);
      int offset = 0;
      for (int k = 0; k < K; ++k) {
        bases[k] = frame.middleCols(offset, spec.dims[k]);
        offset += spec.dims[k];
      }
      break;
    }
    case SubspaceMode::disjoint: {
      bool ok = false;
      for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
        for (int k = 0; k < K; ++k) {
          bases[k] = random_orthonormal(rng, d, spec.dims[k]);
        }
        ok = true;
        for (int a = 0; a < K && ok; ++a) {
          for (int b = a + 1; b < K && ok; ++b) {
            // Trivial pairwise intersection iff the stacked bases have full
            // column rank.
            ok = pair_rank(bases[a], bases[b]) ==
                 spec.dims[a] + spec.dims[b];
          }
        }
      }
      if (!ok) {
        throw DataError("failed to draw pairwise-disjoint subspaces");
      }
      break;
    }
    case SubspaceMode::overlapping: {
      const int min_dim = *std::min_element(spec.dims.begin(), spec.dims.end());
      const int overlap = std::max(1, min_dim - 1);
      bool ok = false;
      for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
        const Eigen::MatrixXd shared = random_orthonormal(rng, d, overlap);
        for (int k = 0; k < K; ++k) {
          Eigen::MatrixXd raw(d, spec.dims[k]);
          raw.leftCols(overlap) = shared;
          raw.rightCols(spec.dims[k] - overlap) =
              gaussian_matrix(rng, d, spec.dims[k] - overlap);
          // The QR's leading columns span the shared block, so every basis
          // contains the common subspace.
          Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
          bases[k] =
              qr.householderQ() * Eigen::MatrixXd::Identity(d, spec.dims[k]);
        }
        ok = true;
        for (int a = 0; a < K && ok; ++a) {
          for (int b = a + 1; b < K && ok; ++b) {
            const int r = pair_rank(bases[a], bases[b]);
            // Distinct spans that still intersect nontrivially.
            ok = r > std::max(spec.dims[a], spec.dims[b]) &&
                 r < spec.dims[a] + spec.dims[b];
          }
        }
      }
      if (!ok) {
        throw DataError("failed to draw overlapping-but-distinct subspaces");
      }
      break;
    }
    case SubspaceMode::distinct_random: {
      bool ok = false;
      for (int attempt = 0; attempt < kMaxRedraws && !ok; ++attempt) {
        for (int k = 0; k < K; ++k) {
          bases[k] = random_orthonormal(rng, d, spec.dims[k]);
        }
        ok = true;
        for (int a = 0; a < K && ok; ++a) {
          for (int b = a + 1; b < K && ok; ++b) {
            const bool equal_span =
                spec.dims[a] == spec.dims[b] &&
                pair_rank(bases[a], bases[b]) == spec.dims[a];
            ok = !equal_span;
          }
        }
      }
      if (!ok) {
        throw DataError("failed to draw distinct random subspaces");
      }
      break;
    }
  }

  const int n = spec.total_count();
  Eigen::MatrixXd X(d, n);
  Eigen::VectorXi truth(n);
  int offset = 0;
  for (int k = 0; k < K; ++k) {
    const Eigen::MatrixXd coeffs =
        gaussian_matrix(rng, spec.dims[k], spec.counts[k]);
    X.middleCols(offset, spec.counts[k]).noalias() = bases[k] * coeffs;
    truth.segment(offset, spec.counts[k]).setConstant(k);
    offset += spec.counts[k];
  }
  if (spec.noise_sigma > 0.0) {
    X += spec.noise_sigma * gaussian_matrix(rng, d, n);
  }

  SynthDataset out;
  out.X = DataMatrix(std::move(X));
  out.truth = std::move(truth);
  out.bases = std::move(bases);
  return out;
}

double subspace_preserving_rate(const CoefficientMatrix& alpha,
                                const Eigen::VectorXi& truth) {
  const int n = alpha.size();
  if (truth.size() != n) {
    throw std::invalid_argument("truth length must match alpha size");
  }
  int preserving = 0;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      if (alpha.values(j, i) != 0.0 && truth(j) != truth(i)) {
        ok = false;
        break;
      }
    }
    if (ok) ++preserving;
  }
  return static_cast<double>(preserving) / static_cast<double>(n);
}

}  // namespace l0graph
