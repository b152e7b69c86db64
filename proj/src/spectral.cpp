#include "l0graph/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace l0graph {

namespace {

/// Uniform double in [0, 1) built from the top 53 bits of the generator, so
/// sampling is reproducible bit-for-bit and independent of any library's
/// distribution implementation.
double rand_u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int rand_index(std::mt19937_64& rng, int n) {
  return std::min(n - 1, static_cast<int>(rand_u01(rng) * n));
}

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenPairs smallest_eigenpairs(const Eigen::MatrixXd& L, int c) {
  if (L.rows() != L.cols()) {
    throw std::invalid_argument("eigendecomposition input must be square");
  }
  if (c < 1 || c > L.rows()) {
    throw std::invalid_argument("need 1 <= c <= n eigenvectors");
  }
  const Eigen::MatrixXd sym = 0.5 * (L + L.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigendecomposition failed to converge");
  }
  EigenPairs out;
  out.values = solver.eigenvalues().head(c);
  out.vectors = solver.eigenvectors().leftCols(c);
  // Deterministic sign: make the entry of largest absolute value positive
  // (first such entry on ties).
  for (int j = 0; j < c; ++j) {
    int arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.vectors.rows(); ++i) {
      const double a = std::abs(out.vectors(i, j));
      if (a > best) {
        best = a;
        arg = static_cast<int>(i);
      }
    }
    if (out.vectors(arg, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
  }
  return out;
}

struct KmeansRun {
  Eigen::VectorXi labels;
  double inertia = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const Eigen::MatrixXd& points, int c,
                      std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  std::mt19937_64 rng(seed);

  // k-means++ seeding: each next center is drawn proportionally to the
  // squared distance to the nearest chosen center.
  Eigen::MatrixXd centers(c, points.cols());
  std::vector<bool> chosen(n, false);
  {
    const int first = rand_index(rng, n);
    centers.row(0) = points.row(first);
    chosen[first] = true;
    Eigen::VectorXd dist2(n);
    for (int i = 0; i < n; ++i) {
      dist2(i) = (points.row(i) - centers.row(0)).squaredNorm();
    }
    for (int k = 1; k < c; ++k) {
      const double total = dist2.sum();
      int pick = -1;
      if (total > 0.0) {
        const double u = rand_u01(rng) * total;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += dist2(i);
          if (u < acc) {
            pick = i;
            break;
          }
        }
        if (pick < 0) pick = n - 1;  // guard against rounding at the top end
      } else {
        // All remaining points coincide with chosen centers; take the
        // smallest unchosen index.
        for (int i = 0; i < n; ++i) {
          if (!chosen[i]) {
            pick = i;
            break;
          }
        }
        if (pick < 0) pick = 0;
      }
      centers.row(k) = points.row(pick);
      chosen[pick] = true;
      for (int i = 0; i < n; ++i) {
        dist2(i) =
            std::min(dist2(i), (points.row(i) - centers.row(k)).squaredNorm());
      }
    }
  }

  Eigen::VectorXi labels = Eigen::VectorXi::Zero(n);
  double previous = std::numeric_limits<double>::infinity();
  double inertia = previous;
  for (int iter = 0; iter < 300; ++iter) {
    // Assignment: nearest center, ties to the smaller center index.
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int arg = 0;
      double best = (points.row(i) - centers.row(0)).squaredNorm();
      for (int k = 1; k < c; ++k) {
        const double d = (points.row(i) - centers.row(k)).squaredNorm();
        if (d < best) {
          best = d;
          arg = k;
        }
      }
      if (labels(i) != arg) {
        labels(i) = arg;
        changed = true;
      }
    }

    // Repair empty clusters: each takes the point farthest from its current
    // center, never stealing the sole member of another cluster.
    Eigen::VectorXi sizes = Eigen::VectorXi::Zero(c);
    for (int i = 0; i < n; ++i) sizes(labels(i))++;
    for (int k = 0; k < c; ++k) {
      if (sizes(k) > 0) continue;
      int far = -1;
      double best = -1.0;
      for (int i = 0; i < n; ++i) {
        if (sizes(labels(i)) < 2) continue;
        const double d = (points.row(i) - centers.row(labels(i))).squaredNorm();
        if (d > best) {
          best = d;
          far = i;
        }
      }
      if (far < 0) continue;  // fewer distinct points than clusters
      sizes(labels(far))--;
      labels(far) = k;
      sizes(k) = 1;
      changed = true;
    }

    // Update step and inertia against the fresh centers.
    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(labels(i)) += points.row(i);
    for (int k = 0; k < c; ++k) {
      if (sizes(k) > 0) centers.row(k) /= static_cast<double>(sizes(k));
    }
    inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      inertia += (points.row(i) - centers.row(labels(i))).squaredNorm();
    }
    if (!changed || std::abs(previous - inertia) <= 1e-9) break;
    previous = inertia;
  }
  return {std::move(labels), inertia};
}

}  // namespace

SimilarityGraph SimilarityGraph::from_weights(Eigen::MatrixXd W) {
  const Eigen::Index n = W.rows();
  if (n != W.cols()) {
    throw std::invalid_argument("similarity matrix must be square");
  }
  if (!W.allFinite()) {
    throw std::invalid_argument("similarity matrix must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (W(i, i) != 0.0) {
      throw std::invalid_argument("similarity matrix must have a zero diagonal");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (W(i, j) < 0.0) {
        throw std::invalid_argument("similarity weights must be nonnegative");
      }
      if (W(i, j) != W(j, i)) {
        throw std::invalid_argument("similarity matrix must be symmetric");
      }
    }
  }

  SimilarityGraph g;
  g.W = std::move(W);
  g.degrees = g.W.rowwise().sum();
  Eigen::VectorXd dinv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dinv(i) = g.degrees(i) > 0.0 ? 1.0 / std::sqrt(g.degrees(i)) : 0.0;
  }
  g.laplacian.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g.laplacian(j, j) = g.degrees(j) > 0.0 ? 1.0 : 0.0;
    for (Eigen::Index i = 0; i < j; ++i) {
      const double v = -(dinv(i) * g.W(i, j)) * dinv(j);
      g.laplacian(i, j) = v;
      g.laplacian(j, i) = v;  // mirrored, so the Laplacian is exactly symmetric
    }
  }
  return g;
}

SimilarityGraph symmetrize(const CoefficientMatrix& alpha) {
  const Eigen::MatrixXd a = alpha.values.cwiseAbs();
  Eigen::MatrixXd W(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    W(j, j) = 0.0;
    for (Eigen::Index i = 0; i < j; ++i) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      W(i, j) = v;
      W(j, i) = v;
    }
  }
  return SimilarityGraph::from_weights(std::move(W));
}

Eigen::MatrixXd smallest_eigenvectors(const Eigen::MatrixXd& L, int c) {
  return smallest_eigenpairs(L, c).vectors;
}

ClusteringResult kmeans(const Eigen::MatrixXd& points, int c, int restarts,
                        std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  if (c < 1) throw std::invalid_argument("need at least one cluster");
  if (n < c) throw std::invalid_argument("fewer points than clusters");
  if (restarts < 1) throw std::invalid_argument("need at least one restart");

  std::vector<KmeansRun> runs(restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    runs[r] = kmeans_once(points, c, derive_seed(seed, r));
  }
  // Lowest inertia wins; ties keep the earliest restart, so the outcome does
  // not depend on the parallel schedule.
  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  ClusteringResult out;
  out.labels = std::move(runs[best].labels);
  out.kmeans_inertia = runs[best].inertia;
  return out;
}

ClusteringResult spectral_cluster_graph(const SimilarityGraph& graph, int c,
                                        std::uint64_t seed) {
  const EigenPairs pairs = smallest_eigenpairs(graph.laplacian, c);
  ClusteringResult out = kmeans(pairs.vectors, c, 10, seed);
  out.eigenvalues = pairs.values;
  return out;
}

ClusteringResult spectral_cluster(const CoefficientMatrix& alpha, int c,
                                  std::uint64_t seed) {
  return spectral_cluster_graph(symmetrize(alpha), c, seed);
}

Eigen::MatrixXd gaussian_similarity(const DataMatrix& X) {
  const int n = X.count();
  Eigen::MatrixXd dist2(n, n);
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    dist2(j, j) = 0.0;
    for (int i = 0; i < j; ++i) {
      const double d2 = (X.values.col(i) - X.values.col(j)).squaredNorm();
      dist2(i, j) = d2;
      dist2(j, i) = d2;
      flat.push_back(std::sqrt(d2));
    }
  }
  double sigma = 1.0;
  if (!flat.empty()) {
    std::sort(flat.begin(), flat.end());
    const std::size_t m = flat.size();
    const double median = (m % 2 == 1)
                              ? flat[m / 2]
                              : 0.5 * (flat[m / 2 - 1] + flat[m / 2]);
    sigma = median > 0.0 ? median : 1.0;
  }
  Eigen::MatrixXd W(n, n);
  for (int j = 0; j < n; ++j) {
    W(j, j) = 0.0;
    for (int i = 0; i < j; ++i) {
      const double v = std::exp(-dist2(i, j) / (2.0 * sigma * sigma));
      W(i, j) = v;
      W(j, i) = v;
    }
  }
  return W;
}

}  // namespace l0graph
