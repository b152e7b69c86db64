#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace l0graph {

/// Malformed input data (bad CSV, infeasible dataset). CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure inside a solver (non-finite iterate, eigensolver
/// breakdown, non-convergent spectral-norm estimate). CLI exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Column-major dataset: rows are features, columns are samples.
struct DataMatrix {
  Eigen::MatrixXd values;

  /// Original column norms, cached by normalize_columns(). Empty until then.
  Eigen::VectorXd column_norms;

  /// Indices of all-zero columns that normalize_columns() left untouched.
  std::vector<int> zero_columns;

  DataMatrix() = default;

  /// Throws std::invalid_argument unless the matrix is at least 1 x 2 with
  /// every entry finite.
  explicit DataMatrix(Eigen::MatrixXd m) : values(std::move(m)) {
    if (values.rows() < 1 || values.cols() < 2) {
      throw std::invalid_argument(
          "DataMatrix requires at least 1 feature and 2 samples, got " +
          std::to_string(values.rows()) + " x " + std::to_string(values.cols()));
    }
    if (!values.allFinite()) {
      throw std::invalid_argument("DataMatrix entries must all be finite");
    }
  }

  int dim() const { return static_cast<int>(values.rows()); }
  int count() const { return static_cast<int>(values.cols()); }
};

/// Square self-representation codes with an exactly-zero diagonal: column i
/// holds the coefficients expressing sample i in terms of the other samples.
struct CoefficientMatrix {
  Eigen::MatrixXd values;

  CoefficientMatrix() = default;

  /// Throws std::invalid_argument unless square with every diagonal entry
  /// exactly 0.0 (the no-self-representation constraint is maintained
  /// exactly, never "small").
  explicit CoefficientMatrix(Eigen::MatrixXd m) : values(std::move(m)) {
    if (values.rows() != values.cols()) {
      throw std::invalid_argument("CoefficientMatrix must be square");
    }
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      if (values(i, i) != 0.0) {
        throw std::invalid_argument(
            "CoefficientMatrix diagonal must be exactly zero (entry " +
            std::to_string(i) + " is not)");
      }
    }
  }

  static CoefficientMatrix zeros(int n) {
    return CoefficientMatrix(Eigen::MatrixXd::Zero(n, n));
  }

  int size() const { return static_cast<int>(values.rows()); }

  /// Number of exactly-nonzero entries per column.
  Eigen::VectorXi nnz_per_column() const {
    Eigen::VectorXi counts(values.cols());
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      int c = 0;
      for (Eigen::Index i = 0; i < values.rows(); ++i) {
        if (values(i, j) != 0.0) ++c;
      }
      counts(j) = c;
    }
    return counts;
  }

  double average_nnz() const {
    if (values.cols() == 0) return 0.0;
    return nnz_per_column().cast<double>().sum() /
           static_cast<double>(values.cols());
  }
};

/// Knobs shared by the self-representation solvers.
struct SolverConfig {
  double lambda = 0.5;     ///< sparsity weight of the hard-thresholding solver
  double lambda_l1 = 0.1;  ///< sparsity weight of the soft-thresholding initializer
  double tau = 1.1;        ///< step damping; the descent guarantee needs tau > 1
  int max_iter = 100;
  double tol = 1e-6;       ///< stop when the objective changes less than this
  double gamma = 0.1;      ///< neighbor-consistency weight (regularized variant)
  int knn_k = 5;           ///< neighbors per sample (regularized variant)
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(lambda_l1 >= 0.0)) throw std::invalid_argument("lambda_l1 must be >= 0");
    if (!(tau > 1.0)) throw std::invalid_argument("tau must be > 1");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
    if (knn_k < 1) throw std::invalid_argument("knn_k must be >= 1");
  }
};

/// Per-iteration record of the hard-thresholding solver.
struct ObjectiveTrace {
  double initial = 0.0;               ///< objective at the starting point
  double lipschitz_s = 0.0;           ///< step-size constant actually used
  std::vector<double> objective;      ///< objective after iteration t = 1, 2, ...
  std::vector<double> step_norm;      ///< Frobenius norm of iterate t minus iterate t-1
  std::vector<double> max_abs;        ///< largest |entry| of iterate t (boundedness monitor)

  int iterations() const { return static_cast<int>(objective.size()); }
  double final_objective() const {
    return objective.empty() ? initial : objective.back();
  }
};

/// Sweep/column traces of the regularized coordinate-descent solver.
struct RegObjectiveTrace {
  double initial = 0.0;        ///< full objective before the first sweep
  std::vector<double> outer;   ///< full objective after each sweep

  /// inner[s][i] lists the per-column objective F(alpha^i) recorded while
  /// column i was updated during sweep s (first entry = value before the
  /// first proximal step).
  std::vector<std::vector<std::vector<double>>> inner;

  int sweeps() const { return static_cast<int>(outer.size()); }
  double final_objective() const {
    return outer.empty() ? initial : outer.back();
  }
};

/// Mixes a salt into a base seed (splitmix64 finalizer), so nested RNG
/// consumers (k-means restarts, subspace draws) get decorrelated streams
/// that are reproducible for a given base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace l0graph
