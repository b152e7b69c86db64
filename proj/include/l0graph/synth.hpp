#pragma once

#include "l0graph/types.hpp"

namespace l0graph {

/// How the subspace bases relate to each other.
enum class SubspaceMode {
  independent,      ///< direct sum: sum of dimensions <= ambient, bases orthogonal
  disjoint,         ///< pairwise trivial intersection, verified by rank tests
  overlapping,      ///< every pair shares a nontrivial common subspace
  distinct_random,  ///< independent random draws, only equal spans rejected
};

/// Parameters of a union-of-subspaces dataset.
struct SubspaceSpec {
  int ambient_dim = 0;            ///< d
  std::vector<int> dims;          ///< d_k per subspace
  std::vector<int> counts;        ///< samples per subspace; n_k >= d_k + 1
  SubspaceMode mode = SubspaceMode::distinct_random;
  double noise_sigma = 0.0;       ///< additive Gaussian noise level
  std::uint64_t seed = 0;

  int subspaces() const { return static_cast<int>(dims.size()); }
  int total_count() const;

  /// Throws std::invalid_argument on infeasible combinations (e.g. d_k >
  /// ambient_dim, n_k < d_k + 1, independent mode with sum of d_k > d,
  /// overlapping mode with some d_k < 2).
  void validate() const;
};

struct SynthDataset {
  DataMatrix X;                         ///< columns grouped by subspace
  Eigen::VectorXi truth;                ///< subspace id per column, 0-based
  std::vector<Eigen::MatrixXd> bases;   ///< orthonormal basis per subspace
};

/// Samples n_k points per subspace as B_k * coeffs with standard normal
/// coefficients, plus optional isotropic Gaussian noise. Deterministic for a
/// given seed. Modes that need it verify their span condition by rank tests
/// and redraw (DataError after too many failed attempts).
SynthDataset generate(const SubspaceSpec& spec);

/// Fraction of columns whose nonzero coefficients all point at samples of
/// the column's own subspace. Columns with empty support count as preserving.
double subspace_preserving_rate(const CoefficientMatrix& alpha,
                                const Eigen::VectorXi& truth);

}  // namespace l0graph
