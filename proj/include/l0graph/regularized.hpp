#pragma once

#include "l0graph/types.hpp"

#include <utility>

namespace l0graph {

/// K-nearest-neighbor structure over the data columns.
struct KnnAdjacency {
  /// S(i, j) = 1 iff sample i is among the K nearest neighbors of sample j
  /// (Euclidean distance, self excluded, distance ties broken by smaller
  /// index). Each column sums to exactly K.
  Eigen::MatrixXi S;

  /// S + S^T; entries take values {0, 1, 2}. Weight 2 means mutual neighbors.
  Eigen::MatrixXi S_sym;

  int k = 0;
};

/// Builds the KNN adjacency. Requires 1 <= K <= n - 1.
KnnAdjacency build_knn_adjacency(const DataMatrix& X, int K);

/// Regularized objective
///   ||X - X*alpha||_F^2 + gamma * sum_{i,j} S(i,j) * ||alpha^i - alpha^j||_0
/// where alpha^i is column i and ||.||_0 counts exactly-differing entries.
double reg_objective(const DataMatrix& X, const CoefficientMatrix& alpha,
                     double gamma, const KnnAdjacency& adjacency);

/// Gradient step on the smooth part of the column-i subproblem:
///   alpha^i - (2 / (tau * s)) * (G * alpha^i - G_i)
/// with G = X^T X and G_i its i-th column. The caller supplies the gram
/// matrix so sweeping over columns does not recompute it.
Eigen::VectorXd column_gradient_step(const Eigen::MatrixXd& gram,
                                     const Eigen::MatrixXd& alpha, int i,
                                     double tau, double s);

/// Entrywise proximal map of the column-i subproblem
///   min_v (tau * s / 2) * ||v - alpha_tilde||^2
///         + gamma * sum_j S_sym(i, j) * ||v - alpha^j||_0,  v_i = 0.
/// For each entry k the exact minimizer is either alpha_tilde(k) or one of
/// the neighbor values {alpha(k, j) : S_sym(i, j) != 0}; all candidates are
/// evaluated and ties prefer alpha_tilde(k), then the candidate of smallest
/// absolute value, then the smallest owning column j.
Eigen::VectorXd prox_candidate_search(const Eigen::VectorXd& alpha_tilde,
                                      const Eigen::MatrixXd& alpha, int i,
                                      double gamma, double tau, double s,
                                      const Eigen::MatrixXi& S_sym);

/// Cyclic coordinate descent over columns: each column takes proximal steps
/// (column_gradient_step + prox_candidate_search) against the latest codes of
/// its neighbors until its subproblem objective stalls, for at most 10 sweeps.
/// The inner traces are non-increasing; a non-finite iterate raises
/// NumericError naming the sweep and column.
std::pair<CoefficientMatrix, RegObjectiveTrace> solve_regularized_l0(
    const DataMatrix& X, const SolverConfig& cfg,
    const CoefficientMatrix& alpha0);

/// Number of positions where the support patterns of two neighboring codes
/// agree (both zero or both nonzero), summed over all neighbor pairs (i, j)
/// with S(i, j) = 1. The neighbor penalty charges every support mismatch
/// between adjacent codes, so this count measures the alignment that
/// solve_regularized_l0 promotes.
long shared_support_count(const CoefficientMatrix& alpha,
                          const KnnAdjacency& adjacency);

}  // namespace l0graph
