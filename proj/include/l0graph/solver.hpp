#pragma once

#include "l0graph/types.hpp"

#include <utility>
#include <vector>

namespace l0graph {

/// Iteration state of the proximal hard-thresholding solver. The gram matrix
/// doubles as the constant gradient term (the dictionary is the data itself),
/// but is kept twice so each use names what it means.
struct ProximalState {
  Eigen::MatrixXd gram;    ///< X^T X
  Eigen::MatrixXd gram_x;  ///< X^T X again: the constant term of the gradient
  CoefficientMatrix alpha; ///< current iterate
  double s = 0.0;          ///< step-size constant 2 * sigma_max(X^T X)
  int t = 0;               ///< iterations completed

  ProximalState(const DataMatrix& X, CoefficientMatrix alpha0, double s_value);
};

/// One gradient step on the smooth part: returns
///   alpha - (2 / (tau * s)) * (gram * alpha - gram_x).
Eigen::MatrixXd gradient_step(const ProximalState& state, double tau);

/// Proximal map of lambda * ||.||_0 with quadratic weight tau * s / 2:
/// zeroes every entry with |value| < sqrt(2 * lambda / (tau * s)) (entries
/// exactly at the threshold survive) and forces the diagonal to exact zero.
CoefficientMatrix hard_threshold(const Eigen::MatrixXd& alpha_tilde,
                                 double lambda, double tau, double s);

/// Scalar shrinkage sign(x) * max(|x| - t, 0).
double soft_threshold(double x, double t);

/// Minimizes ||X - X*alpha||_F^2 + lambda * ||alpha||_0 subject to a zero
/// diagonal by iterating gradient_step + hard_threshold from alpha0, with
/// s from lipschitz_constant() (falling back to 2 * trace(X^T X) if the power
/// iteration does not converge). Stops when the objective changes by less
/// than cfg.tol or after cfg.max_iter iterations. The recorded objective
/// trace is non-increasing; a non-finite iterate raises NumericError naming
/// the iteration.
std::pair<CoefficientMatrix, ObjectiveTrace> solve_l0(
    const DataMatrix& X, const SolverConfig& cfg,
    const CoefficientMatrix& alpha0);

/// Soft-thresholding (ISTA) solver for the l1-relaxed objective
/// ||X - X*alpha||_F^2 + lambda_l1 * sum|alpha_ij|, diag(alpha) = 0, started
/// from zero. Used to warm-start solve_l0. tau plays the same step-damping
/// role as in solve_l0.
CoefficientMatrix l1_initialize(const DataMatrix& X, double lambda_l1,
                                int max_iter, double tol, double tau = 1.1);

/// Greedy column-wise sparse coding: for each sample, orthogonal matching
/// pursuit selects up to T other samples (largest absolute residual
/// correlation, ties to the smaller index) and refits by least squares.
/// Selection stops early when the residual correlations vanish, the residual
/// norm drops below 1e-10, or the selected atoms become rank deficient.
CoefficientMatrix omp_sparse_code(const DataMatrix& X, int T);

/// Exact minimizer found by exhaustive support enumeration.
struct OracleSolution {
  CoefficientMatrix alpha;
  double objective;
  std::vector<std::vector<int>> per_column_support;  ///< sorted, per column
};

/// Exhaustively minimizes ||x_i - X_S beta||^2 + lambda * |S| over all
/// supports S of size <= max_support (self excluded) for every column.
/// Ties prefer smaller supports, then lexicographic order. Refuses budgets
/// beyond n = 14 or max_support = 4 before doing any work.
OracleSolution brute_force_l0_oracle(const DataMatrix& X, double lambda,
                                     int max_support);

}  // namespace l0graph
