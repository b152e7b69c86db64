#pragma once

#include "l0graph/types.hpp"

namespace l0graph {

/// Thrown when the power iteration used by lipschitz_constant() fails to
/// converge; carries the last spectral-radius estimate so callers can fall
/// back to a cruder bound.
struct PowerIterationError : NumericError {
  double last_estimate;
  explicit PowerIterationError(const std::string& what, double estimate)
      : NumericError(what), last_estimate(estimate) {}
};

/// Scales every column of X to unit Euclidean norm. All-zero columns are left
/// untouched and recorded in zero_columns; original norms are cached in
/// column_norms. Idempotent up to floating-point rounding.
DataMatrix normalize_columns(const DataMatrix& X);

/// Step-size constant s = 2 * sigma_max(X^T X), estimated by power iteration
/// on the gram matrix from the deterministic all-ones start. Iterates until
/// the eigenpair residual ||G v - rho v|| drops below tol * rho, then returns
/// 2 * (rho + sqrt(2) * residual): the residual term turns the estimate into
/// an upper bound on 2 * sigma_max once the iterate carries at least half of
/// its mass on the top eigenspace, which is what the descent guarantee of the
/// hard-thresholding solver needs. Throws PowerIterationError after
/// max_power_iters non-converged iterations.
double lipschitz_constant(const DataMatrix& X, double tol = 1e-8,
                          int max_power_iters = 1000);

/// Same estimate computed directly from a precomputed gram matrix.
double spectral_step_constant(const Eigen::MatrixXd& gram, double tol = 1e-8,
                              int max_power_iters = 1000);

/// Self-representation objective ||X - X*alpha||_F^2 + lambda * ||alpha||_0,
/// where ||.||_0 counts entries that are exactly nonzero.
double objective_l0(const DataMatrix& X, const CoefficientMatrix& alpha,
                    double lambda);

}  // namespace l0graph
