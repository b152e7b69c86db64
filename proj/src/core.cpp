#include "l0graph/core.hpp"

#include "l0graph/kernels.hpp"

#include <cmath>
#include <string>

namespace l0graph {

DataMatrix normalize_columns(const DataMatrix& X) {
  DataMatrix out = X;
  out.column_norms.resize(X.count());
  out.zero_columns.clear();
  for (int j = 0; j < X.count(); ++j) {
    const double norm = X.values.col(j).norm();
    out.column_norms(j) = norm;
    if (norm == 0.0) {
      out.zero_columns.push_back(j);
    } else {
      out.values.col(j) /= norm;
    }
  }
  return out;
}

double spectral_step_constant(const Eigen::MatrixXd& gram, double tol,
                              int max_power_iters) {
  const Eigen::Index n = gram.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  double rho = 0.0;
  double residual = 0.0;
  for (int it = 0; it < max_power_iters; ++it) {
    Eigen::VectorXd w = gram * v;
    rho = v.dot(w);
    residual = (w - rho * v).norm();
    if (residual <= tol * rho || (rho == 0.0 && residual == 0.0)) {
      return 2.0 * (rho + std::sqrt(2.0) * residual);
    }
    const double wnorm = w.norm();
    if (wnorm == 0.0 || !std::isfinite(wnorm)) {
      throw PowerIterationError(
          "power iteration broke down at iteration " + std::to_string(it + 1),
          2.0 * rho);
    }
    v = w / wnorm;
  }
  throw PowerIterationError(
      "power iteration did not converge within " +
          std::to_string(max_power_iters) + " iterations",
      2.0 * (rho + std::sqrt(2.0) * residual));
}

double lipschitz_constant(const DataMatrix& X, double tol,
                          int max_power_iters) {
  return spectral_step_constant(kernels::gram(X.values), tol, max_power_iters);
}

double objective_l0(const DataMatrix& X, const CoefficientMatrix& alpha,
                    double lambda) {
  if (alpha.size() != X.count()) {
    throw std::invalid_argument(
        "objective_l0: alpha is " + std::to_string(alpha.size()) + " x " +
        std::to_string(alpha.size()) + " but X has " +
        std::to_string(X.count()) + " samples");
  }
  const Eigen::MatrixXd recon = kernels::product(X.values, alpha.values);
  const double fit = (X.values - recon).squaredNorm();
  const long nnz = (alpha.values.array() != 0.0).count();
  return fit + lambda * static_cast<double>(nnz);
}

}  // namespace l0graph
