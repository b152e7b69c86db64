#pragma once

#include <Eigen/Dense>

namespace l0graph::kernels {

// Dense kernels behind the solvers. The parallel versions partition work by
// output column with OpenMP; every output entry is computed by exactly one
// thread using the same scalar expression as the serial twin, so results are
// bit-identical to `serial::` for any thread count. The serial twins are kept
// as the reference implementation for tests and for the benchmark target.

/// X^T X, exactly symmetric by construction (upper triangle mirrored).
Eigen::MatrixXd gram(const Eigen::MatrixXd& X);

/// A * B computed one output column at a time.
Eigen::MatrixXd product(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

namespace serial {

Eigen::MatrixXd gram(const Eigen::MatrixXd& X);
Eigen::MatrixXd product(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace serial

}  // namespace l0graph::kernels
