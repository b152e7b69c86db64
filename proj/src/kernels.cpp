#include "l0graph/kernels.hpp"

#include <stdexcept>
#include <string>

namespace l0graph::kernels {

namespace {

// Shared scalar recipes. Both the OpenMP and the serial entry points call
// these per-column routines, which is what makes the two variants
// bit-identical: parallelism only changes which thread owns a column.

inline void gram_column(const Eigen::MatrixXd& X, Eigen::MatrixXd& G, int j) {
  for (int i = 0; i <= j; ++i) {
    G(i, j) = X.col(i).dot(X.col(j));
  }
}

inline void product_column(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           Eigen::MatrixXd& C, int j) {
  C.col(j).noalias() = A * B.col(j);
}

inline void check_product_shapes(const Eigen::MatrixXd& A,
                                 const Eigen::MatrixXd& B) {
  if (A.cols() != B.rows()) {
    throw std::invalid_argument("product: inner dimensions disagree (" +
                                std::to_string(A.cols()) + " vs " +
                                std::to_string(B.rows()) + ")");
  }
}

inline void mirror_upper(Eigen::MatrixXd& G) {
  const int n = static_cast<int>(G.rows());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      G(j, i) = G(i, j);
    }
  }
}

}  // namespace

Eigen::MatrixXd gram(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.cols());
  Eigen::MatrixXd G(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    gram_column(X, G, j);
  }
  mirror_upper(G);
  return G;
}

Eigen::MatrixXd product(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  check_product_shapes(A, B);
  const int n = static_cast<int>(B.cols());
  Eigen::MatrixXd C(A.rows(), n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    product_column(A, B, C, j);
  }
  return C;
}

namespace serial {

Eigen::MatrixXd gram(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.cols());
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j) {
    gram_column(X, G, j);
  }
  mirror_upper(G);
  return G;
}

Eigen::MatrixXd product(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  check_product_shapes(A, B);
  const int n = static_cast<int>(B.cols());
  Eigen::MatrixXd C(A.rows(), n);
  for (int j = 0; j < n; ++j) {
    product_column(A, B, C, j);
  }
  return C;
}

}  // namespace serial

}  // namespace l0graph::kernels
