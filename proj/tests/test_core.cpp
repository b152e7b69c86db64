#include "l0graph/core.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

TEST_SUITE("core") {

using namespace l0graph;

TEST_CASE("DataMatrix rejects too-small and non-finite input") {
  CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd::Zero(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(DataMatrix(Eigen::MatrixXd::Zero(0, 4)), std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 3);
  bad(1, 2) = std::nan("");
  CHECK_THROWS_AS(DataMatrix{bad}, std::invalid_argument);
}

TEST_CASE("CoefficientMatrix enforces the exact-zero diagonal") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(1, 1) = 1e-300;  // tiny but nonzero is still a violation
  CHECK_THROWS_AS(CoefficientMatrix{a}, std::invalid_argument);
  CHECK_THROWS_AS(CoefficientMatrix(Eigen::MatrixXd::Zero(2, 3)),
                  std::invalid_argument);
  CHECK_NOTHROW(CoefficientMatrix::zeros(4));
}

TEST_CASE("SolverConfig validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SolverConfig bad = cfg;
  bad.tau = 1.0;  // boundary excluded: the descent margin vanishes
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.lambda = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.max_iter = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.knn_k = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("normalize_columns: hand-checked values") {
  Eigen::MatrixXd m(2, 2);
  m << 3.0, 1.0, 4.0, 1.0;  // columns (3,4) and (1,1)
  const DataMatrix X(m);
  const DataMatrix N = normalize_columns(X);
  CHECK(N.values(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(N.values(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(N.values(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(N.column_norms(0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(N.zero_columns.empty());
}

TEST_CASE("normalize_columns: zero columns are preserved and reported") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 0) = 2.0;
  m(2, 2) = -1.0;
  const DataMatrix N = normalize_columns(DataMatrix(m));
  REQUIRE(N.zero_columns.size() == 1);
  CHECK(N.zero_columns[0] == 1);
  CHECK(N.values.col(1).norm() == 0.0);
  CHECK(N.values.col(0).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("normalize_columns: unit norms and idempotence") {
  const DataMatrix X(oracles::random_matrix(6, 10, 201));
  const DataMatrix N = normalize_columns(X);
  for (int j = 0; j < N.count(); ++j) {
    CHECK(std::abs(N.values.col(j).norm() - 1.0) < 1e-12);
  }
  const DataMatrix N2 = normalize_columns(N);
  CHECK((N2.values - N.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lipschitz_constant: identity data gives exactly 2") {
  // X = I (4x4): the gram matrix is I, largest eigenvalue 1. The all-ones
  // start is already an exact eigenvector, so the estimate is exact.
  const DataMatrix X(Eigen::MatrixXd::Identity(4, 4));
  CHECK(lipschitz_constant(X) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lipschitz_constant: diagonal data") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 3.0;  // gram = diag(9, 1), largest eigenvalue 9
  m(1, 1) = 1.0;
  // The estimate is padded by the final power-iteration residual so it never
  // undershoots; the padding is at most ~1.5e-8 relative.
  const double s = lipschitz_constant(DataMatrix(m));
  CHECK(s >= 18.0 - 1e-12);
  CHECK(s == doctest::Approx(18.0).epsilon(1e-7));
}

TEST_CASE("lipschitz_constant matches a dense eigensolver") {
  const DataMatrix X(oracles::random_matrix(5, 8, 202));
  const double s = lipschitz_constant(X);
  const double dense = 2.0 * oracles::dense_spectral_radius(oracles::naive_gram(X.values));
  CHECK(s == doctest::Approx(dense).epsilon(1e-6));
  CHECK(s >= dense * (1.0 - 1e-8));  // usable as a step bound
}

TEST_CASE("lipschitz_constant scales quadratically with the data") {
  const Eigen::MatrixXd base = oracles::random_matrix(6, 9, 203);
  const double s1 = lipschitz_constant(DataMatrix(base));
  const double s2 = lipschitz_constant(DataMatrix(3.0 * base));
  CHECK(s2 == doctest::Approx(9.0 * s1).epsilon(1e-9));
}

TEST_CASE("lipschitz_constant reports non-convergence with its last estimate") {
  const DataMatrix X(oracles::random_matrix(4, 6, 204));
  try {
    lipschitz_constant(X, /*tol=*/0.0, /*max_power_iters=*/3);
    FAIL("expected PowerIterationError");
  } catch (const PowerIterationError& e) {
    CHECK(e.last_estimate > 0.0);
  }
}

TEST_CASE("objective_l0: zero codes give the data energy") {
  const DataMatrix X(oracles::random_matrix(4, 7, 205));
  const double value = objective_l0(X, CoefficientMatrix::zeros(7), 0.5);
  CHECK(value == doctest::Approx(X.values.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("objective_l0: duplicated column represented for free") {
  Eigen::MatrixXd m = oracles::random_matrix(5, 4, 206);
  m.col(0) = m.col(1);  // sample 0 equals sample 1
  const DataMatrix X(m);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(1, 0) = 1.0;  // represent column 0 by column 1 exactly
  const double value = objective_l0(X, CoefficientMatrix(a), 0.5);
  double rest = 0.0;
  for (int j = 1; j < 4; ++j) rest += m.col(j).squaredNorm();
  CHECK(value == doctest::Approx(rest + 0.5).epsilon(1e-12));
}

TEST_CASE("objective_l0 counts exact nonzeros only") {
  const DataMatrix X(oracles::random_matrix(3, 4, 207));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
  a(2, 0) = 1e-300;  // tiny still counts
  const double with_tiny = objective_l0(X, CoefficientMatrix(a), 1.0);
  a(2, 0) = 0.0;
  const double without = objective_l0(X, CoefficientMatrix(a), 1.0);
  CHECK(with_tiny >= without + 1.0 - 1e-9);
}

TEST_CASE("objective_l0 matches the naive oracle on random input") {
  const DataMatrix X(oracles::random_matrix(6, 9, 208));
  Eigen::MatrixXd a = oracles::random_matrix(9, 9, 209);
  a.diagonal().setZero();
  // Sparsify to make the nnz term informative.
  for (int j = 0; j < 9; ++j) {
    for (int i = 0; i < 9; ++i) {
      if (std::abs(a(i, j)) < 0.8) a(i, j) = 0.0;
    }
  }
  const double mine = objective_l0(X, CoefficientMatrix(a), 0.3);
  const double ref = oracles::naive_objective_l0(X.values, a, 0.3);
  CHECK(mine == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("objective_l0 is invariant under consistent permutation") {
  const int n = 8;
  const DataMatrix X(oracles::random_matrix(5, n, 210));
  Eigen::MatrixXd a = oracles::random_matrix(n, n, 211);
  a.diagonal().setZero();

  std::vector<int> perm{3, 1, 4, 0, 7, 6, 2, 5};
  Eigen::MatrixXd Xp(5, n);
  Eigen::MatrixXd ap(n, n);
  for (int j = 0; j < n; ++j) Xp.col(j) = X.values.col(perm[j]);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) ap(i, j) = a(perm[i], perm[j]);
  }
  const double v1 = objective_l0(X, CoefficientMatrix(a), 0.7);
  const double v2 = objective_l0(DataMatrix(Xp), CoefficientMatrix(ap), 0.7);
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
}

TEST_CASE("objective_l0 rejects mismatched shapes") {
  const DataMatrix X(oracles::random_matrix(3, 5, 212));
  CHECK_THROWS_AS(objective_l0(X, CoefficientMatrix::zeros(4), 0.1),
                  std::invalid_argument);
}

}  // TEST_SUITE
