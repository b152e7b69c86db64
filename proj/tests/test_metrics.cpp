#include "l0graph/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace {

Eigen::VectorXi labels_of(std::initializer_list<int> values) {
  Eigen::VectorXi out(static_cast<int>(values.size()));
  int i = 0;
  for (int v : values) out(i++) = v;
  return out;
}

}  // namespace

TEST_SUITE("metrics") {

using namespace l0graph;

TEST_CASE("hungarian_assignment: hand-checked 3x3 instance") {
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const std::vector<int> match = hungarian_assignment(cost);
  REQUIRE(match.size() == 3);
  CHECK(match[0] == 1);
  CHECK(match[1] == 0);
  CHECK(match[2] == 2);
}

TEST_CASE("hungarian_assignment picks the cheap diagonal and anti-diagonal") {
  const int n = 4;
  Eigen::MatrixXd cost = Eigen::MatrixXd::Ones(n, n);
  cost.diagonal().setZero();
  std::vector<int> match = hungarian_assignment(cost);
  for (int i = 0; i < n; ++i) CHECK(match[i] == i);

  cost.setOnes();
  for (int i = 0; i < n; ++i) cost(i, n - 1 - i) = 0.0;
  match = hungarian_assignment(cost);
  for (int i = 0; i < n; ++i) CHECK(match[i] == n - 1 - i);
}

TEST_CASE("hungarian_assignment handles rectangular and negative costs") {
  Eigen::MatrixXd wide(2, 3);
  wide << 1, 0, 5, 0, 1, 5;
  const std::vector<int> match = hungarian_assignment(wide);
  CHECK(match[0] == 1);
  CHECK(match[1] == 0);

  Eigen::MatrixXd negative(2, 2);
  negative << -5, 0, 0, -5;
  const std::vector<int> diag = hungarian_assignment(negative);
  CHECK(diag[0] == 0);
  CHECK(diag[1] == 1);
}

TEST_CASE("hungarian_assignment matches exhaustive search on random 5x5") {
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd cost =
        oracles::random_matrix(5, 5, 700 + trial);
    const std::vector<int> match = hungarian_assignment(cost);
    double total = 0.0;
    std::vector<bool> used(5, false);
    for (int i = 0; i < 5; ++i) {
      REQUIRE(match[i] >= 0);
      REQUIRE(match[i] < 5);
      CHECK_FALSE(used[match[i]]);
      used[match[i]] = true;
      total += cost(i, match[i]);
    }
    CHECK(total == doctest::Approx(oracles::brute_force_assignment_cost(cost))
                       .epsilon(1e-9));
  }
}

TEST_CASE("hungarian_assignment validates its input") {
  CHECK_THROWS_AS(hungarian_assignment(Eigen::MatrixXd(0, 0)),
                  std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hungarian_assignment(bad), std::invalid_argument);
}

TEST_CASE("accuracy: perfect, relabeled, and partial matches") {
  const Eigen::VectorXi truth = labels_of({0, 0, 1, 1, 2, 2});
  CHECK(accuracy(LabelPair(truth, truth)) == 1.0);
  // A label permutation costs nothing.
  const Eigen::VectorXi relabeled = labels_of({2, 2, 0, 0, 1, 1});
  CHECK(accuracy(LabelPair(relabeled, truth)) == 1.0);

  const Eigen::VectorXi truth4 = labels_of({0, 0, 1, 1});
  const Eigen::VectorXi pred4 = labels_of({0, 0, 0, 1});
  CHECK(accuracy(LabelPair(pred4, truth4)) == 0.75);
}

TEST_CASE("accuracy copes with non-contiguous label values") {
  const Eigen::VectorXi truth = labels_of({7, 7, 3, 3});
  const Eigen::VectorXi pred = labels_of({100, 100, 42, 42});
  CHECK(accuracy(LabelPair(pred, truth)) == 1.0);
}

TEST_CASE("accuracy with more predicted clusters than true ones") {
  const Eigen::VectorXi truth = labels_of({0, 0, 0, 0});
  const Eigen::VectorXi pred = labels_of({0, 0, 1, 1});
  CHECK(accuracy(LabelPair(pred, truth)) == 0.5);
}

TEST_CASE("label pairs validate eagerly") {
  const Eigen::VectorXi a = labels_of({0, 1});
  const Eigen::VectorXi b = labels_of({0, 1, 2});
  CHECK_THROWS_AS(LabelPair(a, b), std::invalid_argument);
  CHECK_THROWS_AS(LabelPair(Eigen::VectorXi(), Eigen::VectorXi()),
                  std::invalid_argument);
  const Eigen::VectorXi neg = labels_of({0, -1});
  CHECK_THROWS_AS(LabelPair(neg, a), std::invalid_argument);
}

TEST_CASE("nmi: hand-computed reference value") {
  // Contingency {{2,0},{1,1}}: MI = 1/2 log2(4/3) + 1/4 log2(2/3) + 1/4,
  // H(truth) = 1, H(pred) = 3/4 log2(4/3) + 1/2.
  const Eigen::VectorXi truth = labels_of({0, 0, 1, 1});
  const Eigen::VectorXi pred = labels_of({0, 0, 0, 1});
  CHECK(nmi(LabelPair(pred, truth)) ==
        doctest::Approx(0.311278124459133).epsilon(1e-12));
}

TEST_CASE("nmi is exactly 1 on perfect (possibly relabeled) partitions") {
  const Eigen::VectorXi truth = labels_of({0, 0, 1, 1, 2, 2});
  const Eigen::VectorXi relabeled = labels_of({2, 2, 0, 0, 1, 1});
  CHECK(nmi(LabelPair(truth, truth)) == 1.0);
  CHECK(nmi(LabelPair(relabeled, truth)) == 1.0);
}

TEST_CASE("nmi is exactly 0 on an independent split") {
  const Eigen::VectorXi truth = labels_of({0, 0, 1, 1});
  const Eigen::VectorXi pred = labels_of({0, 1, 0, 1});
  CHECK(nmi(LabelPair(pred, truth)) == 0.0);
}

TEST_CASE("nmi degenerate partitions follow the documented conventions") {
  const Eigen::VectorXi flat = labels_of({0, 0, 0, 0});
  const Eigen::VectorXi split = labels_of({0, 0, 1, 1});
  CHECK(nmi(LabelPair(flat, flat)) == 1.0);
  CHECK(nmi(LabelPair(split, flat)) == 0.0);
  CHECK(nmi(LabelPair(flat, split)) == 0.0);
}

TEST_CASE("metrics fuzz: ranges and relabeling invariance") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 50;
    Eigen::VectorXi truth(n), pred(n), swapped(n);
    for (int i = 0; i < n; ++i) {
      truth(i) = pick(rng);
      pred(i) = pick(rng);
      // Relabel predicted clusters 0 <-> 1; the partition is unchanged.
      swapped(i) = pred(i) == 0 ? 1 : (pred(i) == 1 ? 0 : pred(i));
    }
    const double ac = accuracy(LabelPair(pred, truth));
    const double mi = nmi(LabelPair(pred, truth));
    CHECK(ac > 0.0);
    CHECK(ac <= 1.0);
    CHECK(mi >= 0.0);
    CHECK(mi <= 1.0);
    CHECK(accuracy(LabelPair(swapped, truth)) == ac);
    CHECK(nmi(LabelPair(swapped, truth)) == mi);
  }
}

}  // TEST_SUITE
