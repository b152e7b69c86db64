#include "l0graph/spectral.hpp"

#include "l0graph/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

namespace {

/// Codes whose symmetrization is block diagonal: `sizes[b]` samples per
/// block, constant in-block weight.
l0graph::CoefficientMatrix block_codes(const std::vector<int>& sizes,
                                       double weight) {
  int n = 0;
  for (int s : sizes) n += s;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (int s : sizes) {
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) {
        if (i != j) a(offset + i, offset + j) = weight;
      }
    }
    offset += s;
  }
  return l0graph::CoefficientMatrix(a);
}

Eigen::VectorXi block_truth(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  Eigen::VectorXi truth(n);
  int offset = 0, id = 0;
  for (int s : sizes) {
    truth.segment(offset, s).setConstant(id++);
    offset += s;
  }
  return truth;
}

}  // namespace

TEST_SUITE("spectral") {

using namespace l0graph;

TEST_CASE("symmetrize: one-sided and antisymmetric codes") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = 1.0;
  const SimilarityGraph g = symmetrize(CoefficientMatrix(a));
  CHECK(g.W(0, 1) == 0.5);
  CHECK(g.W(1, 0) == 0.5);

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2, 2);
  b(0, 1) = 1.0;
  b(1, 0) = -1.0;  // magnitudes add, signs do not cancel
  const SimilarityGraph h = symmetrize(CoefficientMatrix(b));
  CHECK(h.W(0, 1) == 1.0);
}

TEST_CASE("from_weights validates its input") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(0, 1) = 1.0;  // asymmetric
  CHECK_THROWS_AS(SimilarityGraph::from_weights(w), std::invalid_argument);
  w(1, 0) = 1.0;
  CHECK_NOTHROW(SimilarityGraph::from_weights(w));
  w(2, 2) = 0.5;  // nonzero diagonal
  CHECK_THROWS_AS(SimilarityGraph::from_weights(w), std::invalid_argument);
  w(2, 2) = 0.0;
  w(1, 2) = w(2, 1) = -0.25;  // negative weight
  CHECK_THROWS_AS(SimilarityGraph::from_weights(w), std::invalid_argument);
}

TEST_CASE("normalized Laplacian: spectrum bounds and block nullspace") {
  const CoefficientMatrix alpha = block_codes({4, 3, 5}, 0.4);
  const SimilarityGraph g = symmetrize(alpha);
  const Eigen::MatrixXd V = smallest_eigenvectors(g.laplacian, 12);
  // Rayleigh quotients of the returned eigenvectors.
  int near_zero = 0;
  for (int j = 0; j < V.cols(); ++j) {
    const double lam = V.col(j).dot(g.laplacian * V.col(j));
    CHECK(lam >= -1e-8);
    CHECK(lam <= 2.0 + 1e-8);
    if (std::abs(lam) <= 1e-8) ++near_zero;
  }
  CHECK(near_zero >= 3);  // one zero eigenvalue per connected block
}

TEST_CASE("isolated vertices zero out their Laplacian row and column") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(3, 3);
  w(1, 2) = w(2, 1) = 2.0;  // vertex 0 has no edges
  const SimilarityGraph g = SimilarityGraph::from_weights(w);
  CHECK(g.degrees(0) == 0.0);
  CHECK(g.laplacian.row(0).cwiseAbs().sum() == 0.0);
  CHECK(g.laplacian.col(0).cwiseAbs().sum() == 0.0);
  CHECK(g.laplacian(1, 1) == 1.0);
}

TEST_CASE("smallest_eigenvectors: residuals, orthonormality, sign convention") {
  Eigen::MatrixXd sym = oracles::random_matrix(6, 6, 501);
  sym = (sym + sym.transpose()).eval();
  const int c = 4;
  const Eigen::MatrixXd V = smallest_eigenvectors(sym, c);
  REQUIRE(V.rows() == 6);
  REQUIRE(V.cols() == c);
  CHECK((V.transpose() * V - Eigen::MatrixXd::Identity(c, c))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  for (int j = 0; j < c; ++j) {
    const double lam = V.col(j).dot(sym * V.col(j));
    CHECK((sym * V.col(j) - lam * V.col(j)).norm() < 1e-8);
    // Sign convention: the largest-magnitude entry is positive.
    int arg = 0;
    V.col(j).cwiseAbs().maxCoeff(&arg);
    CHECK(V(arg, j) > 0.0);
  }
  // Eigenvalues must come out ascending.
  double previous = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < c; ++j) {
    const double lam = V.col(j).dot(sym * V.col(j));
    CHECK(lam >= previous - 1e-10);
    previous = lam;
  }
}

TEST_CASE("smallest_eigenvectors of the zero matrix is an orthonormal basis") {
  const Eigen::MatrixXd V =
      smallest_eigenvectors(Eigen::MatrixXd::Zero(5, 5), 3);
  CHECK((V.transpose() * V - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("smallest_eigenvectors validates c") {
  const Eigen::MatrixXd sym = Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(smallest_eigenvectors(sym, 0), std::invalid_argument);
  CHECK_THROWS_AS(smallest_eigenvectors(sym, 5), std::invalid_argument);
}

TEST_CASE("kmeans separates two far clouds") {
  Eigen::MatrixXd points(8, 2);
  for (int i = 0; i < 4; ++i) {
    points.row(i) << 0.01 * i, 0.0;
    points.row(4 + i) << 100.0 + 0.01 * i, 50.0;
  }
  const ClusteringResult result = kmeans(points, 2, 5, 42);
  const Eigen::VectorXi truth = block_truth({4, 4});
  CHECK(accuracy(LabelPair(result.labels, truth)) == 1.0);
  CHECK(result.kmeans_inertia < 0.01);
}

TEST_CASE("kmeans: n == c gives singleton clusters with zero inertia") {
  Eigen::MatrixXd points(3, 2);
  points << 0.0, 0.0, 5.0, 0.0, 0.0, 7.0;
  const ClusteringResult result = kmeans(points, 3, 4, 1);
  CHECK(result.kmeans_inertia == 0.0);
  std::set<int> distinct;
  for (int i = 0; i < 3; ++i) distinct.insert(result.labels(i));
  CHECK(distinct.size() == 3);
}

TEST_CASE("kmeans: textbook 1-D inertia") {
  Eigen::MatrixXd points(4, 1);
  points << 0.0, 0.1, 10.0, 10.1;
  const ClusteringResult result = kmeans(points, 2, 10, 7);
  CHECK(result.kmeans_inertia == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
  const Eigen::MatrixXd points = oracles::random_matrix(20, 3, 502);
  const ClusteringResult a = kmeans(points, 4, 10, 99);
  const ClusteringResult b = kmeans(points, 4, 10, 99);
  CHECK(a.labels == b.labels);
  CHECK(a.kmeans_inertia == b.kmeans_inertia);
}

TEST_CASE("kmeans recovers the same partition from permuted input") {
  Eigen::MatrixXd points(6, 2);
  points << 0.0, 0.0, 0.1, 0.0, 0.05, 0.1, 9.0, 9.0, 9.1, 9.0, 9.05, 9.1;
  const Eigen::VectorXi truth = block_truth({3, 3});
  const ClusteringResult direct = kmeans(points, 2, 10, 5);
  CHECK(accuracy(LabelPair(direct.labels, truth)) == 1.0);

  const std::vector<int> perm{4, 2, 0, 5, 1, 3};
  Eigen::MatrixXd shuffled(6, 2);
  Eigen::VectorXi shuffled_truth(6);
  for (int i = 0; i < 6; ++i) {
    shuffled.row(i) = points.row(perm[i]);
    shuffled_truth(i) = truth(perm[i]);
  }
  const ClusteringResult permuted = kmeans(shuffled, 2, 10, 5);
  CHECK(accuracy(LabelPair(permuted.labels, shuffled_truth)) == 1.0);
}

TEST_CASE("kmeans labels stay in range on hard instances") {
  const Eigen::MatrixXd points = oracles::random_matrix(8, 2, 503);
  const ClusteringResult result = kmeans(points, 5, 10, 3);
  for (int i = 0; i < 8; ++i) {
    CHECK(result.labels(i) >= 0);
    CHECK(result.labels(i) < 5);
  }
}

TEST_CASE("kmeans validates its arguments") {
  const Eigen::MatrixXd points = oracles::random_matrix(4, 2, 504);
  CHECK_THROWS_AS(kmeans(points, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans(points, 5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans(points, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("spectral_cluster recovers block-diagonal structure exactly") {
  const std::vector<int> sizes{5, 4, 6};
  const ClusteringResult result =
      spectral_cluster(block_codes(sizes, 0.3), 3, 11);
  CHECK(accuracy(LabelPair(result.labels, block_truth(sizes))) == 1.0);
  REQUIRE(result.eigenvalues.size() == 3);
  CHECK(result.eigenvalues.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("spectral_cluster with c = 1 puts everything together") {
  const ClusteringResult result = spectral_cluster(block_codes({6}, 0.2), 1, 0);
  for (int i = 0; i < 6; ++i) CHECK(result.labels(i) == 0);
}

TEST_CASE("spectral_cluster is deterministic") {
  const std::vector<int> sizes{4, 4};
  const ClusteringResult a = spectral_cluster(block_codes(sizes, 0.5), 2, 21);
  const ClusteringResult b = spectral_cluster(block_codes(sizes, 0.5), 2, 21);
  CHECK(a.labels == b.labels);
  CHECK(a.kmeans_inertia == b.kmeans_inertia);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("spectral_cluster survives an empty graph") {
  const ClusteringResult result =
      spectral_cluster(CoefficientMatrix::zeros(5), 2, 13);
  for (int i = 0; i < 5; ++i) {
    CHECK(result.labels(i) >= 0);
    CHECK(result.labels(i) < 2);
  }
}

TEST_CASE("gaussian_similarity: symmetric, unit-free sanity") {
  Eigen::MatrixXd m(2, 4);
  m << 0.0, 0.1, 5.0, 5.1, 0.0, 0.0, 0.0, 0.0;
  const Eigen::MatrixXd W = gaussian_similarity(DataMatrix(m));
  for (int i = 0; i < 4; ++i) {
    CHECK(W(i, i) == 0.0);
    for (int j = 0; j < 4; ++j) {
      CHECK(W(i, j) == W(j, i));
      if (i != j) {
        CHECK(W(i, j) > 0.0);
        CHECK(W(i, j) <= 1.0);
      }
    }
  }
  // Nearby pairs beat distant pairs.
  CHECK(W(0, 1) > W(0, 2));
  CHECK(W(2, 3) > W(1, 2));
}

}  // TEST_SUITE
