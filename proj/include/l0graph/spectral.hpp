#pragma once

#include "l0graph/types.hpp"

namespace l0graph {

/// Symmetric nonnegative similarity graph with its normalized Laplacian.
struct SimilarityGraph {
  Eigen::MatrixXd W;          ///< symmetric, nonnegative, zero diagonal
  Eigen::VectorXd degrees;    ///< row sums of W
  Eigen::MatrixXd laplacian;  ///< D^{-1/2} (D - W) D^{-1/2}

  /// Builds degrees and the normalized Laplacian from a weight matrix.
  /// Isolated vertices (zero degree) use the convention D^{-1/2} = 0, which
  /// zeroes their Laplacian row and column. Throws std::invalid_argument if
  /// W is not square/symmetric/nonnegative or has a nonzero diagonal.
  static SimilarityGraph from_weights(Eigen::MatrixXd W);
};

/// W = (|alpha| + |alpha|^T) / 2, the standard symmetrization of a code
/// matrix into similarity weights.
SimilarityGraph symmetrize(const CoefficientMatrix& alpha);

/// Eigenvectors of the c smallest eigenvalues of a symmetric matrix, as the
/// columns of an n x c matrix in ascending eigenvalue order. The input is
/// symmetrized as (L + L^T) / 2 before factorization. Each eigenvector's
/// sign is fixed deterministically: the entry of largest absolute value is
/// made positive (ties to the smallest index).
Eigen::MatrixXd smallest_eigenvectors(const Eigen::MatrixXd& L, int c);

struct ClusteringResult {
  Eigen::VectorXi labels;       ///< cluster id in [0, c) per sample
  double kmeans_inertia = 0.0;  ///< sum of squared distances to centers
  Eigen::VectorXd eigenvalues;  ///< c smallest Laplacian eigenvalues (spectral
                                ///< pipeline only; empty for plain k-means)
};

/// Lloyd's algorithm with k-means++ seeding, `restarts` restarts (the run
/// with the lowest inertia wins; ties keep the earliest restart), at most 300
/// iterations per restart, convergence when the inertia improves by less
/// than 1e-9. Empty clusters are repaired by moving in the point farthest
/// from its center. Rows of `points` are the samples. Deterministic for a
/// given seed.
ClusteringResult kmeans(const Eigen::MatrixXd& points, int c, int restarts,
                        std::uint64_t seed);

/// Full pipeline: symmetrize the codes, factor the normalized Laplacian,
/// k-means (10 restarts) on the rows of the c smallest eigenvectors.
ClusteringResult spectral_cluster(const CoefficientMatrix& alpha, int c,
                                  std::uint64_t seed);

/// Same spectral embedding + k-means, starting from an explicit graph.
ClusteringResult spectral_cluster_graph(const SimilarityGraph& graph, int c,
                                        std::uint64_t seed);

/// Gaussian-kernel similarity exp(-||x_i - x_j||^2 / (2 sigma^2)) with sigma
/// set to the median pairwise distance (1.0 if that median is zero) and a
/// zero diagonal. Baseline graph for spectral clustering on raw features.
Eigen::MatrixXd gaussian_similarity(const DataMatrix& X);

}  // namespace l0graph
