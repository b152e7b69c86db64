#pragma once

#include "l0graph/types.hpp"

namespace l0graph {

/// Predicted and ground-truth label vectors of equal (nonzero) length.
/// Label values are arbitrary nonnegative ids; both metrics relabel them
/// internally, so they need not be contiguous.
struct LabelPair {
  Eigen::VectorXi predicted;
  Eigen::VectorXi truth;

  LabelPair(Eigen::VectorXi pred, Eigen::VectorXi truth_labels);
};

/// Minimum-cost assignment of rows to columns (Kuhn-Munkres with potentials,
/// O(n^3)). Rectangular inputs are padded with zero-cost entries to a square
/// matrix internally; the returned vector maps each row of the padded square
/// matrix to its assigned column. Costs may be negative.
std::vector<int> hungarian_assignment(const Eigen::MatrixXd& cost);

/// Clustering accuracy: the fraction of samples whose predicted cluster maps
/// to their true class under the best one-to-one cluster-to-class matching
/// (found by hungarian_assignment on the negated contingency table).
double accuracy(const LabelPair& labels);

/// Normalized mutual information MI(predicted, truth) / max(H(predicted),
/// H(truth)) with base-2 logarithms. Two constant labelings score 1.0; a
/// constant labeling against a non-constant one scores 0.0. Identical
/// partitions score exactly 1.0.
double nmi(const LabelPair& labels);

}  // namespace l0graph
