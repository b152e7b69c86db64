#include "l0graph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace l0graph {

namespace {

/// Compresses arbitrary label values to contiguous ids 0..k-1 (order of
/// first numeric value, i.e. sorted by original label value).
std::vector<int> compress(const Eigen::VectorXi& labels, int& k) {
  std::map<int, int> ids;
  for (Eigen::Index i = 0; i < labels.size(); ++i) ids.emplace(labels(i), 0);
  int next = 0;
  for (auto& [value, id] : ids) id = next++;
  std::vector<int> out(labels.size());
  for (Eigen::Index i = 0; i < labels.size(); ++i) out[i] = ids[labels(i)];
  k = next;
  return out;
}

/// Contingency table: counts(p, t) = #samples with predicted id p, true id t.
Eigen::MatrixXi contingency(const LabelPair& labels, int& rows, int& cols) {
  const std::vector<int> p = compress(labels.predicted, rows);
  const std::vector<int> t = compress(labels.truth, cols);
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(rows, cols);
  for (std::size_t i = 0; i < p.size(); ++i) counts(p[i], t[i])++;
  return counts;
}

/// Sums  a multiset of doubles in sorted order. Used so that two calls seeing
/// the same multiset of terms (for example MI and entropy terms of identical
/// partitions) produce bit-identical sums.
double sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double v : terms) total += v;
  return total;
}

}  // namespace

LabelPair::LabelPair(Eigen::VectorXi pred, Eigen::VectorXi truth_labels)
    : predicted(std::move(pred)), truth(std::move(truth_labels)) {
  if (predicted.size() == 0) {
    throw std::invalid_argument("label vectors must be non-empty");
  }
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("label vectors must have equal length");
  }
  if (predicted.minCoeff() < 0 || truth.minCoeff() < 0) {
    throw std::invalid_argument("labels must be nonnegative");
  }
}

std::vector<int> hungarian_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) {
    throw std::invalid_argument("cost matrix must be non-empty");
  }
  if (!cost.allFinite()) {
    throw std::invalid_argument("cost matrix must be finite");
  }
  const int n = static_cast<int>(std::max(cost.rows(), cost.cols()));
  // Pad to square with zero-cost entries.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.topLeftCorner(cost.rows(), cost.cols()) = cost;

  // Kuhn-Munkres with row/column potentials; 1-based arrays, p[j] = row
  // matched to column j.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

double accuracy(const LabelPair& labels) {
  int rows = 0, cols = 0;
  const Eigen::MatrixXi counts = contingency(labels, rows, cols);
  const std::vector<int> match =
      hungarian_assignment(-counts.cast<double>());
  long correct = 0;
  for (int p = 0; p < rows; ++p) {
    if (match[p] < cols) correct += counts(p, match[p]);
  }
  return static_cast<double>(correct) / static_cast<double>(labels.truth.size());
}

double nmi(const LabelPair& labels) {
  int rows = 0, cols = 0;
  const Eigen::MatrixXi counts = contingency(labels, rows, cols);
  const std::int64_t n = labels.truth.size();
  const Eigen::VectorXi row_sum = counts.rowwise().sum();
  const Eigen::VectorXi col_sum = counts.colwise().sum();

  // Entropies and mutual information in bits. Each term's log argument is
  // formed as one exact integer ratio (all products stay far below 2^53), so
  // identical partitions yield identical term multisets and NMI is exactly 1.
  std::vector<double> h_pred_terms, h_true_terms, mi_terms;
  for (int p = 0; p < rows; ++p) {
    if (row_sum(p) == 0) continue;
    const double share = static_cast<double>(row_sum(p)) / static_cast<double>(n);
    h_pred_terms.push_back(
        share * std::log2(static_cast<double>(n) / static_cast<double>(row_sum(p))));
  }
  for (int t = 0; t < cols; ++t) {
    if (col_sum(t) == 0) continue;
    const double share = static_cast<double>(col_sum(t)) / static_cast<double>(n);
    h_true_terms.push_back(
        share * std::log2(static_cast<double>(n) / static_cast<double>(col_sum(t))));
  }
  for (int p = 0; p < rows; ++p) {
    for (int t = 0; t < cols; ++t) {
      const std::int64_t joint = counts(p, t);
      if (joint == 0) continue;
      const double share = static_cast<double>(joint) / static_cast<double>(n);
      const double ratio = static_cast<double>(n * joint) /
                           static_cast<double>(static_cast<std::int64_t>(row_sum(p)) * col_sum(t));
      mi_terms.push_back(share * std::log2(ratio));
    }
  }

  const double h_pred = sorted_sum(std::move(h_pred_terms));
  const double h_true = sorted_sum(std::move(h_true_terms));
  const double mi = sorted_sum(std::move(mi_terms));

  const double h_max = std::max(h_pred, h_true);
  if (h_max == 0.0) return 1.0;  // two constant labelings agree trivially
  if (h_pred == 0.0 || h_true == 0.0) return 0.0;
  return std::clamp(mi / h_max, 0.0, 1.0);
}

}  // namespace l0graph
