#include "l0graph/regularized.hpp"

#include "l0graph/core.hpp"
#include "l0graph/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace l0graph {

namespace {

constexpr int kOuterMaxSweeps = 10;
constexpr int kInnerMaxIters = 50;

double step_constant_with_fallback(const Eigen::MatrixXd& gram) {
  double s = 0.0;
  try {
    s = spectral_step_constant(gram);
  } catch (const PowerIterationError&) {
    s = 2.0 * gram.trace();
  }
  if (!(s > 0.0)) {
    throw NumericError(
        "step-size constant is zero (data matrix is identically zero)");
  }
  return s;
}

/// Column-i objective against the current codes of the other columns:
///   ||x_i - X * alpha^i||^2 + gamma * sum_j S_sym(i, j) * ||alpha^i - alpha^j||_0.
double column_objective(const DataMatrix& X, const Eigen::MatrixXd& alpha,
                        const Eigen::VectorXd& alpha_i, int i, double gamma,
                        const Eigen::MatrixXi& S_sym) {
  const double fit = (X.values.col(i) - X.values * alpha_i).squaredNorm();
  double disagree = 0.0;
  const int n = static_cast<int>(alpha.cols());
  for (int j = 0; j < n; ++j) {
    const int w = S_sym(i, j);
    if (w == 0) continue;
    int count = 0;
    for (int k = 0; k < n; ++k) {
      if (alpha_i(k) != alpha(k, j)) ++count;
    }
    disagree += static_cast<double>(w) * count;
  }
  return fit + gamma * disagree;
}

}  // namespace

KnnAdjacency build_knn_adjacency(const DataMatrix& X, int K) {
  const int n = X.count();
  if (K < 1 || K > n - 1) {
    throw std::invalid_argument("build_knn_adjacency needs 1 <= K <= n - 1");
  }
  KnnAdjacency adj;
  adj.k = K;
  adj.S = Eigen::MatrixXi::Zero(n, n);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      dist.emplace_back((X.values.col(i) - X.values.col(j)).squaredNorm(), i);
    }
    // (distance, index) pairs are totally ordered, so equal distances fall
    // back to the smaller index.
    std::partial_sort(dist.begin(), dist.begin() + K, dist.end());
    for (int k = 0; k < K; ++k) {
      adj.S(dist[k].second, j) = 1;
    }
  }
  adj.S_sym = adj.S + adj.S.transpose();
  return adj;
}

double reg_objective(const DataMatrix& X, const CoefficientMatrix& alpha,
                     double gamma, const KnnAdjacency& adjacency) {
  if (alpha.size() != X.count()) {
    throw std::invalid_argument("reg_objective: alpha size does not match X");
  }
  const double fit =
      (X.values - kernels::product(X.values, alpha.values)).squaredNorm();
  const int n = X.count();
  double disagree = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adjacency.S(i, j) == 0) continue;
      int count = 0;
      for (int k = 0; k < n; ++k) {
        if (alpha.values(k, i) != alpha.values(k, j)) ++count;
      }
      disagree += count;
    }
  }
  return fit + gamma * disagree;
}

Eigen::VectorXd column_gradient_step(const Eigen::MatrixXd& gram,
                                     const Eigen::MatrixXd& alpha, int i,
                                     double tau, double s) {
  if (!(tau > 0.0) || !(s > 0.0)) {
    throw std::invalid_argument("column_gradient_step requires tau > 0, s > 0");
  }
  const double step = 2.0 / (tau * s);
  Eigen::VectorXd grad = gram * alpha.col(i);
  grad -= gram.col(i);
  return alpha.col(i) - step * grad;
}

Eigen::VectorXd prox_candidate_search(const Eigen::VectorXd& alpha_tilde,
                                      const Eigen::MatrixXd& alpha, int i,
                                      double gamma, double tau, double s,
                                      const Eigen::MatrixXi& S_sym) {
  const int n = static_cast<int>(alpha_tilde.size());
  std::vector<int> neighbors;
  for (int j = 0; j < n; ++j) {
    if (S_sym(i, j) != 0) neighbors.push_back(j);
  }

  Eigen::VectorXd out(n);
  const double quad = tau * s / 2.0;
  for (int k = 0; k < n; ++k) {
    if (k == i) {
      out(k) = 0.0;
      continue;
    }
    const double at = alpha_tilde(k);

    // Candidate values: alpha_tilde(k) itself, then the distinct neighbor
    // values ordered by (|value|, owning column). The disagreement term is
    // piecewise constant in v, so the minimizer is always in this set.
    std::vector<std::pair<double, int>> candidates;  // (value, owner j)
    for (int j : neighbors) {
      const double v = alpha(k, j);
      bool seen = false;
      for (const auto& c : candidates) {
        if (c.first == v) {
          seen = true;
          break;
        }
      }
      if (!seen) candidates.emplace_back(v, j);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) {
                const double aa = std::abs(a.first), ab = std::abs(b.first);
                if (aa != ab) return aa < ab;
                return a.second < b.second;
              });

    auto cost = [&](double v) {
      double disagree = 0.0;
      for (int j : neighbors) {
        if (v != alpha(k, j)) disagree += S_sym(i, j);
      }
      return quad * (v - at) * (v - at) + gamma * disagree;
    };

    double best_v = at;
    double best_cost = cost(at);
    for (const auto& c : candidates) {
      const double value = cost(c.first);
      if (value < best_cost) {
        best_cost = value;
        best_v = c.first;
      }
    }
    out(k) = best_v;
  }
  return out;
}

std::pair<CoefficientMatrix, RegObjectiveTrace> solve_regularized_l0(
    const DataMatrix& X, const SolverConfig& cfg,
    const CoefficientMatrix& alpha0) {
  cfg.validate();
  if (alpha0.size() != X.count()) {
    throw std::invalid_argument("alpha0 size does not match X");
  }
  const int n = X.count();

  const Eigen::MatrixXd gram = kernels::gram(X.values);
  const double s = step_constant_with_fallback(gram);
  const KnnAdjacency adjacency = build_knn_adjacency(X, cfg.knn_k);

  Eigen::MatrixXd alpha = alpha0.values;
  RegObjectiveTrace trace;
  trace.initial =
      reg_objective(X, CoefficientMatrix(alpha), cfg.gamma, adjacency);

  double previous_outer = trace.initial;
  for (int sweep = 0; sweep < kOuterMaxSweeps; ++sweep) {
    trace.inner.emplace_back(n);
    for (int i = 0; i < n; ++i) {
      std::vector<double>& inner = trace.inner.back()[i];
      double previous =
          column_objective(X, alpha, alpha.col(i), i, cfg.gamma, adjacency.S_sym);
      inner.push_back(previous);
      for (int t = 1; t <= kInnerMaxIters; ++t) {
        const Eigen::VectorXd tilde =
            column_gradient_step(gram, alpha, i, cfg.tau, s);
        const Eigen::VectorXd next = prox_candidate_search(
            tilde, alpha, i, cfg.gamma, cfg.tau, s, adjacency.S_sym);
        if (!next.allFinite()) {
          throw NumericError("non-finite iterate at sweep " +
                             std::to_string(sweep + 1) + ", column " +
                             std::to_string(i));
        }
        alpha.col(i) = next;
        const double value =
            column_objective(X, alpha, next, i, cfg.gamma, adjacency.S_sym);
        inner.push_back(value);
        if (std::abs(previous - value) < cfg.tol) break;
        previous = value;
      }
    }
    const double outer =
        reg_objective(X, CoefficientMatrix(alpha), cfg.gamma, adjacency);
    trace.outer.push_back(outer);
    if (std::abs(previous_outer - outer) < cfg.tol) break;
    previous_outer = outer;
  }
  return {CoefficientMatrix(std::move(alpha)), std::move(trace)};
}

long shared_support_count(const CoefficientMatrix& alpha,
                          const KnnAdjacency& adjacency) {
  const int n = alpha.size();
  long total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (adjacency.S(i, j) == 0) continue;
      for (int k = 0; k < n; ++k) {
        if ((alpha.values(k, i) != 0.0) == (alpha.values(k, j) != 0.0)) ++total;
      }
    }
  }
  return total;
}

}  // namespace l0graph
