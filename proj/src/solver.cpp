#include "l0graph/solver.hpp"

#include "l0graph/core.hpp"
#include "l0graph/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace l0graph {

namespace {

void check_alpha_matches(const DataMatrix& X, const CoefficientMatrix& alpha) {
  if (alpha.size() != X.count()) {
    throw std::invalid_argument("alpha is " + std::to_string(alpha.size()) +
                                " x " + std::to_string(alpha.size()) +
                                " but X has " + std::to_string(X.count()) +
                                " samples");
  }
}

/// Step constant with the documented fallback: power iteration first, then
/// 2 * trace(G) (trace dominates the top eigenvalue of a PSD matrix, so the
/// descent analysis still applies). Zero data has no usable step size.
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

}  // namespace

ProximalState::ProximalState(const DataMatrix& X, CoefficientMatrix alpha0,
                             double s_value)
    : gram(kernels::gram(X.values)),
      gram_x(gram),
      alpha(std::move(alpha0)),
      s(s_value) {
  check_alpha_matches(X, alpha);
}

Eigen::MatrixXd gradient_step(const ProximalState& state, double tau) {
  if (!(tau > 0.0) || !(state.s > 0.0)) {
    throw std::invalid_argument("gradient_step requires tau > 0 and s > 0");
  }
  const double step = 2.0 / (tau * state.s);
  Eigen::MatrixXd grad = kernels::product(state.gram, state.alpha.values);
  grad -= state.gram_x;
  return state.alpha.values - step * grad;
}

CoefficientMatrix hard_threshold(const Eigen::MatrixXd& alpha_tilde,
                                 double lambda, double tau, double s) {
  if (!(tau > 0.0) || !(s > 0.0) || !(lambda >= 0.0)) {
    throw std::invalid_argument(
        "hard_threshold requires tau > 0, s > 0, lambda >= 0");
  }
  const double threshold = std::sqrt(2.0 * lambda / (tau * s));
  Eigen::MatrixXd out = alpha_tilde;
  const Eigen::Index n = out.rows();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      // Strict comparison: entries exactly at the threshold are kept (both
      // choices cost the same; keeping makes the map deterministic about it).
      if (std::abs(out(i, j)) < threshold) out(i, j) = 0.0;
    }
    if (j < n) out(j, j) = 0.0;
  }
  return CoefficientMatrix(std::move(out));
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

std::pair<CoefficientMatrix, ObjectiveTrace> solve_l0(
    const DataMatrix& X, const SolverConfig& cfg,
    const CoefficientMatrix& alpha0) {
  cfg.validate();
  check_alpha_matches(X, alpha0);

  ProximalState state(X, alpha0, 0.0);
  state.s = step_constant_with_fallback(state.gram);

  ObjectiveTrace trace;
  trace.lipschitz_s = state.s;
  trace.initial = objective_l0(X, alpha0, cfg.lambda);

  double previous = trace.initial;
  for (int t = 1; t <= cfg.max_iter; ++t) {
    const Eigen::MatrixXd alpha_tilde = gradient_step(state, cfg.tau);
    CoefficientMatrix next =
        hard_threshold(alpha_tilde, cfg.lambda, cfg.tau, state.s);
    if (!next.values.allFinite()) {
      throw NumericError("non-finite iterate at iteration " +
                         std::to_string(t));
    }
    const double value = objective_l0(X, next, cfg.lambda);
    trace.objective.push_back(value);
    trace.step_norm.push_back((next.values - state.alpha.values).norm());
    trace.max_abs.push_back(next.values.cwiseAbs().maxCoeff());
    state.alpha = std::move(next);
    state.t = t;
    if (std::abs(previous - value) < cfg.tol) break;
    previous = value;
  }
  return {std::move(state.alpha), std::move(trace)};
}

CoefficientMatrix l1_initialize(const DataMatrix& X, double lambda_l1,
                                int max_iter, double tol, double tau) {
  if (!(lambda_l1 >= 0.0)) throw std::invalid_argument("lambda_l1 must be >= 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(tau > 1.0)) throw std::invalid_argument("tau must be > 1");

  const Eigen::MatrixXd gram = kernels::gram(X.values);
  const double s = step_constant_with_fallback(gram);
  const double step = 2.0 / (tau * s);
  const double shrink = lambda_l1 / (tau * s);
  const Eigen::Index n = X.count();

  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, n);
  double previous = X.values.squaredNorm();  // objective at alpha = 0
  for (int t = 1; t <= max_iter; ++t) {
    Eigen::MatrixXd grad = kernels::product(gram, alpha);
    grad -= gram;
    Eigen::MatrixXd next = alpha - step * grad;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        next(i, j) = soft_threshold(next(i, j), shrink);
      }
      next(j, j) = 0.0;
    }
    if (!next.allFinite()) {
      throw NumericError("non-finite iterate at iteration " +
                         std::to_string(t));
    }
    const double fit =
        (X.values - kernels::product(X.values, next)).squaredNorm();
    const double value = fit + lambda_l1 * next.array().abs().sum();
    alpha = std::move(next);
    if (std::abs(previous - value) < tol) break;
    previous = value;
  }
  return CoefficientMatrix(std::move(alpha));
}

CoefficientMatrix omp_sparse_code(const DataMatrix& X, int T) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  const int n = X.count();
  const int d = X.dim();
  const int budget = std::min(T, std::min(d, n - 1));

  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = X.values.col(i);
    Eigen::VectorXd residual = x;
    std::vector<int> selected;
    Eigen::VectorXd beta;

    while (static_cast<int>(selected.size()) < budget) {
      // Largest absolute correlation with the residual; ties keep the
      // smallest index because only strict improvement replaces the best.
      int pick = -1;
      double best = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (std::find(selected.begin(), selected.end(), j) != selected.end())
          continue;
        const double c = std::abs(X.values.col(j).dot(residual));
        if (c > best) {
          best = c;
          pick = j;
        }
      }
      if (pick < 0 || best == 0.0) break;

      std::vector<int> trial = selected;
      trial.push_back(pick);
      Eigen::MatrixXd atoms(d, trial.size());
      for (std::size_t k = 0; k < trial.size(); ++k) {
        atoms.col(k) = X.values.col(trial[k]);
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(atoms);
      if (qr.rank() < static_cast<Eigen::Index>(trial.size())) {
        break;  // new atom is linearly dependent on the current ones
      }
      beta = qr.solve(x);
      selected = std::move(trial);
      residual = x - atoms * beta;
      if (residual.norm() < 1e-10) break;
    }

    for (std::size_t k = 0; k < selected.size(); ++k) {
      alpha(selected[k], i) = beta(static_cast<Eigen::Index>(k));
    }
  }
  return CoefficientMatrix(std::move(alpha));
}

OracleSolution brute_force_l0_oracle(const DataMatrix& X, double lambda,
                                     int max_support) {
  const int n = X.count();
  if (n > 14 || max_support > 4) {
    throw std::invalid_argument(
        "brute_force_l0_oracle: enumeration budget exceeded (need n <= 14 "
        "and max_support <= 4, got n = " +
        std::to_string(n) + ", max_support = " + std::to_string(max_support));
  }
  if (max_support < 0) {
    throw std::invalid_argument("max_support must be >= 0");
  }
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");

  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::vector<int>> supports(n);
  std::vector<double> best_objective(n, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = X.values.col(i);
    std::vector<int> candidates;
    candidates.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) candidates.push_back(j);
    }
    const int m = static_cast<int>(candidates.size());

    double best = x.squaredNorm();  // empty support
    std::vector<int> best_support;
    Eigen::VectorXd best_beta;

    // Enumerate supports by size then lexicographically; only a strictly
    // smaller objective replaces the incumbent, so ties resolve to the
    // smaller support and then to lexicographic order.
    for (int k = 1; k <= std::min(max_support, m); ++k) {
      std::vector<int> idx(k);
      for (int c = 0; c < k; ++c) idx[c] = c;
      while (true) {
        Eigen::MatrixXd atoms(X.dim(), k);
        for (int c = 0; c < k; ++c) {
          atoms.col(c) = X.values.col(candidates[idx[c]]);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(atoms);
        const Eigen::VectorXd beta = qr.solve(x);
        const double value =
            (x - atoms * beta).squaredNorm() + lambda * static_cast<double>(k);
        if (value < best) {
          best = value;
          best_support.resize(k);
          for (int c = 0; c < k; ++c) best_support[c] = candidates[idx[c]];
          best_beta = beta;
        }
        // next combination
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int c = pos + 1; c < k; ++c) idx[c] = idx[c - 1] + 1;
      }
    }

    for (std::size_t c = 0; c < best_support.size(); ++c) {
      alpha(best_support[c], i) = best_beta(static_cast<Eigen::Index>(c));
    }
    supports[i] = std::move(best_support);
    best_objective[i] = best;
  }

  OracleSolution out;
  out.alpha = CoefficientMatrix(std::move(alpha));
  out.per_column_support = std::move(supports);
  out.objective = 0.0;
  for (int i = 0; i < n; ++i) out.objective += best_objective[i];
  return out;
}

}  // namespace l0graph
