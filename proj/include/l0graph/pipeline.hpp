#pragma once

#include "l0graph/synth.hpp"
#include "l0graph/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace l0graph {

enum class Method {
  l0graph,           ///< l1 warm start + hard-thresholding solver
  rl0graph,          ///< l0graph followed by the neighbor-regularized solver
  ompgraph,          ///< orthogonal matching pursuit codes
  l1graph,           ///< soft-thresholding (l1) codes
  kmeans_raw,        ///< k-means directly on the feature columns
  spectral_gaussian, ///< spectral clustering of a Gaussian-kernel graph
};

/// Accepts the CLI spellings: l0graph, rl0graph, ompgraph, l1graph, kmeans,
/// spectral-gaussian. Throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);
std::string method_name(Method method);

/// Parses a synthetic-dataset description of the form
///   "K=3,d=30,dk=3,nk=20,mode=distinct,sigma=0"
/// where dk and nk accept either one value for all subspaces or K values
/// separated by '|', and mode is one of independent, disjoint, overlapping,
/// distinct. Throws std::invalid_argument on malformed input.
SubspaceSpec parse_synth_spec(const std::string& text, std::uint64_t seed);

struct RunConfig {
  Method method = Method::l0graph;
  std::string data_path;              ///< CSV input; empty when synth is set
  std::optional<int> labels_col;      ///< 0-based; -1 = last column
  std::optional<SubspaceSpec> synth;  ///< generate instead of loading
  int clusters = 0;                   ///< 0 = infer from the labels
  SolverConfig solver;
  int omp_t = 3;                      ///< atoms per column for ompgraph
  bool normalize = true;
  std::string out_path;               ///< report destination; empty = stdout only
  std::string export_graph;           ///< edge-list destination; empty = none
};

/// Everything a run reports. Optional entries are omitted from the text when
/// the method does not produce them (no codes => no nnz/objective, no ground
/// truth => no metrics).
struct RunReport {
  std::string method;
  int samples = 0;
  int features = 0;
  int clusters = 0;
  bool normalize = true;
  std::uint64_t seed = 0;
  double lambda = 0.0, lambda_l1 = 0.0, tau = 0.0, tol = 0.0, gamma = 0.0;
  int max_iter = 0, knn_k = 0, omp_t = 0;
  std::optional<int> iterations;
  std::optional<double> objective_initial;
  std::optional<double> objective_final;
  std::optional<double> avg_nnz;
  std::optional<double> accuracy_value;
  std::optional<double> nmi_value;
  double wall_seconds = 0.0;

  /// Deterministic key=value serialization; wall_seconds is the only line
  /// that may differ between otherwise identical runs (it comes last).
  std::string to_text() const;
};

/// Loads or generates the data, runs the requested method, clusters, scores
/// against ground truth when available, and writes the report/graph exports
/// requested in the config.
RunReport run(const RunConfig& config);

/// Re-runs `config` once per value with the named parameter (lambda, gamma,
/// knn_k, or T) overridden. Returns one report per value, in order.
std::vector<RunReport> sweep(const RunConfig& config, const std::string& parameter,
                             const std::vector<double>& values);

/// CSV summary of a sweep: value,accuracy,nmi,avg_nnz per row (blank cells
/// for missing metrics).
std::string sweep_csv(const std::string& parameter,
                      const std::vector<double>& values,
                      const std::vector<RunReport>& reports);

}  // namespace l0graph
