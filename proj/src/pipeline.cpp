#include "l0graph/pipeline.hpp"

#include "l0graph/core.hpp"
#include "l0graph/io.hpp"
#include "l0graph/metrics.hpp"
#include "l0graph/regularized.hpp"
#include "l0graph/solver.hpp"
#include "l0graph/spectral.hpp"

#include <charconv>
#include <chrono>
#include <set>
#include <sstream>

namespace l0graph {

namespace {

constexpr int kInitMaxIters = 300;
constexpr double kInitTol = 1e-6;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(current);
  return parts;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& text, const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::vector<int> parse_int_list(const std::string& text, int expected,
                                const std::string& what) {
  const std::vector<std::string> parts = split(text, '|');
  std::vector<int> values;
  for (const std::string& p : parts) values.push_back(parse_int(p, what));
  if (static_cast<int>(values.size()) == 1) {
    values.assign(expected, values[0]);
  }
  if (static_cast<int>(values.size()) != expected) {
    throw std::invalid_argument(what + " needs 1 or K values, got " +
                                std::to_string(values.size()));
  }
  return values;
}

int distinct_count(const Eigen::VectorXi& labels) {
  std::set<int> seen;
  for (Eigen::Index i = 0; i < labels.size(); ++i) seen.insert(labels(i));
  return static_cast<int>(seen.size());
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "l0graph") return Method::l0graph;
  if (name == "rl0graph") return Method::rl0graph;
  if (name == "ompgraph") return Method::ompgraph;
  if (name == "l1graph") return Method::l1graph;
  if (name == "kmeans") return Method::kmeans_raw;
  if (name == "spectral-gaussian") return Method::spectral_gaussian;
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected l0graph, rl0graph, ompgraph, l1graph, kmeans, or "
      "spectral-gaussian)");
}

std::string method_name(Method method) {
  switch (method) {
    case Method::l0graph: return "l0graph";
    case Method::rl0graph: return "rl0graph";
    case Method::ompgraph: return "ompgraph";
    case Method::l1graph: return "l1graph";
    case Method::kmeans_raw: return "kmeans";
    case Method::spectral_gaussian: return "spectral-gaussian";
  }
  return "unknown";
}

SubspaceSpec parse_synth_spec(const std::string& text, std::uint64_t seed) {
  SubspaceSpec spec;
  spec.seed = seed;
  int K = 0;
  std::string dk_text, nk_text;
  bool have_d = false;

  for (const std::string& item : split(text, ',')) {
    const std::vector<std::string> kv = split(item, '=');
    if (kv.size() != 2) {
      throw std::invalid_argument("malformed synth item '" + item +
                                  "' (expected key=value)");
    }
    const std::string& key = kv[0];
    const std::string& value = kv[1];
    if (key == "K") {
      K = parse_int(value, "K");
    } else if (key == "d") {
      spec.ambient_dim = parse_int(value, "d");
      have_d = true;
    } else if (key == "dk") {
      dk_text = value;
    } else if (key == "nk") {
      nk_text = value;
    } else if (key == "mode") {
      if (value == "independent") spec.mode = SubspaceMode::independent;
      else if (value == "disjoint") spec.mode = SubspaceMode::disjoint;
      else if (value == "overlapping") spec.mode = SubspaceMode::overlapping;
      else if (value == "distinct") spec.mode = SubspaceMode::distinct_random;
      else throw std::invalid_argument("unknown synth mode '" + value + "'");
    } else if (key == "sigma") {
      spec.noise_sigma = parse_real(value, "sigma");
    } else {
      throw std::invalid_argument("unknown synth key '" + key + "'");
    }
  }

  if (K < 1) throw std::invalid_argument("synth spec needs K>=1");
  if (!have_d) throw std::invalid_argument("synth spec needs d");
  if (dk_text.empty()) throw std::invalid_argument("synth spec needs dk");
  if (nk_text.empty()) throw std::invalid_argument("synth spec needs nk");
  spec.dims = parse_int_list(dk_text, K, "dk");
  spec.counts = parse_int_list(nk_text, K, "nk");
  spec.validate();
  return spec;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "method=" << method << '\n'
      << "samples=" << samples << '\n'
      << "features=" << features << '\n'
      << "clusters=" << clusters << '\n'
      << "normalize=" << (normalize ? 1 : 0) << '\n'
      << "seed=" << seed << '\n'
      << "lambda=" << format_double(lambda) << '\n'
      << "lambda_l1=" << format_double(lambda_l1) << '\n'
      << "tau=" << format_double(tau) << '\n'
      << "max_iter=" << max_iter << '\n'
      << "tol=" << format_double(tol) << '\n'
      << "gamma=" << format_double(gamma) << '\n'
      << "knn_k=" << knn_k << '\n'
      << "omp_t=" << omp_t << '\n';
  if (iterations) out << "iterations=" << *iterations << '\n';
  if (objective_initial) {
    out << "objective_initial=" << format_double(*objective_initial) << '\n';
  }
  if (objective_final) {
    out << "objective_final=" << format_double(*objective_final) << '\n';
  }
  if (avg_nnz) out << "avg_nnz=" << format_double(*avg_nnz) << '\n';
  if (accuracy_value) out << "accuracy=" << format_double(*accuracy_value) << '\n';
  if (nmi_value) out << "nmi=" << format_double(*nmi_value) << '\n';
  out << "wall_seconds=" << format_double(wall_seconds) << '\n';
  return out.str();
}

RunReport run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.solver.validate();
  if (config.omp_t < 1) throw std::invalid_argument("omp_t must be >= 1");
  if (config.synth && !config.data_path.empty()) {
    throw std::invalid_argument("give either a data file or a synth spec, not both");
  }

  // Data: generated or loaded.
  DataMatrix X;
  std::optional<Eigen::VectorXi> truth;
  if (config.synth) {
    SynthDataset synth = generate(*config.synth);
    X = std::move(synth.X);
    truth = std::move(synth.truth);
  } else if (!config.data_path.empty()) {
    CsvData csv = load_csv(config.data_path, config.labels_col);
    X = std::move(csv.X);
    truth = std::move(csv.labels);
  } else {
    throw std::invalid_argument("no input: set a data file or a synth spec");
  }
  if (config.normalize) X = normalize_columns(X);

  int clusters = config.clusters;
  if (clusters <= 0) {
    if (!truth) {
      throw std::invalid_argument(
          "clusters not given and no labels to infer them from");
    }
    clusters = distinct_count(*truth);
  }

  RunReport report;
  report.method = method_name(config.method);
  report.samples = X.count();
  report.features = X.dim();
  report.clusters = clusters;
  report.normalize = config.normalize;
  report.seed = config.solver.seed;
  report.lambda = config.solver.lambda;
  report.lambda_l1 = config.solver.lambda_l1;
  report.tau = config.solver.tau;
  report.max_iter = config.solver.max_iter;
  report.tol = config.solver.tol;
  report.gamma = config.solver.gamma;
  report.knn_k = config.solver.knn_k;
  report.omp_t = config.omp_t;

  // Codes (for the self-representation methods) and cluster labels.
  std::optional<CoefficientMatrix> codes;
  ClusteringResult clustering;
  switch (config.method) {
    case Method::l0graph: {
      const CoefficientMatrix init = l1_initialize(
          X, config.solver.lambda_l1, kInitMaxIters, kInitTol, config.solver.tau);
      auto [alpha, trace] = solve_l0(X, config.solver, init);
      report.iterations = trace.iterations();
      report.objective_initial = trace.initial;
      report.objective_final = trace.final_objective();
      codes = std::move(alpha);
      break;
    }
    case Method::rl0graph: {
      const CoefficientMatrix init = l1_initialize(
          X, config.solver.lambda_l1, kInitMaxIters, kInitTol, config.solver.tau);
      auto [alpha, trace] = solve_l0(X, config.solver, init);
      auto [reg_alpha, reg_trace] =
          solve_regularized_l0(X, config.solver, alpha);
      report.iterations = reg_trace.sweeps();
      report.objective_initial = reg_trace.initial;
      report.objective_final = reg_trace.final_objective();
      codes = std::move(reg_alpha);
      break;
    }
    case Method::ompgraph:
      codes = omp_sparse_code(X, config.omp_t);
      break;
    case Method::l1graph:
      codes = l1_initialize(X, config.solver.lambda_l1, config.solver.max_iter,
                            config.solver.tol, config.solver.tau);
      break;
    case Method::kmeans_raw:
      clustering = kmeans(X.values.transpose(), clusters, 10, config.solver.seed);
      break;
    case Method::spectral_gaussian: {
      SimilarityGraph graph =
          SimilarityGraph::from_weights(gaussian_similarity(X));
      clustering = spectral_cluster_graph(graph, clusters, config.solver.seed);
      if (!config.export_graph.empty()) {
        write_edge_list(config.export_graph, graph.W);
      }
      break;
    }
  }

  if (codes) {
    report.avg_nnz = codes->average_nnz();
    SimilarityGraph graph = symmetrize(*codes);
    if (!config.export_graph.empty()) {
      write_edge_list(config.export_graph, graph.W);
    }
    clustering = spectral_cluster_graph(graph, clusters, config.solver.seed);
  }

  if (truth) {
    const LabelPair pair(clustering.labels, *truth);
    report.accuracy_value = accuracy(pair);
    report.nmi_value = nmi(pair);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!config.out_path.empty()) {
    write_text_file(config.out_path, report.to_text());
  }
  return report;
}

std::vector<RunReport> sweep(const RunConfig& config, const std::string& parameter,
                             const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("sweep needs at least one value");
  }
  std::vector<RunReport> reports;
  reports.reserve(values.size());
  for (double value : values) {
    RunConfig variant = config;
    variant.out_path.clear();      // only the sweep summary is written
    variant.export_graph.clear();
    if (parameter == "lambda") {
      variant.solver.lambda = value;
    } else if (parameter == "gamma") {
      variant.solver.gamma = value;
    } else if (parameter == "knn_k") {
      variant.solver.knn_k = static_cast<int>(value);
    } else if (parameter == "T") {
      variant.omp_t = static_cast<int>(value);
    } else {
      throw std::invalid_argument("unknown sweep parameter '" + parameter +
                                  "' (expected lambda, gamma, knn_k, or T)");
    }
    reports.push_back(run(variant));
  }
  return reports;
}

std::string sweep_csv(const std::string& parameter,
                      const std::vector<double>& values,
                      const std::vector<RunReport>& reports) {
  std::ostringstream out;
  out << parameter << ",accuracy,nmi,avg_nnz\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(values[i]) << ',';
    if (reports[i].accuracy_value) out << format_double(*reports[i].accuracy_value);
    out << ',';
    if (reports[i].nmi_value) out << format_double(*reports[i].nmi_value);
    out << ',';
    if (reports[i].avg_nnz) out << format_double(*reports[i].avg_nnz);
    out << '\n';
  }
  return out.str();
}

}  // namespace l0graph
