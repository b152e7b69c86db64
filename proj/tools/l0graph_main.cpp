// Command-line front end: sparse self-representation graphs + spectral
// clustering over CSV or synthetic union-of-subspaces data.

#include "l0graph/io.hpp"
#include "l0graph/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{
      "Sparse subspace clustering via l0 self-representation graphs"};

  std::string method = "l0graph";
  std::string data_path;
  int labels_col = std::numeric_limits<int>::min();
  std::string synth_spec;
  int clusters = 0;
  l0graph::SolverConfig solver;
  int omp_t = 3;
  bool normalize = true;
  std::string out_path, export_graph;
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::string sweep_out;

  app.add_option("--method", method,
                 "l0graph | rl0graph | ompgraph | l1graph | kmeans | "
                 "spectral-gaussian")
      ->capture_default_str();
  app.add_option("--data", data_path, "CSV file, one sample per row");
  app.add_option("--labels-col", labels_col,
                 "0-based label column in the CSV (-1 = last column)");
  app.add_option("--synth", synth_spec,
                 "generate data instead, e.g. "
                 "\"K=3,d=30,dk=3,nk=20,mode=distinct,sigma=0\"");
  app.add_option("--clusters", clusters,
                 "number of clusters (default: inferred from labels)");
  app.add_option("--lambda", solver.lambda, "sparsity weight")
      ->capture_default_str();
  app.add_option("--lambda-l1", solver.lambda_l1,
                 "sparsity weight of the l1 initializer")
      ->capture_default_str();
  app.add_option("--tau", solver.tau, "step damping factor (> 1)")
      ->capture_default_str();
  app.add_option("--gamma", solver.gamma,
                 "neighbor-consistency weight (rl0graph)")
      ->capture_default_str();
  app.add_option("--knn-k", solver.knn_k, "neighbors per sample (rl0graph)")
      ->capture_default_str();
  app.add_option("--omp-t", omp_t, "atoms per column (ompgraph)")
      ->capture_default_str();
  app.add_option("--max-iter", solver.max_iter, "iteration budget")
      ->capture_default_str();
  app.add_option("--tol", solver.tol, "objective stall tolerance")
      ->capture_default_str();
  app.add_flag("--normalize,!--no-normalize", normalize,
               "scale every sample to unit norm first (default: on)");
  app.add_option("--seed", solver.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", out_path, "write the run report here");
  app.add_option("--export-graph", export_graph,
                 "write the similarity graph as a CSV edge list");
  app.add_option("--sweep-param", sweep_param,
                 "sweep this parameter instead of a single run "
                 "(lambda | gamma | knn_k | T)");
  app.add_option("--sweep-values", sweep_values, "values for --sweep-param")
      ->delimiter(',');
  app.add_option("--sweep-out", sweep_out, "write the sweep summary CSV here");

  try {
    app.parse(argc, argv);

    l0graph::RunConfig config;
    config.method = l0graph::parse_method(method);
    config.data_path = data_path;
    if (labels_col != std::numeric_limits<int>::min()) {
      config.labels_col = labels_col;
    }
    if (!synth_spec.empty()) {
      config.synth = l0graph::parse_synth_spec(synth_spec, solver.seed);
    }
    config.clusters = clusters;
    config.solver = solver;
    config.omp_t = omp_t;
    config.normalize = normalize;
    config.out_path = out_path;
    config.export_graph = export_graph;

    if (!sweep_param.empty()) {
      const std::vector<l0graph::RunReport> reports =
          l0graph::sweep(config, sweep_param, sweep_values);
      const std::string csv =
          l0graph::sweep_csv(sweep_param, sweep_values, reports);
      if (!sweep_out.empty()) {
        l0graph::write_text_file(sweep_out, csv);
      }
      std::cout << csv;
    } else {
      const l0graph::RunReport report = l0graph::run(config);
      std::cout << report.to_text();
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const l0graph::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const l0graph::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
