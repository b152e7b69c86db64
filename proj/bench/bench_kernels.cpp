// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce bit-identical results while at it.

#include "l0graph/kernels.hpp"
#include "l0graph/solver.hpp"
#include "l0graph/types.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

namespace {

double time_of(const std::function<void()>& fn, int repeats) {
  fn();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return elapsed.count() / repeats;
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

}  // namespace

int main() {
  using namespace l0graph;

  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-26s %12s %12s %9s %10s\n", "kernel", "serial (s)",
              "parallel (s)", "speedup", "identical");

  const struct {
    int d, n, repeats;
  } sizes[] = {{64, 256, 20}, {128, 512, 8}, {256, 1024, 3}};

  for (const auto& size : sizes) {
    const Eigen::MatrixXd X = random_matrix(size.d, size.n, 17);
    const Eigen::MatrixXd A = random_matrix(size.n, size.n, 18);

    const Eigen::MatrixXd g_serial = kernels::serial::gram(X);
    const Eigen::MatrixXd g_parallel = kernels::gram(X);
    const double t_gs =
        time_of([&] { kernels::serial::gram(X); }, size.repeats);
    const double t_gp = time_of([&] { kernels::gram(X); }, size.repeats);
    std::printf("%-26s %12.6f %12.6f %8.2fx %10s\n",
                ("gram " + std::to_string(size.d) + "x" + std::to_string(size.n))
                    .c_str(),
                t_gs, t_gp, t_gs / t_gp,
                g_serial == g_parallel ? "yes" : "NO");

    const Eigen::MatrixXd p_serial = kernels::serial::product(X, A);
    const Eigen::MatrixXd p_parallel = kernels::product(X, A);
    const double t_ps =
        time_of([&] { kernels::serial::product(X, A); }, size.repeats);
    const double t_pp = time_of([&] { kernels::product(X, A); }, size.repeats);
    std::printf("%-26s %12.6f %12.6f %8.2fx %10s\n",
                ("product " + std::to_string(size.d) + "x" +
                 std::to_string(size.n))
                    .c_str(),
                t_ps, t_pp, t_ps / t_pp,
                p_serial == p_parallel ? "yes" : "NO");
  }

  // End-to-end: the hard-thresholding solver with 1 thread vs all threads.
  {
    const DataMatrix X(random_matrix(64, 256, 19));
    SolverConfig cfg;
    cfg.max_iter = 20;
    const CoefficientMatrix alpha0 = CoefficientMatrix::zeros(X.count());
    const int max_threads = omp_get_max_threads();

    omp_set_num_threads(1);
    auto [alpha1, trace1] = solve_l0(X, cfg, alpha0);
    const double t1 = time_of([&] { solve_l0(X, cfg, alpha0); }, 3);

    omp_set_num_threads(max_threads);
    auto [alphaN, traceN] = solve_l0(X, cfg, alpha0);
    const double tN = time_of([&] { solve_l0(X, cfg, alpha0); }, 3);

    std::printf("%-26s %12.6f %12.6f %8.2fx %10s\n", "solve_l0 64x256 (1 vs N)",
                t1, tN, t1 / tN,
                alpha1.values == alphaN.values ? "yes" : "NO");
  }
  return 0;
}
