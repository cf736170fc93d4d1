// Benchmark: the serial reference grid runner against the OpenMP-parallel
// kernel on the two heaviest workloads (formula-vs-oracle grid and the beta
// sweep).  Wall times and the speedup are printed as a small table.

#include <chrono>
#include <cstdio>

#include "bklib/conjectures.hpp"
#include "bklib/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

double run_verify_grid(int jobs) {
  bk::verify::Options opt;
  opt.full = false;
  opt.jobs = jobs;
  auto t0 = Clock::now();
  auto res = bk::verify::check_formula_vs_oracle(opt);
  auto t1 = Clock::now();
  if (!res.pass) std::fprintf(stderr, "warning: grid reported failures\n");
  return seconds(t0, t1);
}

double run_sweep(int jobs) {
  bk::conj::SweepConfig cfg;
  cfg.p_values = {2, 3};
  cfg.r_max = 4;
  cfg.max_summands = 3;
  cfg.jobs = jobs;
  auto t0 = Clock::now();
  auto rep = bk::conj::sweep_beta(cfg);
  auto t1 = Clock::now();
  if (!rep.pass()) std::fprintf(stderr, "warning: sweep reported violations\n");
  return seconds(t0, t1);
}

}  // namespace

int main() {
#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("grid runner benchmark (parallel threads: %d)\n", threads);
  std::printf("%-24s %12s %12s %10s\n", "workload", "serial [s]", "parallel [s]", "speedup");

  double s1 = run_verify_grid(1);
  double p1 = run_verify_grid(0);
  std::printf("%-24s %12.3f %12.3f %9.2fx\n", "formula-vs-oracle", s1, p1, s1 / p1);

  double s2 = run_sweep(1);
  double p2 = run_sweep(0);
  std::printf("%-24s %12.3f %12.3f %9.2fx\n", "beta-sweep", s2, p2, s2 / p2);
  return 0;
}
