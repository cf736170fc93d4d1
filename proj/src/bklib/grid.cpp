#include "grid.hpp"

#include "errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bk::grid {

namespace {

CellOutcome guarded(const CellFn& fn, size_t i) {
  try {
    return fn(i);
  } catch (const error& e) {
    CellOutcome out;
    out.key = "cell " + std::to_string(i);
    if (e.code() == errc::budget_exceeded) {
      out.skipped = true;
      out.detail = "skipped(budget)";
    } else {
      out.pass = false;
      out.detail = std::string(errc_name(e.code())) + ": " + e.what();
    }
    return out;
  } catch (const std::exception& e) {
    return {"cell " + std::to_string(i), false, false, e.what()};
  }
}

}  // namespace

std::vector<CellOutcome> run_cells_serial(size_t count, const CellFn& fn) {
  std::vector<CellOutcome> out(count);
  for (size_t i = 0; i < count; ++i) out[i] = guarded(fn, i);
  return out;
}

std::vector<CellOutcome> run_cells_parallel(size_t count, const CellFn& fn, int jobs) {
  std::vector<CellOutcome> out(count);
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < (int64_t)count; ++i) out[i] = guarded(fn, (size_t)i);
#else
  (void)jobs;
  for (size_t i = 0; i < count; ++i) out[i] = guarded(fn, i);
#endif
  return out;
}

std::vector<CellOutcome> run_cells(size_t count, const CellFn& fn, int jobs) {
  if (jobs == 1) return run_cells_serial(count, fn);
  return run_cells_parallel(count, fn, jobs);
}

}  // namespace bk::grid
