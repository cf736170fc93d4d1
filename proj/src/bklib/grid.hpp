#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bk::grid {

// One grid cell outcome.  Results are keyed by the cell's own coordinates so
// the merge is order-insensitive; workers share nothing.
struct CellOutcome {
  std::string key;
  bool pass = true;
  bool skipped = false;   // budget exceeded: logged, never silent
  std::string detail;
};

using CellFn = std::function<CellOutcome(size_t)>;

// Evaluate count independent cells.  jobs == 1 runs the serial reference
// loop; any other value uses the OpenMP-parallel kernel (jobs == 0 lets the
// runtime pick the thread count).  Both produce identical result vectors.
std::vector<CellOutcome> run_cells(size_t count, const CellFn& fn, int jobs);

std::vector<CellOutcome> run_cells_serial(size_t count, const CellFn& fn);
std::vector<CellOutcome> run_cells_parallel(size_t count, const CellFn& fn, int jobs);

}  // namespace bk::grid
