#pragma once

#include <vector>

#include "monoeit/engine.hpp"

namespace monoeit {

/// Set differences between two reconstructions on the same tiling:
/// e_abs = |S \ S'| + |S' \ S| and e_rel = e_abs / |S| with |S| the total
/// cell count.
struct DiffReport {
  int e_abs = 0;
  double e_rel = 0.0;
  int total_cells = 0;

  struct CellDiff {
    int index = 0;
    double eigenvalue_first = 0.0;
    double eigenvalue_second = 0.0;
    bool near_machine = false;  // both magnitudes below 1e-12
  };
  std::vector<CellDiff> only_in_first;
  std::vector<CellDiff> only_in_second;
};

/// Requires both results to come from the identical tiling.
DiffReport diff(const ReconResult& first, const ReconResult& second);

}  // namespace monoeit
