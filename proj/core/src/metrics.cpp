#include "monoeit/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace monoeit {

DiffReport diff(const ReconResult& first, const ReconResult& second) {
  if (first.cells.size() != second.cells.size() ||
      first.hex_radius != second.hex_radius) {
    throw std::invalid_argument("diff: results use different tilings");
  }
  constexpr double kMachineScale = 1e-12;
  DiffReport report;
  report.total_cells = static_cast<int>(first.cells.size());
  for (std::size_t i = 0; i < first.cells.size(); ++i) {
    const CellResult& a = first.cells[i];
    const CellResult& b = second.cells[i];
    if (a.index != b.index || std::abs(a.center - b.center) > 1e-12) {
      throw std::invalid_argument("diff: results use different tilings");
    }
    if (a.accepted == b.accepted) continue;
    DiffReport::CellDiff cell;
    cell.index = a.index;
    cell.eigenvalue_first = a.min_eigenvalue;
    cell.eigenvalue_second = b.min_eigenvalue;
    cell.near_machine = std::abs(a.min_eigenvalue) < kMachineScale &&
                        std::abs(b.min_eigenvalue) < kMachineScale;
    if (a.accepted) {
      report.only_in_first.push_back(cell);
    } else {
      report.only_in_second.push_back(cell);
    }
  }
  report.e_abs = static_cast<int>(report.only_in_first.size() +
                                  report.only_in_second.size());
  report.e_rel = static_cast<double>(report.e_abs) / report.total_cells;
  return report;
}

}  // namespace monoeit
