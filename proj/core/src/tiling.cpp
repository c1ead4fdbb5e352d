#include "monoeit/tiling.hpp"

#include <cmath>
#include <stdexcept>

namespace monoeit {

HexTiling hex_tiling(double hex_radius) {
  if (!(hex_radius > 0.0 && hex_radius < 1.0)) {
    throw std::invalid_argument("hex_tiling: radius must be in (0,1)");
  }
  HexTiling tiling;
  tiling.hex_radius = hex_radius;

  const double sqrt3 = std::sqrt(3.0);
  const int q_max = static_cast<int>(std::ceil(1.0 / (1.5 * hex_radius))) + 1;
  const int r_max = static_cast<int>(std::ceil(1.0 / (sqrt3 * hex_radius))) + 1;
  for (int q = -q_max; q <= q_max; ++q) {
    for (int r = -r_max; r <= r_max; ++r) {
      const Complex center{1.5 * hex_radius * q,
                           sqrt3 * hex_radius * (r + 0.5 * q)};
      // Retention rule |C| + R <= 1; cells tangent to the unit circle
      // (within 1e-12) are dropped as well since their concentric pairing
      // degenerates to |a| = 1.
      if (1.0 - std::abs(center) - hex_radius < 1e-12) continue;
      HexCell cell;
      cell.index = static_cast<int>(tiling.cells.size());
      cell.center = center;
      for (int k = 0; k < 6; ++k) {
        cell.corners[k] = center + std::polar(hex_radius, k * kTwoPi / 6.0);
      }
      tiling.cells.push_back(cell);
    }
  }
  return tiling;
}

}  // namespace monoeit
