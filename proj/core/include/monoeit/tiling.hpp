#pragma once

#include <array>
#include <vector>

#include "monoeit/geometry.hpp"

namespace monoeit {

/// Flat-topped regular hexagon with corners on the circumscribed ball
/// B_{C, R_hex}; that ball is the monotonicity test inclusion.
struct HexCell {
  int index = 0;
  Complex center;
  std::array<Complex, 6> corners;

  Ball ball(double hex_radius) const { return Ball{center, hex_radius}; }
};

struct HexTiling {
  double hex_radius = 0.0;
  std::vector<HexCell> cells;
};

/// Regular hexagonal lattice anchored at the origin; keeps exactly the
/// cells with |C| + R_hex <= 1.
HexTiling hex_tiling(double hex_radius);

}  // namespace monoeit
