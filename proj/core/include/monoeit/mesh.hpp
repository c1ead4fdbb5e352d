#pragma once

#include <array>
#include <vector>

#include "monoeit/phantom.hpp"

namespace monoeit {

/// Conforming triangulation of the unit disk, aligned with the phantom
/// shape boundaries so every element lies on one side of each shape.
struct DiskMesh {
  std::vector<Complex> vertices;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<int> labels;    // per triangle: shape index, -1 = background
  std::vector<int> boundary;  // outer-circle vertex indices, angular order
  double h = 0.0;             // target edge length

  double triangle_area(int t) const;
  Complex centroid(int t) const;
};

/// Structured polar triangulation at edge length ~h, with vertices snapped
/// onto each shape boundary and crossing edges split at the boundary, so
/// elements resolve the shapes to O(h^2). Throws on overlapping shapes.
DiskMesh mesh_disk(const Phantom& phantom, double h);

}  // namespace monoeit
