#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "monoeit/geometry.hpp"

namespace monoeit {

struct BallShape {
  Ball ball;
  double contrast = 1.0;  // kappa > 0
};

struct PolygonShape {
  std::vector<Complex> vertices;  // counter-clockwise, closed implicitly
  double contrast = 1.0;
};

using Shape = std::variant<BallShape, PolygonShape>;

/// Conductivity gamma = 1 + sum_i kappa_i chi_{S_i}, background 1. Shapes
/// must be strictly inside the unit disk with pairwise disjoint closures.
struct Phantom {
  std::vector<Shape> shapes;

  bool empty() const { return shapes.empty(); }
  /// Single-ball phantoms admit the exact ND characterization.
  const BallShape* single_ball() const;
};

double shape_contrast(const Shape& s);
bool shape_contains(const Shape& s, Complex p);
/// Signed distance to the shape boundary, negative inside. Exact for balls,
/// exact distance-to-edges for polygons.
double shape_boundary_distance(const Shape& s, Complex p);

/// Conductivity value at a point.
double phantom_conductivity(const Phantom& p, Complex x);

/// Throws std::invalid_argument on: non-positive contrast, shapes touching
/// or leaving the unit disk, or overlapping shape pairs.
void validate_phantom(const Phantom& p);

Phantom load_phantom(const std::filesystem::path& file);
void save_phantom(const Phantom& p, const std::filesystem::path& file);
std::string phantom_to_json(const Phantom& p);
Phantom phantom_from_json(const std::string& text);

}  // namespace monoeit
