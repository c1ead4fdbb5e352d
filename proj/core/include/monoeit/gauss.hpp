#pragma once

#include <Eigen/Core>

namespace monoeit {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussLegendre gauss_legendre(int point_count);

/// Rule mapped to [lo, hi].
GaussLegendre gauss_legendre(int point_count, double lo, double hi);

}  // namespace monoeit
