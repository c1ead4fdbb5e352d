#include "monoeit/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace monoeit {

// Newton iteration on the Legendre recurrence; nodes are symmetric so only
// the lower half is solved.
GaussLegendre gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: need >= 1 point");
  GaussLegendre rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.weights(i) = w;
    rule.nodes(q - 1 - i) = x;
    rule.weights(q - 1 - i) = w;
  }
  return rule;
}

GaussLegendre gauss_legendre(int q, double lo, double hi) {
  GaussLegendre rule = gauss_legendre(q);
  const double mid = 0.5 * (lo + hi);
  const double len = 0.5 * (hi - lo);
  rule.nodes = (rule.nodes.array() * len + mid).matrix();
  rule.weights *= len;
  return rule;
}

}  // namespace monoeit
