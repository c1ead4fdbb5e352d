#include "monoeit/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace monoeit {

void validate_ball(const Ball& ball, bool strict) {
  const double c = std::abs(ball.center);
  if (!(ball.radius > 0.0)) {
    throw std::invalid_argument("ball: radius must be positive");
  }
  if (!(c < 1.0)) {
    throw std::invalid_argument("ball: centre must lie in the unit disk");
  }
  if (strict ? !(c + ball.radius < 1.0) : !(c + ball.radius <= 1.0)) {
    throw std::invalid_argument("ball: not contained in the unit disk");
  }
}

Complex mobius_apply(Complex a, Complex x) {
  if (!(std::abs(a) < 1.0)) {
    throw std::invalid_argument("mobius_apply: |a| must be < 1");
  }
  return (x - a) / (std::conj(a) * x - 1.0);
}

MobiusParams ball_to_concentric(const Ball& ball) {
  const double c = std::abs(ball.center);
  const double R = ball.radius;
  if (!(R > 0.0) || !(c < 1.0)) {
    throw std::invalid_argument("ball_to_concentric: invalid ball");
  }
  if (!(R < 1.0 - c)) {
    throw std::invalid_argument(
        "ball_to_concentric: ball must be strictly inside the unit disk");
  }
  // r = (S - sqrt(S^2 - 4R^2)) / (2R) with S = 1 + R^2 - c^2, written in the
  // cancellation-free form; S^2 - 4R^2 = ((1-R)^2 - c^2)((1+R)^2 - c^2).
  const double s = 1.0 + R * R - c * c;
  const double disc = ((1.0 - R) - c) * ((1.0 - R) + c) *
                      ((1.0 + R) - c) * ((1.0 + R) + c);
  const double r = 2.0 * R / (s + std::sqrt(disc));
  const Complex a = ball.center / (1.0 - R * r);
  return MobiusParams{a, r};
}

Ball concentric_to_ball(Complex a, double r) {
  const double rho = std::abs(a);
  if (!(rho < 1.0)) {
    throw std::invalid_argument("concentric_to_ball: |a| must be < 1");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("concentric_to_ball: r must be in (0,1)");
  }
  const double denom = 1.0 - rho * rho * r * r;
  const double c = rho * (1.0 - r * r) / denom;
  const double R = r * (1.0 - rho * rho) / denom;
  const Complex phase = (rho > 0.0) ? a / rho : Complex{1.0, 0.0};
  return Ball{c * phase, R};
}

double boundary_angle_map(Complex a, double theta) {
  const double rho = std::abs(a);
  if (!(rho < 1.0)) {
    throw std::invalid_argument("boundary_angle_map: |a| must be < 1");
  }
  const double zeta = std::arg(a);
  const double u = 0.5 * (theta - zeta);
  const double v = std::atan2((1.0 + rho) * std::sin(u),
                              (1.0 - rho) * std::cos(u));
  double psi = std::fmod(M_PI + zeta + 2.0 * v, kTwoPi);
  if (psi < 0.0) psi += kTwoPi;
  return psi;
}

double boundary_jacobian(Complex a, double theta) {
  const double rho = std::abs(a);
  if (!(rho < 1.0)) {
    throw std::invalid_argument("boundary_jacobian: |a| must be < 1");
  }
  const Complex z = std::polar(1.0, theta);
  return (1.0 - rho * rho) / std::norm(std::conj(a) * z - 1.0);
}

}  // namespace monoeit
