#pragma once

#include <complex>

namespace monoeit {

using Complex = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Open disk B_{C,R} in the unit disk, |C| + R <= 1.
struct Ball {
  Complex center{0.0, 0.0};
  double radius = 0.0;
};

/// Disk automorphism parameter a = rho*e^{i*zeta} pairing B_{C,R} with
/// the concentric ball B_{0,r}.
struct MobiusParams {
  Complex a{0.0, 0.0};
  double r = 0.0;

  double rho() const { return std::abs(a); }
  double zeta() const { return std::arg(a); }
};

/// Throws std::invalid_argument unless 0 < R, |C| < 1 and |C| + R <= 1
/// (strict when `strict` is set).
void validate_ball(const Ball& ball, bool strict = false);

/// M_a(x) = (x - a)/(conj(a)x - 1). Involution of the closed unit disk.
Complex mobius_apply(Complex a, Complex x);

/// Unique (a, r) with M_a(B_{C,R}) = B_{0,r}. Requires R < 1 - |C|.
MobiusParams ball_to_concentric(const Ball& ball);

/// Inverse pairing: the ball B_{C,R} = M_a(B_{0,r}).
Ball concentric_to_ball(Complex a, double r);

/// Boundary angle map psi_a with e^{i psi_a(theta)} = M_a(e^{i theta}),
/// reduced to [0, 2*pi). The tan pole at theta - zeta = pi is handled by
/// a two-argument arctangent.
double boundary_angle_map(Complex a, double theta);

/// Boundary Jacobian (1 - rho^2)/|conj(a) e^{i theta} - 1|^2; averages
/// to 1 over the circle.
double boundary_jacobian(Complex a, double theta);

}  // namespace monoeit
