#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "monoeit/nd_spectral.hpp"
#include "monoeit/noise.hpp"
#include "monoeit/tiling.hpp"

namespace monoeit {

enum class Method { linear, nonlinear };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Admissible test contrasts from the prior lower bound 0 < beta_lower
/// <= kappa: the non-linear test uses beta_lower itself, the linear test
/// beta_lower / (1 + beta_lower).
struct BetaValues {
  double nonlinear = 0.0;
  double linear = 0.0;
};
BetaValues beta_values(double beta_lower);

/// alpha = max(0, -mu * smallest eigenvalue of (R1 - Rdelta)).
double reg_alpha(const SpectralMatrix& background, const SpectralMatrix& data,
                 double mu);

/// Acceptance margin for the sign test. The monotonicity tests are stated
/// with >= 0, and balls inside the inclusion sit exactly at 0 in the
/// high-order modes, far below what floating point can sign; eigenvalues
/// within this band of zero count as non-negative.
inline constexpr double kAcceptanceMargin = 1e-12;

/// Smallest eigenvalue of R(1 + beta chi_B) + alpha Id - Rdelta; the ball
/// is accepted when it is >= 0.
double test_cell_nonlinear(const Ball& ball, double beta,
                           const SpectralMatrix& data, double alpha,
                           const TruncationPlan& plan,
                           HBlockCache* cache = nullptr,
                           NdInfo* info = nullptr);

/// Smallest eigenvalue of R(1) + beta R'(1)chi_B + alpha Id - Rdelta.
double test_cell_linear(const Ball& ball, double beta,
                        const SpectralMatrix& background,
                        const SpectralMatrix& data, double alpha, int order);

struct ReconConfig {
  Method method = Method::nonlinear;
  double beta_lower = 4.0;
  double mu = 1.0;
  TruncationPlan plan;
  double hex_radius = 0.025;
  NoiseSpec noise;  // recorded into the result metadata
  int threads = 0;  // 0 = hardware concurrency
};

struct CellResult {
  int index = 0;
  Complex center;
  double min_eigenvalue = 0.0;
  bool accepted = false;
};

struct ReconResult {
  Method method = Method::nonlinear;
  double beta = 0.0;
  double alpha = 0.0;
  double mu = 1.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double hex_radius = 0.0;
  int order = 0;
  int assembly_order = 0;
  double max_involution_residual = 0.0;
  double runtime_ms = 0.0;
  std::vector<CellResult> cells;

  std::vector<int> accepted_indices() const;
};

/// Full monotonicity reconstruction over the hexagonal tiling: one alpha
/// from the regularization rule, then the per-cell eigenvalue test for the
/// configured method. Cells are independent and evaluated concurrently;
/// the result does not depend on the schedule.
ReconResult reconstruct(const ReconConfig& config, const SpectralMatrix& data,
                        HBlockCache* cache = nullptr);

}  // namespace monoeit
