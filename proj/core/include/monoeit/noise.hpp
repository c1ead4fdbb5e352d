#pragma once

#include <cstdint>

#include "monoeit/spectral_matrix.hpp"

namespace monoeit {

struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

/// Operator norm of a Hermitian matrix: max |eigenvalue|. Rejects
/// non-Hermitian input.
double operator_norm(const SpectralMatrix& m);

/// Structured noise E^delta: complex standard-normal draws, symmetrized to
/// Hermitian and centrohermitian, multiplied entrywise with the datum, and
/// scaled to operator norm delta. Deterministic for a given seed.
SpectralMatrix make_noise(const SpectralMatrix& datum, const NoiseSpec& spec);

}  // namespace monoeit
