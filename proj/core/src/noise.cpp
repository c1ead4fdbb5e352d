#include "monoeit/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "monoeit/geometry.hpp"

namespace monoeit {

namespace {

// Box-Muller on mt19937_64 keeps realizations stable across standard
// library implementations.
class GaussianDraw {
 public:
  explicit GaussianDraw(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return mag * std::cos(kTwoPi * u2);
  }

 private:
  double uniform() {
    return (rng_() >> 11) * 0x1.0p-53;  // [0, 1)
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

double operator_norm(const SpectralMatrix& m) {
  const double scale = std::max(1.0, m.entries.cwiseAbs().maxCoeff());
  if (hermitian_defect(m) > 1e-10 * scale) {
    throw std::invalid_argument("operator_norm: matrix is not Hermitian");
  }
  if (m.entries.size() == 0) return 0.0;
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return ev.cwiseAbs().maxCoeff();
}

SpectralMatrix make_noise(const SpectralMatrix& datum, const NoiseSpec& spec) {
  if (spec.delta < 0.0) {
    throw std::invalid_argument("make_noise: delta must be >= 0");
  }
  const int n2 = static_cast<int>(datum.entries.rows());
  SpectralMatrix noise(datum.order);
  if (spec.delta == 0.0) {
    noise.hermitian = noise.centrohermitian = true;
    noise.block_diagonal = datum.block_diagonal;
    return noise;
  }
  if (datum.entries.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("make_noise: zero datum with delta > 0");
  }

  GaussianDraw draw(spec.seed);
  Eigen::MatrixXcd e1(n2, n2);
  for (int i = 0; i < n2; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double re = draw.next();
      const double im = draw.next();
      e1(i, j) = Complex{re, im};
    }
  }
  Eigen::MatrixXcd e2 = 0.5 * (e1 + e1.adjoint());
  Eigen::MatrixXcd e3 = 0.5 * (e2 + e2.conjugate().reverse());
  noise.entries = e3.cwiseProduct(datum.entries);
  noise.hermitian = noise.centrohermitian = true;
  noise.block_diagonal = datum.block_diagonal;

  const double norm = operator_norm(noise);
  if (norm == 0.0) {
    throw std::runtime_error("make_noise: degenerate noise realization");
  }
  noise.entries *= spec.delta / norm;
  return noise;
}

}  // namespace monoeit
