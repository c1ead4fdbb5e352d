#include "monoeit/spectral_matrix.hpp"

#include <stdexcept>

namespace monoeit {

void TruncationPlan::validate() const {
  if (order < 1) throw std::invalid_argument("truncation: order must be >= 1");
  if (assembly_order < order) {
    throw std::invalid_argument("truncation: assembly_order must be >= order");
  }
  if (precision_bits < 64) {
    throw std::invalid_argument("truncation: precision_bits must be >= 64");
  }
}

double hermitian_defect(const SpectralMatrix& m) {
  return (m.entries - m.entries.adjoint()).cwiseAbs().maxCoeff();
}

double centrohermitian_defect(const SpectralMatrix& m) {
  // J conj(M) J reverses both index orders.
  const Eigen::MatrixXcd reflected = m.entries.conjugate().reverse();
  return (m.entries - reflected).cwiseAbs().maxCoeff();
}

double offblock_mass(const SpectralMatrix& m) {
  const int n = m.order;
  if (n == 0) return 0.0;
  const double sw = m.entries.block(n, 0, n, n).cwiseAbs().maxCoeff();
  const double ne = m.entries.block(0, n, n, n).cwiseAbs().maxCoeff();
  return std::max(sw, ne);
}

SpectralMatrix hermitian_part(const SpectralMatrix& m) {
  SpectralMatrix out = m;
  out.entries = 0.5 * (m.entries + m.entries.adjoint());
  return out;
}

SpectralMatrix centrohermitian_part(const SpectralMatrix& m) {
  SpectralMatrix out = m;
  out.entries = 0.5 * (m.entries + m.entries.conjugate().reverse());
  return out;
}

SpectralMatrix expand_half_block(const HalfBlock& plus) {
  const int n = plus.order;
  SpectralMatrix full(n);
  full.entries.block(n, n, n, n) = plus.entries;
  full.entries.block(0, 0, n, n) = plus.entries.conjugate().reverse();
  full.centrohermitian = true;
  full.block_diagonal = true;
  return full;
}

SpectralMatrix extract_central(const SpectralMatrix& m, int n) {
  if (n > m.order) {
    throw std::invalid_argument("extract_central: order too large");
  }
  SpectralMatrix out(n);
  out.entries = m.entries.block(m.order - n, m.order - n, 2 * n, 2 * n);
  out.hermitian = m.hermitian;
  out.centrohermitian = m.centrohermitian;
  out.block_diagonal = m.block_diagonal;
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const SpectralMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  }
  return solver.eigenvalues();
}

double smallest_eigenvalue(const SpectralMatrix& m) {
  return hermitian_eigenvalues(m)(0);
}

}  // namespace monoeit
