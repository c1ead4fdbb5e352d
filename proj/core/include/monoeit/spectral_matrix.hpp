#pragma once

#include <Eigen/Dense>
#include <complex>

namespace monoeit {

/// Matrix representation in the Fourier basis f_n = e^{in theta}/sqrt(2 pi),
/// indices n, m in {-N,...,-1, 1,...,N} ordered negative-to-positive.
struct SpectralMatrix {
  int order = 0;  // N; matrix is 2N x 2N
  Eigen::MatrixXcd entries;
  bool hermitian = false;
  bool centrohermitian = false;
  bool block_diagonal = false;

  SpectralMatrix() = default;
  explicit SpectralMatrix(int n)
      : order(n), entries(Eigen::MatrixXcd::Zero(2 * n, 2 * n)) {}

  /// Row/column position of Fourier index n (n != 0, |n| <= order).
  int pos(int n) const { return n < 0 ? n + order : n + order - 1; }

  std::complex<double> operator()(int n, int m) const {
    return entries(pos(n), pos(m));
  }
};

/// Positive-index block (n, m = 1..order) of a centrohermitian
/// block-diagonal matrix; the negative block is implied by the structure.
struct HalfBlock {
  int order = 0;
  Eigen::MatrixXcd entries;  // (n-1, m-1) holds index (n, m)
};

/// Truncation orders: N is the data truncation, assembly_order the larger
/// order used when building H_a before extracting the central block.
struct TruncationPlan {
  int order = 16;
  int assembly_order = 200;
  int precision_bits = 256;
  double residual_tol = 1e-8;

  void validate() const;
};

double hermitian_defect(const SpectralMatrix& m);        // max |M - M^*|
double centrohermitian_defect(const SpectralMatrix& m);  // max |M - J conj(M) J|
double offblock_mass(const SpectralMatrix& m);  // max |entry| with sign(n) != sign(m)

/// (M + M^*)/2
SpectralMatrix hermitian_part(const SpectralMatrix& m);
/// (M + J conj(M) J)/2
SpectralMatrix centrohermitian_part(const SpectralMatrix& m);

/// Full matrix from the positive block: A = diag(J conj(A+) J, A+).
/// Satisfies the centrohermitian identity exactly.
SpectralMatrix expand_half_block(const HalfBlock& plus);

/// Central 2n x 2n sub-matrix (indices |k| <= n).
SpectralMatrix extract_central(const SpectralMatrix& m, int n);

/// Eigenvalues are real for Hermitian input; smallest first.
Eigen::VectorXd hermitian_eigenvalues(const SpectralMatrix& m);
double smallest_eigenvalue(const SpectralMatrix& m);

}  // namespace monoeit
