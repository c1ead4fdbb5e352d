#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "monoeit/detail/multiprecision.hpp"
#include "monoeit/geometry.hpp"
#include "monoeit/spectral_matrix.hpp"

namespace monoeit {

/// Eigenvalues lambda_n of the ND map for the concentric ball B_{0,r} with
/// conductivity 1 + beta inside:
///   lambda_n = (2 + beta(1 - r^{2n})) / (2 + beta(1 + r^{2n})) * 1/n,
/// returned for n = 1..order (lambda_{-n} = lambda_n). Requires beta > -1
/// and r in (0,1).
Eigen::VectorXd concentric_eigenvalues(double beta, double r, int order);

/// ND matrix of the unit background: diag(1/|n|).
SpectralMatrix background_nd(int order);

/// Exact integer coefficients of the polynomials (H_rho)_{n,m} in rho,
/// for n = 1..rows, m = 1..cols. Entry (n,m) has terms
///   k = max(n-m,0)..n  with coefficient
///   (-1)^{n-k} binom(k+m-1, k+m-n) binom(n, k)  at power rho^{2k+m-n}.
/// Independent of the transformation parameter; build once and reuse.
class HPolyTable {
 public:
  HPolyTable() = default;
  static HPolyTable build(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::span<const detail::BigInt> coefficients(int n, int m) const;

  /// Power of rho carried by the first (k = max(n-m,0)) term: |m - n|.
  static int low_power(int n, int m) { return m >= n ? m - n : n - m; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<detail::BigInt>> entries_;
};

/// Coefficients of a single (n, m) entry, k = max(n-m,0)..n.
std::vector<detail::BigInt> h_entry_coefficients(int n, int m);

/// Real matrix (H_rho)_{n,m} for n = 1..rows, m = 1..cols, each polynomial
/// evaluated in extended precision and rounded to double. The requested
/// precision acts as a floor; it is raised per entry to cover the exact
/// coefficient magnitudes, so the alternating sums do not cancel below
/// the working precision.
Eigen::MatrixXd evaluate_h_rho(int rows, int cols, double rho,
                               int precision_bits,
                               const HPolyTable* table = nullptr);

/// H_a^+ block of order `order` via the polynomial formula:
/// (H_a)_{n,m} = e^{i(m-n)zeta} (H_rho)_{n,m}.
HalfBlock assemble_h_plus(Complex a, int order, int precision_bits = 256,
                          const HPolyTable* table = nullptr);

/// Same block through Gauss-Legendre quadrature of the boundary inner
/// products; the independent cross-check for the polynomial path. Pass
/// quadrature_points <= 0 for the default 8 * order.
HalfBlock assemble_h_quadrature(Complex a, int order,
                                int quadrature_points = 0);

/// Max-norm deviation of the central n x n block of H+ * H+ from the
/// identity; certifies that the assembly order suffices for this |a|.
double involution_residual(const HalfBlock& h, int order);

/// The two real H_rho strips needed to assemble the central block of
/// (H_a)^* D H_a and to evaluate the involution residual:
///   cols(k, n) = (H_rho)_{k,n}, k = 1..assembly_order, n = 1..order
///   rows(n, k) = (H_rho)_{n,k}
struct HRhoBlocks {
  int assembly_order = 0;
  int order = 0;
  Eigen::MatrixXd cols;
  Eigen::MatrixXd rows;

  double involution_residual() const;
};

/// Memoizes HRhoBlocks per quantized rho (the phase of a separates out, so
/// rho alone keys the expensive part). Optionally persists blocks under a
/// cache directory. Thread-safe.
class HBlockCache {
 public:
  HBlockCache(const TruncationPlan& plan, std::filesystem::path dir = {});

  const HRhoBlocks& get(double rho);
  const TruncationPlan& plan() const { return plan_; }
  std::size_t size() const;

 private:
  HRhoBlocks compute(double rho) const;
  std::filesystem::path cache_file(long long key) const;

  TruncationPlan plan_;
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::unordered_map<long long, std::unique_ptr<HRhoBlocks>> blocks_;
  HPolyTable col_table_;  // rows = assembly order, cols = data order
  HPolyTable row_table_;  // transposed strip
};

struct NdInfo {
  double involution_residual = 0.0;
  bool certified = true;
};

/// ND matrix of gamma = 1 + beta chi_B for a ball B, assembled through the
/// factorization A = (H_a)^* D H_a at the assembly order and restricted to
/// the central 2N x 2N block. Hermitian, centrohermitian, block diagonal,
/// positive definite for beta > -1.
SpectralMatrix nd_ball(const Ball& ball, double beta,
                       const TruncationPlan& plan,
                       HBlockCache* cache = nullptr, NdInfo* info = nullptr);

/// Matrix of the Frechet derivative R'(1)[chi_B]:
///   A'_{n,m} = -e^{i(m-n)zeta} sum_k binom(m-1,k) binom(n-1,k)/(k+1)
///              c^{m+n-2k-2} R^{2k+2},  n, m > 0,
/// completed by the Hermitian and centrohermitian structure. Negative
/// semi-definite.
SpectralMatrix frechet_ball(const Ball& ball, int order);

}  // namespace monoeit
