#include "monoeit/nd_spectral.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "monoeit/gauss.hpp"

namespace monoeit {

namespace {

using detail::BigFloat;
using detail::BigInt;

// Walks the exact coefficients of (H_rho)_{n,m}: starting value
//   c_{k0} = (-1)^{n-k0} binom(k0+m-1, k0+m-n) binom(n, k0),  k0 = max(n-m,0),
// then c_{k+1} = -c_k (k+m)(n-k) / ((k+m-n+1)(k+1)), all divisions exact.
template <class F>
void for_each_h_coefficient(int n, int m, F&& visit) {
  const int k0 = std::max(n - m, 0);
  BigInt c = BigInt::binomial(static_cast<unsigned long>(k0 + m - 1),
                              static_cast<unsigned long>(k0 + m - n));
  c.mul(BigInt::binomial(static_cast<unsigned long>(n),
                         static_cast<unsigned long>(k0)));
  if ((n - k0) % 2 != 0) c.negate();
  for (int k = k0;; ++k) {
    visit(static_cast<const BigInt&>(c));
    if (k == n) break;
    c.mul_ui(static_cast<unsigned long>(k + m));
    c.mul_ui(static_cast<unsigned long>(n - k));
    c.divexact_ui(static_cast<unsigned long>(k + m - n + 1));
    c.divexact_ui(static_cast<unsigned long>(k + 1));
    c.negate();
  }
}

// Working precision that keeps the alternating sums above the noise floor:
// coefficients are below 2^{2n+m}, powers of rho below 1.
int evaluation_bits(int rows, int cols, int floor_bits) {
  return std::max(floor_bits, 2 * rows + cols + 64);
}

double binomial_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

}  // namespace

Eigen::VectorXd concentric_eigenvalues(double beta, double r, int order) {
  if (!(beta > -1.0)) {
    throw std::invalid_argument("concentric_eigenvalues: beta must be > -1");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw std::invalid_argument("concentric_eigenvalues: r must be in (0,1)");
  }
  if (order < 1) {
    throw std::invalid_argument("concentric_eigenvalues: order must be >= 1");
  }
  Eigen::VectorXd lambda(order);
  const double r2 = r * r;
  double r2n = 1.0;
  for (int n = 1; n <= order; ++n) {
    r2n *= r2;  // r^{2n}
    lambda(n - 1) =
        (2.0 + beta * (1.0 - r2n)) / (2.0 + beta * (1.0 + r2n)) / n;
  }
  return lambda;
}

SpectralMatrix background_nd(int order) {
  if (order < 1) throw std::invalid_argument("background_nd: order >= 1");
  SpectralMatrix bg(order);
  for (int n = 1; n <= order; ++n) {
    const double v = 1.0 / n;
    bg.entries(bg.pos(n), bg.pos(n)) = v;
    bg.entries(bg.pos(-n), bg.pos(-n)) = v;
  }
  bg.hermitian = bg.centrohermitian = bg.block_diagonal = true;
  return bg;
}

HPolyTable HPolyTable::build(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("HPolyTable: orders must be >= 1");
  }
  HPolyTable table;
  table.rows_ = rows;
  table.cols_ = cols;
  table.entries_.resize(static_cast<std::size_t>(rows) * cols);
  for (int n = 1; n <= rows; ++n) {
    for (int m = 1; m <= cols; ++m) {
      auto& slot = table.entries_[static_cast<std::size_t>(n - 1) * cols +
                                  (m - 1)];
      slot.reserve(std::min(n, m) + 1);
      for_each_h_coefficient(n, m,
                             [&slot](const BigInt& c) { slot.push_back(c); });
    }
  }
  return table;
}

std::span<const BigInt> HPolyTable::coefficients(int n, int m) const {
  if (n < 1 || n > rows_ || m < 1 || m > cols_) {
    throw std::out_of_range("HPolyTable: index outside table");
  }
  const auto& slot =
      entries_[static_cast<std::size_t>(n - 1) * cols_ + (m - 1)];
  return {slot.data(), slot.size()};
}

std::vector<BigInt> h_entry_coefficients(int n, int m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("h_entry_coefficients: indices must be >= 1");
  }
  std::vector<BigInt> out;
  out.reserve(std::min(n, m) + 1);
  for_each_h_coefficient(n, m, [&out](const BigInt& c) { out.push_back(c); });
  return out;
}

Eigen::MatrixXd evaluate_h_rho(int rows, int cols, double rho,
                               int precision_bits, const HPolyTable* table) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("evaluate_h_rho: orders must be >= 1");
  }
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("evaluate_h_rho: rho must be in [0,1)");
  }
  if (table && (table->rows() < rows || table->cols() < cols)) {
    throw std::invalid_argument("evaluate_h_rho: table too small");
  }
  const int bits = evaluation_bits(rows, cols, precision_bits);

  // Powers rho^p for every power appearing in the polynomials.
  const int max_power = rows + cols;
  std::vector<BigFloat> pows;
  pows.reserve(max_power + 1);
  pows.emplace_back(bits);
  pows.back().set(1.0);
  BigFloat rho_mp(bits);
  rho_mp.set(rho);
  for (int p = 1; p <= max_power; ++p) {
    pows.emplace_back(bits);
    pows.back().mul(pows[p - 1], rho_mp);
  }

  Eigen::MatrixXd out(rows, cols);
  BigFloat acc(bits), scratch(bits);
  std::vector<BigInt> local;
  for (int n = 1; n <= rows; ++n) {
    for (int m = 1; m <= cols; ++m) {
      std::span<const BigInt> coeffs;
      if (table) {
        coeffs = table->coefficients(n, m);
      } else {
        local.clear();
        for_each_h_coefficient(
            n, m, [&local](const BigInt& c) { local.push_back(c); });
        coeffs = {local.data(), local.size()};
      }
      acc.set_zero();
      int p = HPolyTable::low_power(n, m);
      for (const BigInt& c : coeffs) {
        acc.add_mul_z(pows[p], c, scratch);
        p += 2;
      }
      out(n - 1, m - 1) = acc.to_double();
    }
  }
  return out;
}

HalfBlock assemble_h_plus(Complex a, int order, int precision_bits,
                          const HPolyTable* table) {
  const double rho = std::abs(a);
  if (!(rho < 1.0)) {
    throw std::invalid_argument("assemble_h_plus: |a| must be < 1");
  }
  const Eigen::MatrixXd real_block =
      evaluate_h_rho(order, order, rho, precision_bits, table);
  const double zeta = std::arg(a);
  HalfBlock h;
  h.order = order;
  h.entries.resize(order, order);
  std::vector<Complex> phase(2 * order - 1);
  for (int d = -(order - 1); d <= order - 1; ++d) {
    phase[d + order - 1] = std::polar(1.0, d * zeta);
  }
  for (int n = 1; n <= order; ++n) {
    for (int m = 1; m <= order; ++m) {
      h.entries(n - 1, m - 1) =
          phase[m - n + order - 1] * real_block(n - 1, m - 1);
    }
  }
  return h;
}

HalfBlock assemble_h_quadrature(Complex a, int order, int quadrature_points) {
  const double rho = std::abs(a);
  if (!(rho < 1.0)) {
    throw std::invalid_argument("assemble_h_quadrature: |a| must be < 1");
  }
  if (rho > 0.95) {
    std::cerr << "assemble_h_quadrature: |a| = " << rho
              << " > 0.95, integrand concentrates and accuracy degrades\n";
  }
  const int q = quadrature_points > 0 ? quadrature_points : 8 * order;
  const GaussLegendre rule = gauss_legendre(q, 0.0, kTwoPi);

  // (H_a)_{n,m} = (1/2pi) sum_q w_q e^{i(m theta_q - n psi_a(theta_q))}
  Eigen::MatrixXcd left(order, q);   // n rows
  Eigen::MatrixXcd right(q, order);  // m cols
  for (int j = 0; j < q; ++j) {
    const double theta = rule.nodes(j);
    const double psi = boundary_angle_map(a, theta);
    const double w = rule.weights(j) / kTwoPi;
    for (int n = 1; n <= order; ++n) {
      left(n - 1, j) = w * std::polar(1.0, -n * psi);
    }
    for (int m = 1; m <= order; ++m) {
      right(j, m - 1) = std::polar(1.0, m * theta);
    }
  }
  HalfBlock h;
  h.order = order;
  h.entries = left * right;
  return h;
}

double involution_residual(const HalfBlock& h, int order) {
  if (order > h.order) {
    throw std::invalid_argument("involution_residual: order exceeds block");
  }
  const Eigen::MatrixXcd product = h.entries * h.entries;
  return (product.topLeftCorner(order, order) -
          Eigen::MatrixXcd::Identity(order, order))
      .cwiseAbs()
      .maxCoeff();
}

double HRhoBlocks::involution_residual() const {
  return (rows * cols - Eigen::MatrixXd::Identity(order, order))
      .cwiseAbs()
      .maxCoeff();
}

HBlockCache::HBlockCache(const TruncationPlan& plan, std::filesystem::path dir)
    : plan_(plan), dir_(std::move(dir)) {
  plan_.validate();
  col_table_ = HPolyTable::build(plan_.assembly_order, plan_.order);
  row_table_ = HPolyTable::build(plan_.order, plan_.assembly_order);
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::size_t HBlockCache::size() const {
  std::lock_guard lock(mutex_);
  return blocks_.size();
}

std::filesystem::path HBlockCache::cache_file(long long key) const {
  return dir_ / ("h" + std::to_string(plan_.assembly_order) + "_" +
                 std::to_string(plan_.order) + "_" +
                 std::to_string(plan_.precision_bits) + "_" +
                 std::to_string(key) + ".bin");
}

HRhoBlocks HBlockCache::compute(double rho) const {
  HRhoBlocks b;
  b.assembly_order = plan_.assembly_order;
  b.order = plan_.order;
  b.cols = evaluate_h_rho(plan_.assembly_order, plan_.order, rho,
                          plan_.precision_bits, &col_table_);
  b.rows = evaluate_h_rho(plan_.order, plan_.assembly_order, rho,
                          plan_.precision_bits, &row_table_);
  return b;
}

const HRhoBlocks& HBlockCache::get(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("HBlockCache: rho must be in [0,1)");
  }
  const long long key = llround(rho * 1e12);
  {
    std::lock_guard lock(mutex_);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return *it->second;
  }

  auto block = std::make_unique<HRhoBlocks>();
  bool loaded = false;
  if (!dir_.empty()) {
    std::ifstream in(cache_file(key), std::ios::binary);
    if (in) {
      std::int32_t big = 0, small = 0;
      in.read(reinterpret_cast<char*>(&big), sizeof big);
      in.read(reinterpret_cast<char*>(&small), sizeof small);
      if (in && big == plan_.assembly_order && small == plan_.order) {
        block->assembly_order = big;
        block->order = small;
        block->cols.resize(big, small);
        block->rows.resize(small, big);
        in.read(reinterpret_cast<char*>(block->cols.data()),
                static_cast<std::streamsize>(sizeof(double)) * big * small);
        in.read(reinterpret_cast<char*>(block->rows.data()),
                static_cast<std::streamsize>(sizeof(double)) * big * small);
        loaded = static_cast<bool>(in);
      }
    }
  }
  if (!loaded) {
    *block = compute(rho);
    if (!dir_.empty()) {
      std::ofstream out(cache_file(key), std::ios::binary);
      const std::int32_t big = plan_.assembly_order;
      const std::int32_t small = plan_.order;
      out.write(reinterpret_cast<const char*>(&big), sizeof big);
      out.write(reinterpret_cast<const char*>(&small), sizeof small);
      out.write(reinterpret_cast<const char*>(block->cols.data()),
                static_cast<std::streamsize>(sizeof(double)) * big * small);
      out.write(reinterpret_cast<const char*>(block->rows.data()),
                static_cast<std::streamsize>(sizeof(double)) * big * small);
    }
  }

  std::lock_guard lock(mutex_);
  auto [it, inserted] = blocks_.try_emplace(key, std::move(block));
  (void)inserted;
  return *it->second;
}

SpectralMatrix nd_ball(const Ball& ball, double beta,
                       const TruncationPlan& plan, HBlockCache* cache,
                       NdInfo* info) {
  plan.validate();
  validate_ball(ball, /*strict=*/true);
  if (!(beta > -1.0)) {
    throw std::invalid_argument("nd_ball: beta must be > -1");
  }
  const MobiusParams mp = ball_to_concentric(ball);
  const double rho = mp.rho();
  const double zeta = mp.zeta();

  const HRhoBlocks* blocks = nullptr;
  HRhoBlocks local;
  if (cache) {
    if (cache->plan().order != plan.order ||
        cache->plan().assembly_order != plan.assembly_order) {
      throw std::invalid_argument("nd_ball: cache plan mismatch");
    }
    blocks = &cache->get(rho);
  } else {
    local.assembly_order = plan.assembly_order;
    local.order = plan.order;
    local.cols = evaluate_h_rho(plan.assembly_order, plan.order, rho,
                                plan.precision_bits);
    local.rows = evaluate_h_rho(plan.order, plan.assembly_order, rho,
                                plan.precision_bits);
    blocks = &local;
  }

  const Eigen::VectorXd lambda =
      concentric_eigenvalues(beta, mp.r, plan.assembly_order);
  Eigen::MatrixXd s =
      blocks->cols.transpose() * lambda.asDiagonal() * blocks->cols;
  s = 0.5 * (s + s.transpose()).eval();

  const int n_data = plan.order;
  HalfBlock plus;
  plus.order = n_data;
  plus.entries.resize(n_data, n_data);
  for (int n = 1; n <= n_data; ++n) {
    for (int m = 1; m <= n_data; ++m) {
      plus.entries(n - 1, m - 1) =
          std::polar(1.0, (m - n) * zeta) * s(n - 1, m - 1);
    }
  }
  SpectralMatrix out = expand_half_block(plus);
  out.hermitian = true;

  const double residual = blocks->involution_residual();
  if (info) {
    info->involution_residual = residual;
    info->certified = residual <= plan.residual_tol;
  }
  return out;
}

SpectralMatrix frechet_ball(const Ball& ball, int order) {
  validate_ball(ball, /*strict=*/true);
  if (order < 1) throw std::invalid_argument("frechet_ball: order >= 1");
  const double c = std::abs(ball.center);
  const double zeta = std::arg(ball.center);
  const double radius = ball.radius;

  std::vector<double> c_pow(2 * order - 1);
  c_pow[0] = 1.0;
  for (std::size_t j = 1; j < c_pow.size(); ++j) c_pow[j] = c_pow[j - 1] * c;
  std::vector<double> r_pow(order + 1);  // R^{2k+2} at slot k
  r_pow[0] = radius * radius;
  for (int k = 1; k <= order; ++k) r_pow[k] = r_pow[k - 1] * radius * radius;

  HalfBlock plus;
  plus.order = order;
  plus.entries.resize(order, order);
  for (int n = 1; n <= order; ++n) {
    for (int m = 1; m <= order; ++m) {
      double sum = 0.0;
      const int kmax = std::min(n, m) - 1;
      for (int k = 0; k <= kmax; ++k) {
        sum += binomial_double(m - 1, k) * binomial_double(n - 1, k) /
               (k + 1) * c_pow[m + n - 2 * k - 2] * r_pow[k];
      }
      plus.entries(n - 1, m - 1) = -std::polar(1.0, (m - n) * zeta) * sum;
    }
  }
  SpectralMatrix out = expand_half_block(plus);
  out.hermitian = true;
  return out;
}

}  // namespace monoeit
