#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cstddef>
#include <string>
#include <utility>

namespace monoeit::detail {

/// Exact arbitrary-precision integer (thin RAII wrapper over GMP mpz).
class BigInt {
 public:
  BigInt() { mpz_init(v_); }
  explicit BigInt(long value) { mpz_init_set_si(v_, value); }
  BigInt(const BigInt& other) { mpz_init_set(v_, other.v_); }
  BigInt(BigInt&& other) noexcept {
    mpz_init(v_);
    mpz_swap(v_, other.v_);
  }
  BigInt& operator=(const BigInt& other) {
    if (this != &other) mpz_set(v_, other.v_);
    return *this;
  }
  BigInt& operator=(BigInt&& other) noexcept {
    mpz_swap(v_, other.v_);
    return *this;
  }
  ~BigInt() { mpz_clear(v_); }

  static BigInt binomial(unsigned long n, unsigned long k) {
    BigInt b;
    mpz_bin_uiui(b.v_, n, k);
    return b;
  }

  void mul(const BigInt& other) { mpz_mul(v_, v_, other.v_); }
  void mul_ui(unsigned long u) { mpz_mul_ui(v_, v_, u); }
  void divexact_ui(unsigned long u) { mpz_divexact_ui(v_, v_, u); }
  void negate() { mpz_neg(v_, v_); }

  double to_double() const { return mpz_get_d(v_); }
  std::size_t bit_size() const { return mpz_sizeinbase(v_, 2); }
  int sign() const { return mpz_sgn(v_); }
  std::string to_string() const {
    char* s = mpz_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, out.size() + 1);
    return out;
  }

  const mpz_t& raw() const { return v_; }

 private:
  mpz_t v_;
};

/// Extended-precision float (thin RAII wrapper over MPFR), round-to-nearest.
class BigFloat {
 public:
  explicit BigFloat(int precision_bits) { mpfr_init2(v_, precision_bits); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  ~BigFloat() { mpfr_clear(v_); }

  void set_precision(int bits) { mpfr_set_prec(v_, bits); }  // clears value
  void set(double x) { mpfr_set_d(v_, x, MPFR_RNDN); }
  void set_zero() { mpfr_set_zero(v_, 1); }
  void set(const BigFloat& x) { mpfr_set(v_, x.v_, MPFR_RNDN); }

  /// v = a * b
  void mul(const BigFloat& a, const BigFloat& b) {
    mpfr_mul(v_, a.v_, b.v_, MPFR_RNDN);
  }
  /// v += a * z
  void add_mul_z(const BigFloat& a, const BigInt& z, BigFloat& scratch) {
    mpfr_mul_z(scratch.v_, a.v_, z.raw(), MPFR_RNDN);
    mpfr_add(v_, v_, scratch.v_, MPFR_RNDN);
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

}  // namespace monoeit::detail
