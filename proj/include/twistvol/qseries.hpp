#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "twistvol/log_complex.hpp"

namespace twistvol {

/// q = exp(2 pi i / N). Only the modulus is stored; powers of q are formed
/// from exponents reduced mod N, so q^N = 1 holds structurally.
class RootOfUnity {
 public:
  explicit RootOfUnity(std::int64_t modulus);

  std::int64_t modulus() const noexcept { return modulus_; }
  double phase_angle() const noexcept;

  /// k mod N in [0, N).
  std::int64_t reduce(std::int64_t k) const noexcept {
    std::int64_t r = k % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  std::complex<double> power(std::int64_t k) const;
  /// 1 - q^k as a LogComplex; exactly zero when k = 0 mod N.
  LogComplex one_minus_power(std::int64_t k) const;

 private:
  std::int64_t modulus_;
};

/// x = q^exponent, for Pochhammer symbols whose vanishing factors must be
/// detected exactly.
struct QPower {
  std::int64_t exponent = 0;
};

/// (x)_n = prod_{k=0}^{n-1} (1 - x q^k) with x = q^e. Zero as soon as some
/// e + k = 0 mod N.
LogComplex q_pochhammer(const RootOfUnity& ru, QPower x, std::int64_t n);

/// (x)_n for an arbitrary x on the unit circle. A factor is zero only if it
/// evaluates to exactly zero in floating point; prefer the QPower overload.
LogComplex q_pochhammer(const RootOfUnity& ru, std::complex<double> x, std::int64_t n);

/// Gaussian binomial [top; bot] at q. Zero when bot > top. Vanishing factors
/// 1 - q^{jN} in numerator and denominator are paired off by their limit
/// ratio j/j', so the result is the value of the polynomial at q for any
/// arguments.
LogComplex q_binomial(const RootOfUnity& ru, std::int64_t top, std::int64_t bot);

/// 2^top, an upper bound on |[top; k]| for every k. Requires top <= N-1.
double q_binomial_magnitude_bound(const RootOfUnity& ru, std::int64_t top);

/// Prefix table of (q)_n for n = 0..N-1, built once per N. Immutable after
/// construction, so it can be shared across threads.
class PochhammerTable {
 public:
  explicit PochhammerTable(const RootOfUnity& ru);

  const RootOfUnity& root() const noexcept { return ru_; }
  /// (q)_n; zero for n >= N.
  LogComplex pochhammer(std::int64_t n) const;
  /// log|(q)_n| for 0 <= n < N.
  double log_abs(std::int64_t n) const { return log_mag_[static_cast<std::size_t>(n)]; }
  /// [top; bot] in O(1) for top <= N-1; falls back to q_binomial otherwise.
  LogComplex bracket(std::int64_t top, std::int64_t bot) const;
  /// log|[top; bot]| for 0 <= bot <= top <= N-1.
  double bracket_log_abs(std::int64_t top, std::int64_t bot) const {
    return log_abs(top) - log_abs(top - bot) - log_abs(bot);
  }

 private:
  RootOfUnity ru_;
  std::vector<double> log_mag_;
  std::vector<double> phase_;  // unwrapped running sum, reduced mod 2 pi
};

}  // namespace twistvol
