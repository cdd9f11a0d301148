#include "twistvol/qseries.hpp"

#include <cmath>
#include <numbers>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Accumulates log-magnitudes and phases in extended precision so that a
// product of ~N factors loses no more than a few ulps of double.
struct LogAccumulator {
  long double log_mag = 0.0L;
  long double phase = 0.0L;
  bool zero = false;

  void multiply(const LogComplex& f) {
    if (f.is_zero()) {
      zero = true;
      return;
    }
    log_mag += f.log_mag();
    phase += f.phase();
  }
  void multiply_real(long double positive) { log_mag += std::log(positive); }
  void divide(const LogComplex& f) {
    log_mag -= f.log_mag();
    phase -= f.phase();
  }
  LogComplex result() const {
    if (zero) return LogComplex::zero();
    return {static_cast<double>(log_mag),
            static_cast<double>(std::remainder(phase, 2.0L * kPi))};
  }
};

}  // namespace

RootOfUnity::RootOfUnity(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw DomainError("root of unity modulus must be >= 1");
}

double RootOfUnity::phase_angle() const noexcept {
  return static_cast<double>(2.0L * kPi / static_cast<long double>(modulus_));
}

std::complex<double> RootOfUnity::power(std::int64_t k) const {
  const std::int64_t r = reduce(k);
  if (r == 0) return {1.0, 0.0};
  // Reduce to (-N/2, N/2] so the angle handed to sin/cos is at most pi.
  const std::int64_t s = 2 * r > modulus_ ? r - modulus_ : r;
  const long double theta = 2.0L * kPi * static_cast<long double>(s) / static_cast<long double>(modulus_);
  return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

LogComplex RootOfUnity::one_minus_power(std::int64_t k) const {
  const std::int64_t r = reduce(k);
  if (r == 0) return LogComplex::zero();
  // 1 - e^{i t} = 2 sin(t/2) e^{i (t - pi)/2}, t = 2 pi r / N in (0, 2 pi).
  const long double half = kPi * static_cast<long double>(r) / static_cast<long double>(modulus_);
  return {static_cast<double>(std::log(2.0L * std::sin(half))),
          static_cast<double>(half - kPi / 2.0L)};
}

LogComplex q_pochhammer(const RootOfUnity& ru, QPower x, std::int64_t n) {
  if (n < 0) throw DomainError("q_pochhammer: n must be nonnegative");
  LogAccumulator acc;
  for (std::int64_t k = 0; k < n && !acc.zero; ++k) acc.multiply(ru.one_minus_power(x.exponent + k));
  return acc.result();
}

LogComplex q_pochhammer(const RootOfUnity& ru, std::complex<double> x, std::int64_t n) {
  if (n < 0) throw DomainError("q_pochhammer: n must be nonnegative");
  LogAccumulator acc;
  for (std::int64_t k = 0; k < n && !acc.zero; ++k)
    acc.multiply(LogComplex::from_rect(1.0 - x * ru.power(k)));
  return acc.result();
}

LogComplex q_binomial(const RootOfUnity& ru, std::int64_t top, std::int64_t bot) {
  if (top < 0 || bot < 0) throw DomainError("q_binomial: arguments must be nonnegative");
  if (bot > top) return LogComplex::zero();
  const std::int64_t n = ru.modulus();
  // [top; bot] = prod_{k=1}^{bot} (1 - q^{top-bot+k}) / (1 - q^k). A factor
  // 1 - q^{jN} vanishes; in the limit q -> root the vanishing factors of
  // numerator and denominator contribute j / j'.
  std::int64_t zeros = 0;
  LogAccumulator acc;
  for (std::int64_t k = 1; k <= bot; ++k) {
    const std::int64_t up = top - bot + k;
    if (up % n == 0) {
      ++zeros;
      acc.multiply_real(static_cast<long double>(up / n));
    } else {
      acc.multiply(ru.one_minus_power(up));
    }
    if (k % n == 0) {
      --zeros;
      acc.multiply_real(1.0L / static_cast<long double>(k / n));
    } else {
      acc.divide(ru.one_minus_power(k));
    }
  }
  if (zeros > 0) return LogComplex::zero();
  return acc.result();
}

double q_binomial_magnitude_bound(const RootOfUnity& ru, std::int64_t top) {
  if (top < 0 || top > ru.modulus() - 1)
    throw DomainError("q_binomial_magnitude_bound: requires 0 <= top <= N-1");
  return std::ldexp(1.0, static_cast<int>(top));
}

PochhammerTable::PochhammerTable(const RootOfUnity& ru) : ru_(ru) {
  const auto n = static_cast<std::size_t>(ru.modulus());
  log_mag_.resize(n);
  phase_.resize(n);
  long double mag = 0.0L;
  long double phase = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    log_mag_[k] = static_cast<double>(mag);
    phase_[k] = static_cast<double>(std::remainder(phase, 2.0L * kPi));
    if (k + 1 < n) {
      const LogComplex f = ru.one_minus_power(static_cast<std::int64_t>(k + 1));
      mag += f.log_mag();
      phase += f.phase();
    }
  }
}

LogComplex PochhammerTable::pochhammer(std::int64_t n) const {
  if (n < 0) throw DomainError("pochhammer: n must be nonnegative");
  if (n >= ru_.modulus()) return LogComplex::zero();
  const auto i = static_cast<std::size_t>(n);
  return {log_mag_[i], phase_[i]};
}

LogComplex PochhammerTable::bracket(std::int64_t top, std::int64_t bot) const {
  if (top < 0 || bot < 0) throw DomainError("bracket: arguments must be nonnegative");
  if (bot > top) return LogComplex::zero();
  if (top >= ru_.modulus()) return q_binomial(ru_, top, bot);
  const auto t = static_cast<std::size_t>(top);
  const auto b = static_cast<std::size_t>(bot);
  const auto r = static_cast<std::size_t>(top - bot);
  return {log_mag_[t] - log_mag_[r] - log_mag_[b], phase_[t] - phase_[r] - phase_[b]};
}

}  // namespace twistvol
