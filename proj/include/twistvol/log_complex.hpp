#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace twistvol {

/// Wrap an angle into (-pi, pi].
inline double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phase, two_pi);  // [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

/// Complex number stored as (log|z|, arg z). Products of many factors of
/// magnitude up to 2 stay representable; zero is log_mag = -inf.
class LogComplex {
 public:
  constexpr LogComplex() = default;
  LogComplex(double log_mag, double phase)
      : log_mag_(log_mag), phase_(std::isinf(log_mag) && log_mag < 0 ? 0.0 : wrap_phase(phase)) {}

  static LogComplex one() { return {0.0, 0.0}; }
  static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }
  static LogComplex from_rect(std::complex<double> z) {
    if (z == std::complex<double>{}) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
  }
  /// Real number of either sign.
  static LogComplex from_real(double x) {
    if (x == 0.0) return zero();
    return {std::log(std::abs(x)), x < 0 ? std::numbers::pi : 0.0};
  }

  double log_mag() const noexcept { return log_mag_; }
  double phase() const noexcept { return phase_; }
  bool is_zero() const noexcept { return std::isinf(log_mag_) && log_mag_ < 0; }

  std::complex<double> to_rect() const { return scaled(0.0); }
  /// z * exp(-shift) in rectangular form.
  std::complex<double> scaled(double shift) const {
    if (is_zero()) return {};
    return std::polar(std::exp(log_mag_ - shift), phase_);
  }

  LogComplex conj() const { return is_zero() ? zero() : LogComplex{log_mag_, -phase_}; }
  LogComplex inverse() const { return {-log_mag_, -phase_}; }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return {a.log_mag_ + b.log_mag_, a.phase_ + b.phase_};
  }
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    return a * b.inverse();
  }
  LogComplex& operator*=(const LogComplex& b) { return *this = *this * b; }

 private:
  double log_mag_ = 0.0;
  double phase_ = 0.0;
};

}  // namespace twistvol
