#include "twistvol/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

using ld = long double;
using cld = std::complex<long double>;

constexpr ld kPi = std::numbers::pi_v<ld>;
constexpr ld kPi2Over6 = kPi * kPi / 6.0L;
constexpr std::size_t kTerms = 40;

ld zeta_even(int s) {
  if (s == 2) return kPi * kPi / 6.0L;
  if (s == 4) return kPi * kPi * kPi * kPi / 90.0L;
  ld sum = 0.0L;
  for (int m = 4000; m >= 1; --m) sum += std::pow(static_cast<ld>(m), static_cast<ld>(-s));
  return sum;
}

// zeta(2k) for k = 1..kTerms; index 0 unused.
const std::array<ld, kTerms + 1>& zeta_table() {
  static const std::array<ld, kTerms + 1> table = [] {
    std::array<ld, kTerms + 1> t{};
    for (std::size_t k = 1; k <= kTerms; ++k) t[k] = zeta_even(static_cast<int>(2 * k));
    return t;
  }();
  return table;
}

cld li2_series(cld z) {
  cld sum = 0.0L;
  cld power = 1.0L;
  for (int n = 1; n < 400; ++n) {
    power *= z;
    const cld term = power / static_cast<ld>(n) / static_cast<ld>(n);
    sum += term;
    if (std::abs(term) < 1e-21L) break;
  }
  return sum;
}

// Li2(z) = sum_{n>=0} B_n u^{n+1}/(n+1)!, u = -log(1-z), converging for
// |u| < 2 pi. Uses B_{2k}/(2k+1)! = (-1)^{k+1} 2 zeta(2k) / ((2k+1)(2 pi)^{2k}).
cld li2_bernoulli(cld z) {
  const cld u = -std::log(1.0L - z);
  const cld w = u / (2.0L * kPi);
  const cld w2 = w * w;
  const auto& zeta = zeta_table();
  cld sum = u - u * u / 4.0L;
  cld power = u;
  for (std::size_t k = 1; k <= kTerms; ++k) {
    power *= w2;
    const ld sign = (k % 2 == 1) ? 1.0L : -1.0L;
    const cld term = sign * 2.0L * zeta[k] / static_cast<ld>(2 * k + 1) * power;
    sum += term;
    if (std::abs(term) < 1e-21L * (1.0L + std::abs(sum))) break;
  }
  return sum;
}

// |z| <= 1.
cld li2_unit_disk(cld z) {
  if (std::abs(z) <= 0.5L) return li2_series(z);
  if (z.real() > 0.5L) {
    // Li2(z) + Li2(1-z) = pi^2/6 - log z log(1-z); |1-z| < 1, Re(1-z) < 1/2.
    const cld w = 1.0L - z;
    const cld rest = std::abs(w) <= 0.5L ? li2_series(w) : li2_bernoulli(w);
    return kPi2Over6 - std::log(z) * std::log(w) - rest;
  }
  return li2_bernoulli(z);
}

cld li2_principal(cld z) {
  if (z == cld(0.0L)) return 0.0L;
  if (z == cld(1.0L)) return kPi2Over6;
  if (std::abs(z) <= 1.0L) return li2_unit_disk(z);
  // Li2(z) + Li2(1/z) = -pi^2/6 - log^2(-z)/2 for z off [0, inf).
  const cld l = std::log(-z);
  return -kPi2Over6 - 0.5L * l * l - li2_unit_disk(1.0L / z);
}

}  // namespace

std::complex<double> li2(std::complex<double> z, Branch branch) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("li2: non-finite argument");
  if (z.imag() == 0.0 && z.real() > 1.0)
    throw DomainError("li2: argument lies on the branch cut [1, inf)");
  if (branch == Branch::paper_convention && z.imag() > 0.0)
    throw DomainError(
        "li2: with Arg(1-t) in [0, 2pi) the defining integral diverges at t = 0 for Im z > 0");
  const cld r = li2_principal(cld(z.real(), z.imag()));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

std::complex<double> li2_derivative(std::complex<double> z) {
  if (z == std::complex<double>{}) return {1.0, 0.0};
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw DomainError("li2_derivative: argument lies on the branch cut [1, inf)");
  const cld zl(z.real(), z.imag());
  cld r;
  if (std::abs(zl) < 1e-4L) {
    // -log(1-z)/z = sum z^n/(n+1)
    r = 1.0L + zl / 2.0L + zl * zl / 3.0L + zl * zl * zl / 4.0L;
  } else {
    r = -std::log(1.0L - zl) / zl;
  }
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double clausen(double theta) {
  if (!std::isfinite(theta)) throw DomainError("clausen: non-finite argument");
  ld t = std::fmod(static_cast<ld>(theta), 2.0L * kPi);
  if (t < 0.0L) t += 2.0L * kPi;
  ld sign = 1.0L;
  if (t > kPi) {
    t = 2.0L * kPi - t;
    sign = -1.0L;
  }
  if (t == 0.0L) return 0.0;
  // Cl2(t) = t - t log t + sum_k |B_2k| t^{2k+1} / (2k (2k+1)!)
  //        = t (1 - log t + sum_k 2 zeta(2k)/(2k (2k+1)) (t/2pi)^{2k}),
  // ratio at most 1/4 on [0, pi].
  const ld x = (t / (2.0L * kPi)) * (t / (2.0L * kPi));
  const auto& zeta = zeta_table();
  ld sum = 0.0L;
  ld power = 1.0L;
  for (std::size_t k = 1; k <= kTerms; ++k) {
    power *= x;
    const ld kk = static_cast<ld>(k);
    sum += 2.0L * zeta[k] / (2.0L * kk * (2.0L * kk + 1.0L)) * power;
  }
  return static_cast<double>(sign * t * (1.0L - std::log(t) + sum));
}

std::complex<double> li2_circle(std::int64_t n, std::int64_t modulus) {
  if (modulus < 1) throw DomainError("li2_circle: modulus must be >= 1");
  std::int64_t r = n % modulus;
  if (r < 0) r += modulus;
  if (r == 0) return {static_cast<double>(kPi2Over6), 0.0};
  const ld t = 2.0L * kPi * static_cast<ld>(r) / static_cast<ld>(modulus);
  const ld re = kPi2Over6 - kPi * t / 2.0L + t * t / 4.0L;
  return {static_cast<double>(re), clausen(static_cast<double>(t))};
}

}  // namespace twistvol
