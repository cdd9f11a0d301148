#pragma once

#include <complex>
#include <cstdint>

namespace twistvol {

/// Which logarithm the continuation -int_0^z log(1-t)/t dt uses.
///
/// principal: Arg(1-t) in (-pi, pi]; Li2 is analytic on C \ [1, inf).
/// paper_convention: Arg(1-t) in [0, 2pi). Along the segment from 0 to z
/// this coincides with the principal branch when Im z <= 0; for Im z > 0 the
/// integrand picks up 2 pi i / t and the integral diverges at t = 0, which
/// li2 reports as a DomainError.
enum class Branch { principal, paper_convention };

struct DilogValue {
  std::complex<double> value;
  Branch branch = Branch::principal;
};

/// Dilogarithm on the cut plane. Li2(1) = pi^2/6 is accepted as the boundary
/// value; real z > 1 throws DomainError.
std::complex<double> li2(std::complex<double> z, Branch branch = Branch::principal);

inline DilogValue li2_value(std::complex<double> z, Branch branch = Branch::principal) {
  return {li2(z, branch), branch};
}

/// d/dz Li2(z) = -log(1-z)/z (principal branch), with the value 1 at z = 0.
std::complex<double> li2_derivative(std::complex<double> z);

/// Li2(exp(2 pi i n / N)). Real part from the closed form
/// pi^2/6 - pi t/2 + t^2/4 with t = 2 pi (n mod N)/N, imaginary part Cl2(t).
std::complex<double> li2_circle(std::int64_t n, std::int64_t modulus);

/// Clausen function Cl2(theta) = sum_k sin(k theta)/k^2 = Im Li2(e^{i theta}).
double clausen(double theta);

}  // namespace twistvol
