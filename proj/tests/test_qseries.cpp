#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/qseries.hpp"

using namespace twistvol;

TEST_CASE("LogComplex keeps the phase in (-pi, pi]") {
  LogComplex a(0.0, 3.0);
  LogComplex b(0.0, 3.0);
  auto c = a * b;
  CHECK(c.phase() > -std::numbers::pi);
  CHECK(c.phase() <= std::numbers::pi);
  CHECK(c.phase() == doctest::Approx(6.0 - 2.0 * std::numbers::pi));
  CHECK(wrap_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(LogComplex::zero().is_zero());
  CHECK(std::abs((LogComplex::from_rect({3.0, -4.0}) * LogComplex::from_rect({1.0, 2.0})).to_rect() -
                 std::complex<double>(11.0, 2.0)) < 1e-14);
}

TEST_CASE("roots of unity close structurally") {
  CHECK_THROWS_AS(RootOfUnity(0), DomainError);
  for (std::int64_t N : {1, 2, 7, 64, 1000}) {
    RootOfUnity ru(N);
    CHECK(ru.power(N) == std::complex<double>(1.0, 0.0));
    CHECK(ru.one_minus_power(N).is_zero());
    CHECK(ru.one_minus_power(-3 * N).is_zero());
    CHECK(std::abs(ru.power(-1) * ru.power(1) - 1.0) < 1e-15);
  }
}

TEST_CASE("q-Pochhammer small cases") {
  RootOfUnity ru(4);
  CHECK(q_pochhammer(ru, QPower{1}, 0).to_rect() == std::complex<double>(1.0, 0.0));
  auto p3 = q_pochhammer(ru, QPower{1}, 3).to_rect();
  CHECK(std::abs(p3 - std::complex<double>(4.0, 0.0)) < 1e-14);
  for (std::int64_t N : {1, 3, 10}) {
    RootOfUnity r(N);
    CHECK(q_pochhammer(r, QPower{1}, N).is_zero());
    CHECK(q_pochhammer(r, QPower{1}, N + 5).is_zero());
  }
}

TEST_CASE("q-Pochhammer agrees with direct products") {
  for (std::int64_t N : {5, 12, 31}) {
    RootOfUnity ru(N);
    auto q = oracle::q_of(N);
    for (std::int64_t e : {-N + 1, std::int64_t{-2}, std::int64_t{0}, std::int64_t{3}}) {
      std::complex<double> x = std::pow(q, static_cast<double>(e));
      std::complex<double> prod = 1.0;
      for (std::int64_t n = 0; n < N; ++n) {
        auto v = q_pochhammer(ru, QPower{e}, n).to_rect();
        CHECK(std::abs(v - prod) <= 1e-12 * std::max(1.0, std::abs(prod)));
        auto w = q_pochhammer(ru, x, n).to_rect();
        CHECK(std::abs(w - prod) <= 1e-11 * std::max(1.0, std::abs(prod)));
        prod *= 1.0 - x * std::pow(q, static_cast<double>(n));
      }
    }
  }
}

TEST_CASE("q-binomial examples") {
  RootOfUnity r4(4);
  CHECK(std::abs(q_binomial(r4, 2, 1).to_rect() - std::complex<double>(1.0, 1.0)) < 1e-14);
  RootOfUnity r2(2);
  CHECK(std::abs(q_binomial(r2, 3, 1).to_rect() - std::complex<double>(1.0, 0.0)) < 1e-14);
  CHECK(q_binomial(r4, 1, 2).is_zero());
  for (std::int64_t n = 0; n < 4; ++n) {
    CHECK(std::abs(q_binomial(r4, n, 0).to_rect() - 1.0) < 1e-14);
    CHECK(std::abs(q_binomial(r4, n, n).to_rect() - 1.0) < 1e-14);
  }
  // [N; N] = 1 even though (q)_N vanishes.
  CHECK(std::abs(q_binomial(r4, 4, 4).to_rect() - 1.0) < 1e-14);
}

TEST_CASE("q-binomial matches the Pascal recurrence oracle beyond N") {
  for (std::int64_t N : {2, 3, 5, 8}) {
    RootOfUnity ru(N);
    auto table = oracle::pascal_table(oracle::q_of(N), 3 * static_cast<int>(N) + 2);
    for (int m = 0; m < static_cast<int>(table.size()); ++m)
      for (int k = 0; k <= m; ++k) {
        auto v = q_binomial(ru, m, k).to_rect();
        CHECK(std::abs(v - table[m][k]) <= 1e-9 * std::max(1.0, std::abs(table[m][k])));
      }
  }
}

TEST_CASE("PochhammerTable brackets agree with q_binomial") {
  for (std::int64_t N : {1, 2, 9, 40}) {
    RootOfUnity ru(N);
    PochhammerTable t(ru);
    for (std::int64_t m = 0; m < N; ++m)
      for (std::int64_t k = 0; k <= m; ++k) {
        auto a = t.bracket(m, k).to_rect();
        auto b = q_binomial(ru, m, k).to_rect();
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
        CHECK(std::exp(t.bracket_log_abs(m, k)) == doctest::Approx(std::abs(b)).epsilon(1e-12));
      }
    CHECK(t.pochhammer(N).is_zero());
  }
}

TEST_CASE("|(q)_{N-1}| = N") {
  for (std::int64_t N = 1; N <= 300; ++N) {
    PochhammerTable t{RootOfUnity(N)};
    CHECK(std::exp(t.log_abs(N - 1)) == doctest::Approx(static_cast<double>(N)).epsilon(1e-12));
  }
}

TEST_CASE("magnitude bound dominates every bracket") {
  RootOfUnity ru(25);
  CHECK(q_binomial_magnitude_bound(ru, 0) == 1.0);
  CHECK(std::abs(q_binomial(ru, 0, 0).to_rect()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(q_binomial_magnitude_bound(ru, 25), DomainError);
  for (std::int64_t m = 0; m < 25; ++m) {
    double bound = q_binomial_magnitude_bound(ru, m);
    CHECK(bound == std::ldexp(1.0, static_cast<int>(m)));
    for (std::int64_t k = 0; k <= m; ++k) CHECK(std::abs(q_binomial(ru, m, k).to_rect()) <= bound * (1 + 1e-12));
  }
}

TEST_CASE("subset-sum expansion over {1..m}") {
  for (std::int64_t N : {3, 4, 7, 12}) {
    RootOfUnity ru(N);
    auto q = oracle::q_of(N);
    for (int m = 0; m <= 8; ++m)
      for (int k = 0; k <= m; ++k) {
        std::complex<double> s = 0.0;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          if (__builtin_popcount(mask) != k) continue;
          int sum = 0;
          for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) sum += j + 1;
          s += std::pow(q, static_cast<double>(sum - k * (k + 1) / 2));
        }
        CHECK(std::abs(q_binomial(ru, m, k).to_rect() - s) < 1e-10);
      }
  }
}

TEST_CASE("subsets of {0..m} do not reproduce the bracket") {
  // N = 4, [2; 1] = 1 + i, but q^{0-1} + q^{1-1} + q^{2-1} = -i + 1 + i = 1.
  RootOfUnity ru(4);
  auto q = oracle::q_of(4);
  std::complex<double> s = std::pow(q, -1.0) + 1.0 + q;
  CHECK(std::abs(q_binomial(ru, 2, 1).to_rect() - s) > 0.5);
}
