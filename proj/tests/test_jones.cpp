#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/jones.hpp"

using namespace twistvol;
using cd = std::complex<double>;

TEST_CASE("twist knot spec") {
  CHECK_THROWS_AS(TwistKnotSpec(0), DomainError);
  CHECK_THROWS_AS(TwistKnotSpec(1), DomainError);
  CHECK_THROWS_AS(TwistKnotSpec(-1), DomainError);
  TwistKnotSpec s(-3);
  CHECK(s.mirrored());
  CHECK(s.base_p() == 3);
  CHECK(s.dimension() == 5);
}

TEST_CASE("lattice index validation") {
  LatticeIndex ok{{0, 1, 3}};
  CHECK(ok.is_triangular(4));
  CHECK_NOTHROW(ok.validate(4, 3));
  CHECK_FALSE(LatticeIndex{{2, 1, 3}}.is_triangular(4));
  CHECK_FALSE(LatticeIndex{{0, 1, 4}}.is_triangular(4));
  CHECK_THROWS_AS(ok.validate(4, 5), DomainError);
  CHECK_THROWS_AS((LatticeIndex{{-1, 0, 0}}.validate(4, 3)), DomainError);
}

TEST_CASE("lattice size") {
  CHECK(lattice_size(2, 3) == 4.0);
  CHECK(lattice_size(10, 3) == 220.0);
  CHECK(lattice_size(1, 5) == 1.0);
}

TEST_CASE("small colors") {
  for (int p : {2, 3, -2, 4}) {
    auto j1 = colored_jones(TwistKnotSpec(p), 1);
    CHECK(std::abs(j1.value - cd(1.0, 0.0)) < 1e-12);
  }
  auto j2 = colored_jones(TwistKnotSpec(2), 2);
  CHECK(std::abs(j2.value) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(std::exp(j2.log_abs) == doctest::Approx(7.0).epsilon(1e-12));
  auto j2p3 = colored_jones(TwistKnotSpec(3), 2);
  CHECK(std::abs(j2p3.value) == doctest::Approx(11.0).epsilon(1e-12));
}

TEST_CASE("triangular sum equals the full cube sum") {
  for (std::int64_t N = 3; N <= 30; ++N) {
    cd ref = oracle::jones_p2_full_cube(N, oracle::q_of(N));
    cd got = colored_jones(TwistKnotSpec(2), N).value;
    CHECK(std::abs(got - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("agrees with an extended precision evaluation") {
  for (auto [p, N] : {std::pair{2, 50}, std::pair{2, 77}, std::pair{3, 20}, std::pair{4, 9}}) {
    auto ref = oracle::jones_triangular_mp(p, N);
    double ref_log = static_cast<double>(log(abs(ref)));
    double ref_arg = static_cast<double>(arg(ref));
    auto got = colored_jones(TwistKnotSpec(p), N);
    CHECK(got.log_abs == doctest::Approx(ref_log).epsilon(1e-13));
    CHECK(std::abs(wrap_phase(got.arg - ref_arg)) < 1e-12);
  }
}

TEST_CASE("mirror image is the complex conjugate") {
  for (std::int64_t N : {5, 17, 40}) {
    auto a = colored_jones(TwistKnotSpec(2), N);
    auto b = colored_jones(TwistKnotSpec(-2), N);
    CHECK(b.value == std::conj(a.value));
    CHECK(b.log_abs == a.log_abs);
  }
}

TEST_CASE("thread count does not change the result") {
  JonesOptions one;
  one.threads = 1;
  JonesOptions many;
  many.threads = 4;
  for (auto [p, N] : {std::pair{2, 60}, std::pair{3, 25}}) {
    auto a = colored_jones(TwistKnotSpec(p), N, one);
    auto b = colored_jones(TwistKnotSpec(p), N, many);
    CHECK(a.value == b.value);
    CHECK(a.log_abs == b.log_abs);
    CHECK(a.precision_bits == b.precision_bits);
  }
}

TEST_CASE("budget") {
  JonesOptions tiny;
  tiny.term_budget = 100;
  CHECK_THROWS_AS(colored_jones(TwistKnotSpec(2), 50, tiny), BudgetError);
  CHECK_THROWS_AS(max_term(TwistKnotSpec(2), 50, 100), BudgetError);
  try {
    colored_jones(TwistKnotSpec(2), 50, tiny);
  } catch (const BudgetError& e) {
    CHECK(e.terms() == lattice_size(50, 3));
    CHECK(e.budget() == 100);
  }
  auto rows = volume_sequence(TwistKnotSpec(2), {5, 50, 6}, tiny);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].jones.has_value());
  CHECK(rows[1].error.has_value());
  CHECK(std::isnan(rows[1].v));
  CHECK(rows[2].jones.has_value());
}

TEST_CASE("jones_term summed by hand reproduces J_N") {
  for (std::int64_t N : {4, 9}) {
    TwistKnotSpec spec(2);
    RootOfUnity ru(N);
    cd total = 0.0;
    for (std::int64_t c = 0; c < N; ++c)
      for (std::int64_t b = 0; b <= c; ++b)
        for (std::int64_t a = 0; a <= b; ++a) total += jones_term(spec, ru, LatticeIndex{{a, b, c}}).to_rect();
    total *= ru.power(1 - N);
    CHECK(std::abs(total - colored_jones(spec, N).value) < 1e-10 * std::abs(total));
  }
}

TEST_CASE("max term") {
  TwistKnotSpec spec(2);
  // N = 2: terms have magnitude |(q)_{n3}| |[n2; n1]| |[n3; n2]| with q = -1.
  auto m = max_term(spec, 2);
  CHECK(std::exp(m.log_abs) == doctest::Approx(2.0));
  CHECK(m.index.indices == std::vector<std::int64_t>{0, 0, 1});
  auto m30 = max_term(spec, 30);
  RootOfUnity ru(30);
  double brute = -1e300;
  for (std::int64_t c = 0; c < 30; ++c)
    for (std::int64_t b = 0; b <= c; ++b)
      for (std::int64_t a = 0; a <= b; ++a)
        brute = std::max(brute, jones_term(spec, ru, LatticeIndex{{a, b, c}}).log_mag());
  CHECK(m30.log_abs == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("volume sequence values") {
  auto rows = volume_sequence(TwistKnotSpec(2), {2, 50});
  CHECK(rows[0].v == doctest::Approx(std::numbers::pi * std::log(7.0)).epsilon(1e-12));
  CHECK(rows[1].v == doctest::Approx(3.51426917702).epsilon(1e-10));
}

TEST_CASE("extrapolation recovers a synthetic limit") {
  std::vector<SequencePoint> pts;
  for (std::int64_t N : {50, 100, 150, 200, 300})
    pts.push_back({N, 2.5 + 3.0 * std::log(double(N)) / N - 1.5 / N});
  auto fit = extrapolate_limit(pts);
  CHECK(fit.limit == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(fit.log_coefficient == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(fit.inverse_coefficient == doctest::Approx(-1.5).epsilon(1e-7));
  CHECK(fit.residual < 1e-12);
  CHECK_THROWS_AS(extrapolate_limit({{10, 1.0}, {20, 1.0}, {30, 1.0}}), ExtrapolationError);
  CHECK_THROWS_AS(extrapolate_limit({{10, 1.0}, {10, 1.0}, {20, 1.0}, {20, 1.0}}), ExtrapolationError);
}
