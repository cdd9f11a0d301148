#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "twistvol/dilog.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/potential.hpp"

using namespace twistvol;
using cd = std::complex<double>;

namespace {

double max_norm(const ComplexVector& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

double max_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (auto x : v) m = std::max(m, x);
  return m;
}

/// p = 2 critical points by elimination: z1 solves -2 z^4 + 5 z^3 - 6 z^2 + 3 z - 1 = 0,
/// then z2 = z1^2/(z1^2 - z1 + 1) and z3 = z2 - 1.
std::vector<ComplexVector> p2_roots_by_elimination() {
  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  // Monic form z^4 - 2.5 z^3 + 3 z^2 - 1.5 z + 0.5.
  const double c[4] = {0.5, -1.5, 3.0, -2.5};
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(companion);
  std::vector<ComplexVector> out;
  for (int i = 0; i < 4; ++i) {
    cd z1 = es.eigenvalues()(i);
    cd z2 = z1 * z1 / (z1 * z1 - z1 + 1.0);
    out.push_back({z1, z2, z2 - 1.0});
  }
  return out;
}

}  // namespace

TEST_CASE("potential input validation") {
  CHECK_THROWS_AS(potential_f({2, {cd(0.5, 0.5)}}), DomainError);
  CHECK_THROWS_AS(potential_f({1, {cd(0.5, 0.5)}}), DomainError);
  CHECK_THROWS_AS(potential_f({2, {0.0, cd(0.5, 0.5), cd(0.3, 0.1)}}), DomainError);
}

TEST_CASE("cut violations name the offending term") {
  // z1/z2 = 2 lies on the cut.
  try {
    potential_f({2, {cd(1.0, 1.0), cd(0.5, 0.5), cd(-0.3, 0.2)}});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("Li2(z1/z2)") != std::string::npos);
  }
}

TEST_CASE("potential on negative reals is real") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, -0.1);
  for (int k = 0; k < 50; ++k)
    for (int p : {2, 3}) {
      PotentialInput in{p, {}};
      for (int i = 0; i < 2 * p - 1; ++i) in.z.push_back(u(rng));
      // Ascending magnitude keeps every ratio z_i/z_{i+1} in (0, 1].
      std::sort(in.z.begin(), in.z.end(), [](cd a, cd b) { return a.real() > b.real(); });
      CHECK(std::abs(potential_f(in).imag()) < 1e-12);
    }
}

TEST_CASE("potential matches its definition") {
  ComplexVector z{cd(0.3, 0.8), cd(-0.4, 1.1), cd(1.2, 0.6)};
  cd expect = -li2(1.0 / z[0]) + li2(z[0]) - li2(z[0] / z[1]) + li2(1.0 / z[1]) + li2(z[1]) - li2(z[1] / z[2]) +
              li2(1.0 / z[2]) + li2(z[2]);
  CHECK(std::abs(potential_f({2, z}) - expect) < 1e-14);
}

TEST_CASE("lattice potential") {
  LatticeIndex n{{1, 2, 3}};
  const std::int64_t N = 7;
  auto L = [&](std::int64_t k) { return li2_circle(k, N); };
  cd expect = L(1) - L(2) + L(1) + L(2) - L(3) + L(1) - L(3);
  CHECK(std::abs(potential_f_lattice(n, N, 2) - expect) < 1e-14);
  CHECK_THROWS_AS(potential_f_lattice(LatticeIndex{{2, 1, 3}}, N, 2), DomainError);
}

TEST_CASE("analytic gradient against central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mag(0.5, 2.0), ang(0.2, 2.9);
  int tested = 0;
  double worst = 0.0;
  while (tested < 100) {
    int p = tested % 2 ? 3 : 2;
    PotentialInput in{p, {}};
    for (int i = 0; i < 2 * p - 1; ++i) in.z.push_back(std::polar(mag(rng), ang(rng)));
    ComplexVector g;
    try {
      g = grad_f(in);
      potential_f(in);
    } catch (const DomainError&) {
      continue;
    }
    const double h = 1e-5;
    for (int i = 0; i < 2 * p - 1; ++i) {
      PotentialInput a = in, b = in;
      a.z[i] += h;
      b.z[i] -= h;
      cd fd = (potential_f(a) - potential_f(b)) / (2 * h);
      worst = std::max(worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(g[i])));
    }
    ++tested;
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("critical system is the exponentiated gradient") {
  // z_i df/dz_i = log of the ratio of the two sides of equation i.
  ComplexVector z{cd(0.8, 0.7), cd(1.5, 0.4), cd(0.7, 0.5)};
  PotentialInput in{2, z};
  auto g = grad_f(in);
  auto sys = critical_system(in);
  cd l1 = (1.0 - z[0] / z[1]);
  cd r1 = (1.0 - z[0]) * (1.0 - 1.0 / z[0]);
  CHECK(std::abs(sys[0] - (l1 - r1)) < 1e-14);
  // exp(z_1 df/dz_1) equals one side over the other.
  cd ratio = std::exp(z[0] * g[0]);
  CHECK((std::abs(ratio - l1 / r1) < 1e-12 || std::abs(ratio - r1 / l1) < 1e-12));
}

TEST_CASE("jacobian against finite differences") {
  PotentialInput in{3, {cd(0.8, 0.7), cd(1.5, 0.4), cd(0.7, 0.5), cd(-0.3, 0.9), cd(1.1, 0.2)}};
  auto J = critical_jacobian(in);
  const double h = 1e-6;
  for (int j = 0; j < 5; ++j) {
    PotentialInput a = in, b = in;
    a.z[j] += h;
    b.z[j] -= h;
    auto fa = critical_system(a), fb = critical_system(b);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(J[i][j] - (fa[i] - fb[i]) / (2 * h)) < 1e-7);
  }
}

TEST_CASE("solver finds the eliminated p = 2 roots") {
  auto sols = critical_points(2);
  auto roots = p2_roots_by_elimination();
  for (const auto& r : roots) {
    auto res = critical_residual({2, r});
    CHECK(max_norm(res) < 1e-12);
    if (r[0].imag() <= 0) continue;
    bool found = false;
    for (const auto& s : sols) {
      double d = 0.0;
      for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(s.a[i] - r[i]));
      found = found || d < 1e-9;
    }
    CHECK(found);
  }
}

TEST_CASE("solve_critical post-conditions") {
  for (int p : {2, 3}) {
    auto cp = solve_critical(p);
    CHECK(cp.residual < 1e-12);
    for (auto a : cp.a) {
      CHECK(std::abs(a.real() - 1.0) > 1e-6);
      CHECK((a.real() < 0 ? std::abs(a) : std::abs(a.imag())) > 1e-6);
    }
    CHECK(cp.min_re_margin > 1e-6);
    CHECK(cp.volume == doctest::Approx(potential_f({p, cp.a}).imag()));
    for (const auto& other : critical_points(p)) CHECK(other.volume <= cp.volume + 1e-12);
  }
  auto cp2 = solve_critical(2);
  CHECK(cp2.volume == doctest::Approx(5.58215576111794).epsilon(1e-12));
  auto cp3 = solve_critical(3);
  CHECK(cp3.volume == doctest::Approx(7.98608851516538).epsilon(1e-12));
}

TEST_CASE("solver is reproducible and mirror symmetric") {
  SolverConfig one;
  one.threads = 1;
  SolverConfig many;
  many.threads = 3;
  auto a = solve_critical(2, one);
  auto b = solve_critical(2, many);
  CHECK(a.a == b.a);
  CHECK(a.start_index == b.start_index);
  auto m = solve_critical_for_knot(TwistKnotSpec(-2));
  CHECK(m.volume == a.volume);
  CHECK(m.a[0] == std::conj(a.a[0]));
}

TEST_CASE("solver failure reports the best residual") {
  SolverConfig cfg;
  cfg.starts = 0;
  cfg.max_iterations = 0;
  try {
    solve_critical(2, cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.best_residual() > 0.0);
  }
}

TEST_CASE("gradient and system vanish together at a stationary solution") {
  const CriticalPoint* stationary = nullptr;
  auto sols = critical_points(2);
  for (const auto& s : sols)
    if (s.gradient_norm < 1e-8) stationary = &s;
  REQUIRE(stationary);
  CHECK(stationary->volume == doctest::Approx(3.16396).epsilon(1e-5));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    double scale = k < 10 ? 1e-13 : 1e-4;
    PotentialInput in{2, stationary->a};
    for (auto& z : in.z) z += scale * cd(g(rng), g(rng));
    bool grad_small = max_norm(grad_f(in)) < 1e-8;
    bool sys_small = max_norm(critical_residual(in)) < 1e-8;
    CHECK(grad_small == sys_small);
  }
}

TEST_CASE("the max-Im solution solves only the exponentiated system") {
  auto cp = solve_critical(2);
  CHECK(max_norm(critical_residual({2, cp.a})) < 1e-12);
  CHECK(cp.branch_shift == std::vector<int>{0, 1, 0});
  auto grad = grad_f({2, cp.a});
  cd expect = cd(0.0, 2.0 * std::numbers::pi) / cp.a[1];
  CHECK(std::abs(grad[1] - expect) < 1e-10);
  CHECK(cp.gradient_norm > 1.0);
}

TEST_CASE("grid maximum") {
  // N = 2: four lattice points, L(0) = pi^2/6 and L(1) = Li2(-1), all real.
  auto g2 = grid_max_im_f(2, 2);
  CHECK(g2.best_value == doctest::Approx(0.0));
  auto g30 = grid_max_im_f(2, 30);
  auto g60 = grid_max_im_f(2, 60);
  auto g120 = grid_max_im_f(2, 120);
  CHECK(g60.best_value >= g30.best_value - 1e-9);
  CHECK(g120.best_value >= g60.best_value - 1e-9);
  CHECK(g60.best_value == doctest::Approx(potential_f_lattice(g60.best_index, 60, 2).imag()));
  double brute = -1e300;
  for (std::int64_t c = 0; c < 30; ++c)
    for (std::int64_t b = 0; b <= c; ++b)
      for (std::int64_t a = 0; a <= b; ++a)
        brute = std::max(brute, potential_f_lattice(LatticeIndex{{a, b, c}}, 30, 2).imag());
  CHECK(g30.best_value == doctest::Approx(brute).epsilon(1e-12));
  CHECK_THROWS_AS(grid_max_im_f(2, 1000, 100), BudgetError);
}
