#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "twistvol/conjecture.hpp"
#include "twistvol/dilog.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/qseries.hpp"

namespace twistvol {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::int64_t scaled_floor(Rational r, std::int64_t n) { return (r.num * n) / r.den; }

bool strictly_decreasing(const std::vector<std::pair<double, double>>& series) {
  for (std::size_t i = 1; i < series.size(); ++i)
    if (!(series[i].second < series[i - 1].second)) return false;
  return true;
}

CheckResult make(std::string name, std::string lemma, double tolerance) {
  CheckResult r;
  r.name = std::move(name);
  r.lemma = std::move(lemma);
  r.tolerance = tolerance;
  return r;
}

void finish_decreasing(CheckResult& r) {
  if (r.series.empty()) {
    r.status = CheckStatus::skipped;
    r.note = "no N values";
    return;
  }
  r.measured = r.series.back().second;
  bool decreasing = strictly_decreasing(r.series);
  bool small = r.measured < r.tolerance;
  r.status = decreasing && small ? CheckStatus::passed : CheckStatus::failed;
  if (!decreasing) r.note = "difference not decreasing along N";
  else if (!small) r.note = "final difference above tolerance";
}

std::complex<double> unit(std::int64_t n, std::int64_t modulus) {
  double t = two_pi * static_cast<double>(n) / static_cast<double>(modulus);
  return {std::cos(t), std::sin(t)};
}

CheckResult subset_sum_identity() {
  CheckResult r = make("subset_sum_identity", "Lemma 114", 1e-10);
  double worst = 0.0;
  for (std::int64_t N = 1; N <= 12; ++N) {
    RootOfUnity ru(N);
    for (int m = 0; m <= 10; ++m) {
      std::vector<std::complex<double>> by_size(static_cast<std::size_t>(m) + 1);
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        int k = 0;
        std::int64_t s = 0;
        for (int j = 0; j < m; ++j)
          if (mask & (1u << j)) {
            ++k;
            s += j + 1;
          }
        by_size[static_cast<std::size_t>(k)] += ru.power(s - k * (k + 1) / 2);
      }
      for (int k = 0; k <= m; ++k) {
        auto b = q_binomial(ru, m, k).to_rect();
        worst = std::max(worst, std::abs(b - by_size[static_cast<std::size_t>(k)]));
      }
    }
  }
  r.measured = worst;
  r.status = worst < r.tolerance ? CheckStatus::passed : CheckStatus::failed;
  r.note = "subsets of {1..m}; N <= 12, m <= 10";
  return r;
}

CheckResult bracket_symmetry_and_pascal() {
  CheckResult r = make("bracket_symmetry_pascal", "Theorem 155", 1e-12);
  double worst = 0.0;
  for (std::int64_t N = 2; N <= 64; ++N) {
    PochhammerTable table{RootOfUnity(N)};
    const RootOfUnity& ru = table.root();
    for (std::int64_t m = 1; m < N; ++m)
      for (std::int64_t k = 0; k <= m; ++k) {
        auto b = table.bracket(m, k).to_rect();
        worst = std::max(worst, std::abs(b - table.bracket(m, m - k).to_rect()) / std::max(1.0, std::abs(b)));
        std::complex<double> left = k > 0 ? table.bracket(m - 1, k - 1).to_rect() : std::complex<double>{};
        auto right = ru.power(k) * table.bracket(m - 1, k).to_rect();
        double scale = std::max({1.0, std::abs(left), std::abs(right)});
        worst = std::max(worst, std::abs(b - (left + right)) / scale);
      }
  }
  r.measured = worst;
  r.status = worst < r.tolerance ? CheckStatus::passed : CheckStatus::failed;
  r.note = "N <= 64, relative to the larger Pascal summand";
  return r;
}

CheckResult factorial_modulus() {
  CheckResult r = make("pochhammer_full_range", "Theorem 155", 1e-10);
  double worst = 0.0;
  for (std::int64_t N = 1; N <= 512; ++N) {
    PochhammerTable table{RootOfUnity(N)};
    worst = std::max(worst, std::abs(std::exp(table.log_abs(N - 1)) / static_cast<double>(N) - 1.0));
    if (!table.pochhammer(N).is_zero()) worst = std::max(worst, 1.0);
  }
  r.measured = worst;
  r.status = worst < r.tolerance ? CheckStatus::passed : CheckStatus::failed;
  r.note = "|(q)_{N-1}| = N and (q)_N = 0 for N <= 512";
  return r;
}

CheckResult bracket_bound() {
  CheckResult r = make("bracket_magnitude_bound", "Lemma 114", 0.0);
  double worst = 0.0;
  for (std::int64_t N = 1; N <= 64; ++N) {
    PochhammerTable table{RootOfUnity(N)};
    for (std::int64_t m = 0; m < N; ++m) {
      double log_bound = std::log(q_binomial_magnitude_bound(table.root(), m));
      for (std::int64_t k = 0; k <= m; ++k)
        worst = std::max(worst, std::exp(table.bracket_log_abs(m, k) - log_bound));
    }
  }
  r.measured = worst;
  r.status = worst <= 1.0 ? CheckStatus::passed : CheckStatus::failed;
  r.note = "max |[m; k]| / 2^m over N <= 64";
  return r;
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "pass";
    case CheckStatus::failed: return "fail";
    case CheckStatus::skipped: return "skip";
  }
  return "skip";
}

CheckResult check_lemma_101(Rational alpha, const std::vector<std::int64_t>& n_values, double tolerance) {
  if (alpha.den <= 0 || alpha.num <= 0 || alpha.num >= alpha.den)
    throw DomainError("check_lemma_101: alpha must lie in (0, 1)");
  CheckResult r = make("lemma_101", "Lemma 101", tolerance);
  for (std::int64_t N : n_values) {
    std::int64_t n = scaled_floor(alpha, N);
    if (n < 1) throw DomainError("check_lemma_101: alpha N must be at least 1");
    PochhammerTable table{RootOfUnity(N)};
    double t = two_pi * static_cast<double>(n) / static_cast<double>(N);
    double diff = std::abs(two_pi / static_cast<double>(N) * table.log_abs(n) + clausen(t));
    r.series.emplace_back(static_cast<double>(N), diff);
  }
  finish_decreasing(r);
  return r;
}

CheckResult check_lemma_114(int p, std::int64_t modulus, double term_budget) {
  TwistKnotSpec spec(p);
  CheckResult r = make("lemma_114", "Lemma 114", 1.0);
  MaxTerm mt = max_term(spec, modulus, term_budget);
  double log_bound = std::log(static_cast<double>(modulus)) +
                     static_cast<double>((modulus - 1) * spec.dimension()) * std::numbers::ln2;
  r.measured = std::exp(mt.log_abs - log_bound);
  r.series.emplace_back(static_cast<double>(modulus), r.measured);
  r.status = r.measured <= 1.0 ? CheckStatus::passed : CheckStatus::failed;
  return r;
}

CheckResult check_lemma_121(int p, const std::vector<std::int64_t>& n_values, const JonesOptions& options) {
  TwistKnotSpec spec(p);
  CheckResult r = make("lemma_121", "Lemma 121", 1.0);
  r.measured = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::int64_t N : n_values) {
    JonesValue j = colored_jones(spec, N, options);
    double a = std::exp(j.log_abs);
    r.series.emplace_back(static_cast<double>(N), a);
    r.measured = std::min(r.measured, a);
    if (N >= 4 && j.log_abs < -1e-12) ok = false;
  }
  if (n_values.empty()) {
    r.status = CheckStatus::skipped;
    r.measured = 0.0;
    r.note = "no N values";
    return r;
  }
  r.status = ok ? CheckStatus::passed : CheckStatus::failed;
  r.note = "min |J_N|; asserted for N >= 4";
  return r;
}

CheckResult check_lemma_100(std::uint64_t seed, int count, double tolerance) {
  CheckResult r = make("lemma_100", "Lemma 100", tolerance);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    double rad = 0.99 * std::sqrt(unit01(rng));
    double ang = two_pi * unit01(rng);
    std::complex<double> z = std::polar(rad, ang);
    auto lhs = li2(z) + li2(-z) - 0.5 * li2(z * z);
    worst = std::max(worst, std::abs(lhs));
  }
  r.measured = worst;
  r.status = worst < tolerance ? CheckStatus::passed : CheckStatus::failed;
  return r;
}

CheckResult check_lemma_98(double tolerance) {
  CheckResult r = make("lemma_98", "Lemma 98", tolerance);
  bool monotone = true;
  double worst_final = 0.0;
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  for (std::int64_t n = 1; n <= 3; ++n) {
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 11; ++k) {
      std::int64_t N = 8 * n << k;
      double d = std::abs(li2_circle(n, N) - zeta2);
      if (!(d < prev)) monotone = false;
      prev = d;
      if (n == 1) r.series.emplace_back(static_cast<double>(N), d);
    }
    worst_final = std::max(worst_final, prev);
  }
  r.measured = worst_final;
  r.status = monotone && worst_final < tolerance ? CheckStatus::passed : CheckStatus::failed;
  r.note = monotone ? "n in {1,2,3}, N = 8n..2^14 n" : "not monotone in N";
  return r;
}

CheckResult check_corollary_102(Rational lower, Rational upper, const std::vector<std::int64_t>& n_values,
                                double tolerance) {
  CheckResult r = make("corollary_102", "Corollary 102", tolerance);
  for (std::int64_t N : n_values) {
    std::int64_t a = scaled_floor(lower, N);
    std::int64_t b = scaled_floor(upper, N);
    if (a < 0 || b < a || b >= N) throw DomainError("check_corollary_102: need 0 <= lower <= upper < 1");
    PochhammerTable table{RootOfUnity(N)};
    double lhs = two_pi / static_cast<double>(N) * table.bracket_log_abs(b, a);
    double rhs = (li2_circle(a, N) - li2_circle(b, N) + li2_circle(b - a, N)).imag();
    r.series.emplace_back(static_cast<double>(N), std::abs(lhs - rhs));
  }
  finish_decreasing(r);
  return r;
}

CheckResult check_lemma_103(int p, const std::vector<Rational>& ratios, const std::vector<std::int64_t>& n_values,
                            double tolerance) {
  TwistKnotSpec spec(p);
  int d = spec.dimension();
  if (static_cast<int>(ratios.size()) != d) throw DomainError("check_lemma_103: need one ratio per index");
  CheckResult r = make("lemma_103", "Lemma 103", tolerance);
  for (std::int64_t N : n_values) {
    LatticeIndex idx;
    PotentialInput in{spec.base_p(), {}};
    for (const Rational& q : ratios) {
      idx.indices.push_back(scaled_floor(q, N));
      in.z.push_back(unit(idx.indices.back(), N));
    }
    idx.validate(N, d);
    double lattice = potential_f_lattice(idx, N, spec.base_p()).imag();
    double smooth = potential_f(in).imag();
    r.series.emplace_back(static_cast<double>(N), std::abs(lattice - smooth));
  }
  finish_decreasing(r);
  return r;
}

CheckResult check_lemma_106(int p, const std::vector<std::int64_t>& n_values, double tolerance, double term_budget) {
  TwistKnotSpec spec(p);
  CheckResult r = make("lemma_106", "Lemma 106", tolerance);
  for (std::int64_t N : n_values) {
    MaxTerm mt = max_term(spec, N, term_budget);
    double lattice = potential_f_lattice(mt.index, N, spec.base_p()).imag();
    r.series.emplace_back(static_cast<double>(N), std::abs(two_pi / static_cast<double>(N) * mt.log_abs - lattice));
  }
  finish_decreasing(r);
  return r;
}

const std::vector<std::string>& lemma_suite_names() {
  static const std::vector<std::string> names{"all", "qseries", "dilog", "bounds", "asymptotics"};
  return names;
}

std::vector<CheckResult> run_lemma_suite(const std::string& suite, std::uint64_t seed) {
  const auto& names = lemma_suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("unknown suite '" + suite + "' (expected all, qseries, dilog, bounds or asymptotics)");
  bool all = suite == "all";
  std::vector<CheckResult> out;
  if (all || suite == "qseries") {
    out.push_back(subset_sum_identity());
    out.push_back(bracket_symmetry_and_pascal());
    out.push_back(factorial_modulus());
  }
  if (all || suite == "dilog") {
    out.push_back(check_lemma_100(seed));
    out.push_back(check_lemma_98());
  }
  if (all || suite == "bounds") {
    out.push_back(bracket_bound());
    std::vector<std::int64_t> small;
    for (std::int64_t N = 1; N <= 40; ++N) small.push_back(N);
    for (int p : {2, 3}) {
      CheckResult agg = make("lemma_114_p" + std::to_string(p), "Lemma 114", 1.0);
      agg.status = CheckStatus::passed;
      for (std::int64_t N : small) {
        CheckResult c = check_lemma_114(p, N);
        agg.series.push_back(c.series.front());
        agg.measured = std::max(agg.measured, c.measured);
        if (c.failed()) agg.status = CheckStatus::failed;
      }
      agg.note = "max term / (N 2^{(N-1)(2p-1)}) over N <= 40";
      out.push_back(std::move(agg));
    }
    for (int p : {2, 3}) {
      CheckResult c = check_lemma_121(p, small);
      c.name += "_p" + std::to_string(p);
      out.push_back(std::move(c));
    }
  }
  if (all || suite == "asymptotics") {
    const std::vector<std::int64_t> doublings{100, 200, 400, 800};
    out.push_back(check_lemma_101({1, 3}, doublings));
    out.push_back(check_corollary_102({1, 4}, {3, 4}, doublings));
    out.push_back(check_lemma_103(2, {{1, 4}, {1, 2}, {3, 4}}, doublings));
    out.push_back(check_lemma_106(2, {100, 200}));
  }
  return out;
}

}  // namespace twistvol
