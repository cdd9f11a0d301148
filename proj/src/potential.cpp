#include "twistvol/potential.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "twistvol/dilog.hpp"
#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

using cd = std::complex<double>;

// One signed Li2 term of f; its argument is z_i, 1/z_i or z_i/z_k.
struct DilogTerm {
  enum class Kind { identity, inverse, ratio };
  double sign;
  Kind kind;
  int i;
  int k = -1;

  cd argument(const ComplexVector& z) const {
    switch (kind) {
      case Kind::identity: return z[static_cast<std::size_t>(i)];
      case Kind::inverse: return 1.0 / z[static_cast<std::size_t>(i)];
      case Kind::ratio: return z[static_cast<std::size_t>(i)] / z[static_cast<std::size_t>(k)];
    }
    return {};
  }
  std::string name() const {
    const std::string zi = "z" + std::to_string(i + 1);
    switch (kind) {
      case Kind::identity: return "Li2(" + zi + ")";
      case Kind::inverse: return "Li2(1/" + zi + ")";
      case Kind::ratio: return "Li2(" + zi + "/z" + std::to_string(k + 1) + ")";
    }
    return {};
  }
};

std::vector<DilogTerm> potential_terms(int dimension) {
  using K = DilogTerm::Kind;
  std::vector<DilogTerm> terms;
  terms.push_back({-1.0, K::inverse, 0});
  for (int i = 0; i + 1 < dimension; ++i) {
    terms.push_back({1.0, K::identity, i});
    terms.push_back({-1.0, K::ratio, i, i + 1});
    terms.push_back({1.0, K::inverse, i + 1});
  }
  terms.push_back({1.0, K::identity, dimension - 1});
  return terms;
}

void require_nonzero(const ComplexVector& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] == cd{}) throw DomainError("critical system: coordinate z" + std::to_string(i + 1) + " is zero");
}

double cut_distance(cd a) { return a.real() >= 0.0 ? std::abs(a.imag()) : std::abs(a); }

Eigen::MatrixXcd jacobian_matrix(const ComplexVector& z) {
  const auto d = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(d, d);
  auto at = [&](Eigen::Index i) { return z[static_cast<std::size_t>(i)]; };
  {
    // (1 - z1/z2) - (1 - z1)(1 - 1/z1)
    const cd z1 = at(0), z2 = at(1);
    j(0, 0) = -1.0 / z2 - (-(1.0 - 1.0 / z1) + (1.0 - z1) / (z1 * z1));
    j(0, 1) = z1 / (z2 * z2);
  }
  for (Eigen::Index i = 1; i + 1 < d; ++i) {
    // (1 - z_i/z_{i+1})(1 - 1/z_i) - (1 - z_i)(1 - z_{i-1}/z_i)
    const cd zp = at(i - 1), zi = at(i), zn = at(i + 1);
    const cd a = 1.0 - zi / zn, b = 1.0 - 1.0 / zi, c = 1.0 - zi, e = 1.0 - zp / zi;
    j(i, i) = (-1.0 / zn) * b + a / (zi * zi) - (-e + c * zp / (zi * zi));
    j(i, i + 1) = zi / (zn * zn) * b;
    j(i, i - 1) = c / zi;
  }
  {
    // (1 - 1/z_d) - (1 - z_d)(1 - z_{d-1}/z_d)
    const cd zp = at(d - 2), zd = at(d - 1);
    j(d - 1, d - 1) = 1.0 / (zd * zd) - (-(1.0 - zp / zd) + (1.0 - zd) * zp / (zd * zd));
    j(d - 1, d - 2) = (1.0 - zd) / zd;
  }
  return j;
}

double max_norm(const ComplexVector& v) {
  double m = 0.0;
  for (const cd& x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const ComplexVector& v) {
  return std::all_of(v.begin(), v.end(), [](cd x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

struct NewtonOutcome {
  ComplexVector z;
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
};

NewtonOutcome newton(int p, ComplexVector z, const SolverConfig& config) {
  NewtonOutcome out;
  PotentialInput in{p, z};
  auto merit = [&](const ComplexVector& x) -> std::optional<double> {
    if (!all_finite(x)) return std::nullopt;
    for (const cd& c : x)
      if (c == cd{}) return std::nullopt;
    in.z = x;
    return max_norm(critical_system(in));
  };
  auto current = merit(z);
  if (!current) return out;
  const auto d = static_cast<Eigen::Index>(z.size());
  for (int it = 0; it < config.max_iterations; ++it) {
    if (*current < 1e-15) break;
    in.z = z;
    const ComplexVector f = critical_system(in);
    Eigen::VectorXcd rhs(d);
    for (Eigen::Index i = 0; i < d; ++i) rhs(i) = -f[static_cast<std::size_t>(i)];
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(jacobian_matrix(z));
    if (!lu.isInvertible()) break;
    const Eigen::VectorXcd step = lu.solve(rhs);
    double t = 1.0;
    bool improved = false;
    ComplexVector trial(z.size());
    for (int h = 0; h <= config.max_halvings; ++h, t *= 0.5) {
      for (std::size_t i = 0; i < z.size(); ++i) trial[i] = z[i] + t * step(static_cast<Eigen::Index>(i));
      const auto m = merit(trial);
      if (m && *m < *current) {
        z = trial;
        current = m;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  out.z = z;
  out.residual = *current;
  out.converged = *current < config.tolerance;
  return out;
}

ComplexVector start_point(int index, int dimension, std::mt19937_64& rng) {
  ComplexVector z(static_cast<std::size_t>(dimension));
  if (index == 0) {
    std::fill(z.begin(), z.end(), std::polar(1.0, std::numbers::pi / 3.0));
    return z;
  }
  std::uniform_real_distribution<double> modulus(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.1, std::numbers::pi - 0.1);
  for (auto& c : z) {
    const double r = modulus(rng);
    c = std::polar(r, angle(rng));
  }
  return z;
}

}  // namespace

void PotentialInput::validate() const {
  if (p < 2) throw DomainError("potential: p must be >= 2, got " + std::to_string(p));
  if (static_cast<int>(z.size()) != dimension())
    throw DomainError("potential: expected " + std::to_string(dimension()) + " coordinates, got " +
                      std::to_string(z.size()));
}

std::complex<double> potential_f(const PotentialInput& input) {
  input.validate();
  require_nonzero(input.z);
  cd sum{};
  for (const DilogTerm& t : potential_terms(input.dimension())) {
    const cd w = t.argument(input.z);
    if (w.imag() == 0.0 && w.real() > 1.0)
      throw DomainError("potential_f: argument of " + t.name() + " lies on the cut [1, inf)");
    sum += t.sign * li2(w);
  }
  return sum;
}

std::complex<double> potential_f_lattice(const LatticeIndex& n, std::int64_t modulus, int p) {
  if (p < 2) throw DomainError("potential_f_lattice: p must be >= 2");
  const int d = 2 * p - 1;
  n.validate(modulus, d);
  const auto& k = n.indices;
  cd sum{};
  for (int i = 0; i + 1 < d; ++i) {
    const std::int64_t a = k[static_cast<std::size_t>(i)];
    const std::int64_t b = k[static_cast<std::size_t>(i + 1)];
    sum += li2_circle(a, modulus) - li2_circle(b, modulus) + li2_circle(b - a, modulus);
  }
  return sum - li2_circle(k[static_cast<std::size_t>(d - 1)], modulus);
}

ComplexVector grad_f(const PotentialInput& input) {
  input.validate();
  require_nonzero(input.z);
  const auto& z = input.z;
  ComplexVector g(z.size());
  for (const DilogTerm& t : potential_terms(input.dimension())) {
    const cd w = t.argument(z);
    if (w.imag() == 0.0 && w.real() >= 1.0)
      throw DomainError("grad_f: argument of " + t.name() + " lies on the cut [1, inf)");
    const cd dl = t.sign * li2_derivative(w);
    const auto i = static_cast<std::size_t>(t.i);
    switch (t.kind) {
      case DilogTerm::Kind::identity: g[i] += dl; break;
      case DilogTerm::Kind::inverse: g[i] += dl * (-1.0 / (z[i] * z[i])); break;
      case DilogTerm::Kind::ratio: {
        const auto k = static_cast<std::size_t>(t.k);
        g[i] += dl / z[k];
        g[k] += dl * (-z[i] / (z[k] * z[k]));
        break;
      }
    }
  }
  return g;
}

ComplexVector critical_system(const PotentialInput& input) {
  input.validate();
  require_nonzero(input.z);
  const auto& z = input.z;
  const std::size_t d = z.size();
  ComplexVector r(d);
  r[0] = (1.0 - z[0] / z[1]) - (1.0 - z[0]) * (1.0 - 1.0 / z[0]);
  for (std::size_t i = 1; i + 1 < d; ++i)
    r[i] = (1.0 - z[i] / z[i + 1]) * (1.0 - 1.0 / z[i]) - (1.0 - z[i]) * (1.0 - z[i - 1] / z[i]);
  r[d - 1] = (1.0 - 1.0 / z[d - 1]) - (1.0 - z[d - 1]) * (1.0 - z[d - 2] / z[d - 1]);
  return r;
}

std::vector<double> critical_residual(const PotentialInput& input) {
  const ComplexVector r = critical_system(input);
  std::vector<double> out(r.size());
  std::transform(r.begin(), r.end(), out.begin(), [](cd x) { return std::abs(x); });
  return out;
}

std::vector<ComplexVector> critical_jacobian(const PotentialInput& input) {
  input.validate();
  require_nonzero(input.z);
  const Eigen::MatrixXcd j = jacobian_matrix(input.z);
  std::vector<ComplexVector> rows(static_cast<std::size_t>(j.rows()), ComplexVector(static_cast<std::size_t>(j.cols())));
  for (Eigen::Index r = 0; r < j.rows(); ++r)
    for (Eigen::Index c = 0; c < j.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = j(r, c);
  return rows;
}

std::vector<CriticalPoint> critical_points(int p, const SolverConfig& config) {
  if (p < 2) throw DomainError("solve_critical: p must be >= 2, got " + std::to_string(p));
  const int d = 2 * p - 1;
  const int total = config.starts + 1;

  // Starts are drawn up front so each solve depends only on its index.
  std::mt19937_64 rng(config.seed);
  std::vector<ComplexVector> starts;
  for (int s = 0; s < total; ++s) starts.push_back(start_point(s, d, rng));

  std::vector<NewtonOutcome> outcomes(static_cast<std::size_t>(total));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next.fetch_add(1); s < total; s = next.fetch_add(1))
      outcomes[static_cast<std::size_t>(s)] = newton(p, starts[static_cast<std::size_t>(s)], config);
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(config.threads > 0 ? config.threads : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<CriticalPoint> found;
  for (int s = 0; s < total; ++s) {
    const NewtonOutcome& o = outcomes[static_cast<std::size_t>(s)];
    if (!o.converged) continue;
    CriticalPoint cp;
    cp.p = p;
    cp.a = o.z;
    cp.start_index = s;
    cp.min_re_margin = std::numeric_limits<double>::infinity();
    cp.min_cut_distance = std::numeric_limits<double>::infinity();
    for (const cd& a : o.z) {
      cp.min_re_margin = std::min(cp.min_re_margin, std::abs(a.real() - 1.0));
      cp.min_cut_distance = std::min(cp.min_cut_distance, cut_distance(a));
    }
    if (cp.min_re_margin <= config.margin || cp.min_cut_distance <= config.margin) continue;
    const PotentialInput in{p, o.z};
    cp.residual = max_norm(critical_system(in));
    if (cp.residual >= config.tolerance) continue;
    try {
      cp.potential = potential_f(in);
    } catch (const DomainError&) {
      continue;
    }
    cp.volume = cp.potential.imag();
    const ComplexVector g = grad_f(in);
    cp.gradient_norm = max_norm(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      cp.branch_shift.push_back(static_cast<int>(std::lround((o.z[i] * g[i] / cd(0.0, 2.0 * std::numbers::pi)).real())));
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const CriticalPoint& other) {
      double diff = 0.0;
      for (std::size_t i = 0; i < cp.a.size(); ++i) diff = std::max(diff, std::abs(cp.a[i] - other.a[i]));
      return diff < 1e-8;
    });
    if (!duplicate) found.push_back(std::move(cp));
  }
  return found;
}

CriticalPoint solve_critical(int p, const SolverConfig& config) {
  const std::vector<CriticalPoint> found = critical_points(p, config);
  if (found.empty()) {
    // Re-run cheaply to report the best residual any start reached.
    double best = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(config.seed);
    for (int s = 0; s <= config.starts; ++s)
      best = std::min(best, newton(p, start_point(s, 2 * p - 1, rng), config).residual);
    throw SolverError("solve_critical: no admissible critical point found from " +
                          std::to_string(config.starts + 1) + " starts",
                      best);
  }
  const CriticalPoint* best = &found.front();
  for (const CriticalPoint& cp : found)
    if (cp.volume > best->volume) best = &cp;
  return *best;
}

CriticalPoint solve_critical_for_knot(const TwistKnotSpec& spec, const SolverConfig& config) {
  CriticalPoint cp = solve_critical(spec.base_p(), config);
  if (spec.mirrored()) {
    for (cd& a : cp.a) a = std::conj(a);
    cp.potential = std::conj(cp.potential);
    for (int& k : cp.branch_shift) k = -k;
    cp.p = spec.p();
  }
  return cp;
}

GridMax grid_max_im_f(int p, std::int64_t modulus, double term_budget) {
  if (p < 2) throw DomainError("grid_max_im_f: p must be >= 2");
  if (modulus < 1) throw DomainError("grid_max_im_f: N must be >= 1");
  const int d = 2 * p - 1;
  check_budget(modulus, d, term_budget, "grid_max_im_f");
  std::vector<double> cl(static_cast<std::size_t>(modulus));
  for (std::int64_t k = 0; k < modulus; ++k) cl[static_cast<std::size_t>(k)] = li2_circle(k, modulus).imag();
  auto c = [&](std::int64_t k) { return cl[static_cast<std::size_t>(k)]; };

  GridMax best;
  best.best_value = -std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
  std::vector<double> partial(static_cast<std::size_t>(d));
  auto rec = [&](auto&& self, int level, std::int64_t upper) -> void {
    for (std::int64_t v = 0; v <= upper; ++v) {
      idx[static_cast<std::size_t>(level - 1)] = v;
      const double value = partial[static_cast<std::size_t>(level)] + c(v) - c(upper) + c(upper - v);
      if (level == 1) {
        if (value > best.best_value) {
          best.best_value = value;
          best.best_index.indices = idx;
        }
      } else {
        partial[static_cast<std::size_t>(level - 1)] = value;
        self(self, level - 1, v);
      }
    }
  };
  for (std::int64_t top = 0; top < modulus; ++top) {
    idx[static_cast<std::size_t>(d - 1)] = top;
    partial[static_cast<std::size_t>(d - 1)] = -c(top);
    rec(rec, d - 1, top);
  }
  return best;
}

}  // namespace twistvol
