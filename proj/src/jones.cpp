#include "twistvol/jones.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "mp_complex.hpp"
#include "twistvol/errors.hpp"

namespace twistvol {

namespace {

using detail::MpComplex;
using detail::MpReal;

// Phase of (-1)^sign_exp q^q_exp, computed from an exponent of exp(pi i / N).
LogComplex signed_q_power(const RootOfUnity& ru, std::int64_t q_exp, std::int64_t sign_exp) {
  const std::int64_t n = ru.modulus();
  const std::int64_t e = (2 * ru.reduce(q_exp) + (sign_exp % 2 != 0 ? n : 0)) % (2 * n);
  return {0.0, std::numbers::pi * static_cast<double>(e) / static_cast<double>(n)};
}

// C(b, 2) - b t  (mod N), the q-exponent of an inner factor once the
// (-1)^i N n_i part has been reduced away.
std::int64_t inner_exponent(const RootOfUnity& ru, std::int64_t b, std::int64_t t) {
  return ru.reduce(b * (b - 1) / 2 - ru.reduce(b * t));
}

std::size_t tri_offset(std::int64_t t, std::int64_t b) {
  return static_cast<std::size_t>(t * (t + 1) / 2 + b);
}

// Tables shared by all workers for one (N, precision).
struct MpTables {
  mpfr_prec_t prec;
  std::int64_t modulus;
  std::vector<MpComplex> poch;    // (q)_n, n < N
  std::vector<MpComplex> factor;  // (-1)^b q^{C(b,2) - b t} [t; b], 0 <= b <= t < N
  MpComplex prefactor;            // q^{1-N}

  MpTables(const RootOfUnity& ru, mpfr_prec_t precision)
      : prec(precision), modulus(ru.modulus()), prefactor(precision) {
    const std::int64_t n = modulus;
    const mpfr_prec_t work = prec + 32;
    std::vector<MpComplex> qpow;
    qpow.reserve(static_cast<std::size_t>(n));
    MpReal angle(work), pi(work);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (std::int64_t k = 0; k < n; ++k) {
      MpComplex z(prec);
      mpfr_mul_si(angle.get(), pi.get(), 2 * k, MPFR_RNDN);
      mpfr_div_si(angle.get(), angle.get(), n, MPFR_RNDN);
      mpfr_sin_cos(z.im().get(), z.re().get(), angle.get(), MPFR_RNDN);
      if (k == 0) z.set(1, 0);
      qpow.push_back(std::move(z));
    }
    poch.reserve(static_cast<std::size_t>(n));
    poch.emplace_back(prec);
    poch.back().set(1, 0);
    MpComplex one_minus(prec);
    for (std::int64_t k = 1; k < n; ++k) {
      one_minus.set(qpow[static_cast<std::size_t>(k)]);
      one_minus.negate();
      mpfr_add_si(one_minus.re().get(), one_minus.re().get(), 1, MPFR_RNDN);
      MpComplex next(prec);
      next.mul(poch.back(), one_minus);
      poch.push_back(std::move(next));
    }
    factor.reserve(tri_offset(n, 0));
    MpComplex den(prec), br(prec);
    for (std::int64_t t = 0; t < n; ++t) {
      for (std::int64_t b = 0; b <= t; ++b) {
        den.mul(poch[static_cast<std::size_t>(t - b)], poch[static_cast<std::size_t>(b)]);
        br.div(poch[static_cast<std::size_t>(t)], den);
        MpComplex g(prec);
        const std::int64_t e = ru.reduce(b * (b - 1) / 2 - ru.reduce(b * t));
        g.mul(br, qpow[static_cast<std::size_t>(e)]);
        if (b % 2 != 0) g.negate();
        factor.push_back(std::move(g));
      }
    }
    prefactor.set(qpow[static_cast<std::size_t>(ru.reduce(1 - n))]);
  }

  const MpComplex& g(std::int64_t t, std::int64_t b) const { return factor[tri_offset(t, b)]; }
};

// Sum of all terms with outermost index n_d = top.
class BlockSummer {
 public:
  BlockSummer(const MpTables& tables, int dimension)
      : tables_(tables), dimension_(dimension), tmp_(tables.prec) {
    for (int i = 0; i <= dimension; ++i) prod_.emplace_back(tables.prec);
  }

  void sum(std::int64_t top, MpComplex& out) {
    out.set(0, 0);
    acc_ = &out;
    prod_[static_cast<std::size_t>(dimension_)].set(tables_.poch[static_cast<std::size_t>(top)]);
    descend(dimension_, top);
  }

 private:
  void descend(int level, std::int64_t upper) {
    const MpComplex& here = prod_[static_cast<std::size_t>(level)];
    if (level == 2) {
      for (std::int64_t n = 0; n <= upper; ++n) {
        tmp_.mul(here, tables_.g(upper, n));
        acc_->add(tmp_);
      }
      return;
    }
    MpComplex& next = prod_[static_cast<std::size_t>(level - 1)];
    for (std::int64_t n = 0; n <= upper; ++n) {
      next.mul(here, tables_.g(upper, n));
      descend(level - 1, n);
    }
  }

  const MpTables& tables_;
  int dimension_;
  std::vector<MpComplex> prod_;
  MpComplex tmp_;
  MpComplex* acc_ = nullptr;
};

void pairwise_sum(std::vector<MpComplex>& blocks, std::size_t lo, std::size_t hi, MpComplex& out) {
  if (hi - lo == 1) {
    out.set(blocks[lo]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  MpComplex right(mpfr_get_prec(out.re().get()));
  pairwise_sum(blocks, lo, mid, out);
  pairwise_sum(blocks, mid, hi, right);
  out.add(right);
}

MpComplex nested_sum(const MpTables& tables, int dimension, unsigned threads) {
  const std::int64_t n = tables.modulus;
  std::vector<MpComplex> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) blocks.emplace_back(tables.prec);

  // Largest blocks first for balance; each block is summed sequentially,
  // so the schedule does not affect the result.
  std::atomic<std::int64_t> next{n - 1};
  auto worker = [&] {
    BlockSummer summer(tables, dimension);
    for (std::int64_t top = next.fetch_sub(1); top >= 0; top = next.fetch_sub(1))
      summer.sum(top, blocks[static_cast<std::size_t>(top)]);
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  MpComplex total(tables.prec);
  pairwise_sum(blocks, 0, blocks.size(), total);
  return total;
}

template <typename Visit>
void enumerate_log_terms(const PochhammerTable& table, int dimension, Visit&& visit) {
  const std::int64_t n = table.root().modulus();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(dimension));
  std::vector<double> partial(static_cast<std::size_t>(dimension) + 1);
  auto rec = [&](auto&& self, int level, std::int64_t upper) -> void {
    // idx[level] = n_{level+1} is fixed; choose n_level in [0, upper].
    for (std::int64_t v = 0; v <= upper; ++v) {
      idx[static_cast<std::size_t>(level - 1)] = v;
      partial[static_cast<std::size_t>(level - 1)] =
          partial[static_cast<std::size_t>(level)] + table.bracket_log_abs(upper, v);
      if (level == 1)
        visit(partial[0], idx);
      else
        self(self, level - 1, v);
    }
  };
  for (std::int64_t top = 0; top < n; ++top) {
    idx[static_cast<std::size_t>(dimension - 1)] = top;
    partial[static_cast<std::size_t>(dimension - 1)] = table.log_abs(top);
    rec(rec, dimension - 1, top);
  }
}

}  // namespace

TwistKnotSpec::TwistKnotSpec(int p) : p_(p) {
  if (p == 0 || p == 1 || p == -1)
    throw DomainError("twist knot parameter p must satisfy p not in {0, 1} and |p| >= 2, got " +
                      std::to_string(p));
}

bool LatticeIndex::is_triangular(std::int64_t modulus) const {
  std::int64_t prev = 0;
  for (const std::int64_t v : indices) {
    if (v < prev) return false;
    prev = v;
  }
  return indices.empty() || indices.back() <= modulus - 1;
}

void LatticeIndex::validate(std::int64_t modulus, int dimension) const {
  if (static_cast<int>(indices.size()) != dimension)
    throw DomainError("lattice index has " + std::to_string(indices.size()) + " entries, expected " +
                      std::to_string(dimension));
  if (!is_triangular(modulus))
    throw DomainError("lattice index violates N-1 >= n_d >= ... >= n_1 >= 0");
}

double default_term_budget() {
  if (const char* env = std::getenv("TWISTVOL_TERM_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 2e9;
}

double lattice_size(std::int64_t modulus, int dimension) {
  // C(N + d - 1, d)
  double c = 1.0;
  for (int k = 1; k <= dimension; ++k)
    c = c * static_cast<double>(modulus - 1 + k) / static_cast<double>(k);
  return c;
}

void check_budget(std::int64_t modulus, int dimension, double budget, const char* what) {
  if (budget <= 0) budget = default_term_budget();
  const double terms = lattice_size(modulus, dimension);
  if (terms > budget)
    throw BudgetError(std::string(what) + ": " + std::to_string(static_cast<long long>(terms)) +
                          " lattice terms exceed the budget of " +
                          std::to_string(static_cast<long long>(budget)),
                      terms, budget);
}

LogComplex jones_term(const TwistKnotSpec& spec, const PochhammerTable& table, const LatticeIndex& idx) {
  const RootOfUnity& ru = table.root();
  const std::int64_t n = ru.modulus();
  const int d = spec.dimension();
  idx.validate(n, d);
  const auto& k = idx.indices;
  const std::int64_t top = k[static_cast<std::size_t>(d - 1)];

  const std::int64_t x = ru.reduce(1 - n);
  LogComplex term = (x == ru.reduce(1)) ? table.pochhammer(top) : q_pochhammer(ru, QPower{x}, top);
  term *= signed_q_power(ru, -n * top, 0);
  for (int i = 1; i <= d - 1; ++i) {
    const std::int64_t ni = k[static_cast<std::size_t>(i - 1)];
    const std::int64_t next = k[static_cast<std::size_t>(i)];
    const std::int64_t alternating = (i % 2 == 0 ? 1 : -1) * ru.reduce(n * ni);
    const std::int64_t e = alternating + inner_exponent(ru, ni, next);
    term *= signed_q_power(ru, e, ni);
    term *= table.bracket(next, ni);
  }
  return spec.mirrored() ? term.conj() : term;
}

LogComplex jones_term(const TwistKnotSpec& spec, const RootOfUnity& ru, const LatticeIndex& idx) {
  return jones_term(spec, PochhammerTable(ru), idx);
}

MaxTerm max_term(const TwistKnotSpec& spec, std::int64_t modulus, double term_budget) {
  const int d = spec.dimension();
  check_budget(modulus, d, term_budget, "max_term");
  const PochhammerTable table{RootOfUnity(modulus)};
  MaxTerm best;
  best.log_abs = -std::numeric_limits<double>::infinity();
  enumerate_log_terms(table, d, [&](double log_abs, const std::vector<std::int64_t>& idx) {
    if (log_abs > best.log_abs) {
      best.log_abs = log_abs;
      best.index.indices = idx;
    }
  });
  return best;
}

JonesValue colored_jones(const TwistKnotSpec& spec, std::int64_t modulus, const JonesOptions& options) {
  if (modulus < 1) throw DomainError("colored_jones: N must be >= 1");
  const int d = spec.dimension();
  const double budget = options.term_budget > 0 ? options.term_budget : default_term_budget();
  check_budget(modulus, d, budget, "colored_jones");
  const unsigned threads = options.threads > 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  const RootOfUnity ru(modulus);

  const double count = lattice_size(modulus, d);
  const double max_log2 = std::max(0.0, max_term(spec, modulus, budget).log_abs / std::numbers::ln2);
  // Rounding error of the sum is bounded by ~ 8d count^2 max|term| 2^-prec.
  const double noise_log2 = max_log2 + 2.0 * std::log2(count) + std::log2(8.0 * d) + 4.0;

  long prec = options.precision_bits > 0
                  ? options.precision_bits
                  : static_cast<long>(std::ceil(noise_log2)) + 72;
  const bool fixed = options.precision_bits > 0;
  for (int attempt = 0;; ++attempt) {
    const MpTables tables(ru, prec);
    MpComplex sum = nested_sum(tables, d, threads);
    const double sum_log2 = sum.is_zero() ? -1e300 : sum.log_abs() / std::numbers::ln2;
    const double margin = sum_log2 - (noise_log2 - static_cast<double>(prec));
    if (fixed || margin >= 60.0 || attempt >= 8) {
      MpComplex value(prec);
      value.mul(sum, tables.prefactor);
      JonesValue out;
      out.N = modulus;
      out.p = spec.p();
      out.precision_bits = prec;
      if (value.is_zero()) {
        out.log_abs = -std::numeric_limits<double>::infinity();
      } else {
        out.log_abs = value.log_abs();
        out.arg = value.arg();
      }
      out.value = value.to_complex();
      if (spec.mirrored()) {
        out.value = std::conj(out.value);
        out.arg = -out.arg;
      }
      return out;
    }
    prec += static_cast<long>(std::ceil(60.0 - margin)) + 32;
  }
}

std::vector<VolumeRow> volume_sequence(const TwistKnotSpec& spec, const std::vector<std::int64_t>& n_values,
                                       const JonesOptions& options) {
  if (n_values.empty()) throw DomainError("volume_sequence: N list is empty");
  std::vector<VolumeRow> rows;
  rows.reserve(n_values.size());
  for (const std::int64_t n : n_values) {
    VolumeRow row;
    row.N = n;
    try {
      JonesValue j = colored_jones(spec, n, options);
      row.v = 2.0 * std::numbers::pi * j.log_abs / static_cast<double>(n);
      row.jones = j;
    } catch (const BudgetError& e) {
      row.v = std::numeric_limits<double>::quiet_NaN();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

LimitFit extrapolate_limit(const std::vector<SequencePoint>& points) {
  if (points.size() < 4)
    throw ExtrapolationError("extrapolate_limit: need at least 4 points, got " + std::to_string(points.size()));
  std::vector<std::int64_t> ns;
  for (const auto& pt : points) {
    if (pt.N < 1) throw ExtrapolationError("extrapolate_limit: N values must be positive");
    if (!std::isfinite(pt.v)) throw ExtrapolationError("extrapolate_limit: non-finite v_N");
    ns.push_back(pt.N);
  }
  std::sort(ns.begin(), ns.end());
  if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
    throw ExtrapolationError("extrapolate_limit: N values must be distinct");

  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = static_cast<double>(points[static_cast<std::size_t>(i)].N);
    a(i, 0) = 1.0;
    a(i, 1) = std::log(n) / n;
    a(i, 2) = 1.0 / n;
    y(i) = points[static_cast<std::size_t>(i)].v;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3)
    throw ExtrapolationError(
        "extrapolate_limit: degenerate design matrix; use more N values spread over a wider range");
  const Eigen::Vector3d c = qr.solve(y);
  const Eigen::VectorXd r = a * c - y;
  LimitFit fit;
  fit.limit = c(0);
  fit.log_coefficient = c(1);
  fit.inverse_coefficient = c(2);
  fit.residual = std::sqrt(r.squaredNorm() / static_cast<double>(m));
  return fit;
}

}  // namespace twistvol
