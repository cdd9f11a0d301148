#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistvol/jones.hpp"
#include "twistvol/potential.hpp"

namespace twistvol {

enum class CheckStatus { passed, failed, skipped };

const char* to_string(CheckStatus status);

/// Outcome of one numerical lemma check. `measured` is the quantity compared
/// against `tolerance`; `series` holds per-N (or per-parameter) values.
struct CheckResult {
  std::string name;
  std::string lemma;
  CheckStatus status = CheckStatus::skipped;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
  std::vector<std::pair<double, double>> series;

  bool failed() const noexcept { return status == CheckStatus::failed; }
};

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

/// |(2 pi/N) log|(q)_n| + Cl2(2 pi n/N)| for n = floor(alpha N). Passes when
/// the difference decreases along N_values and the last one is below tolerance.
CheckResult check_lemma_101(Rational alpha, const std::vector<std::int64_t>& n_values, double tolerance = 0.05);

/// Exhaustive check of |(q)_{n_d}| prod |[n_{i+1}; n_i]| <= N 2^{(N-1)(2p-1)};
/// `measured` is the largest ratio term/bound over the lattice.
CheckResult check_lemma_114(int p, std::int64_t modulus, double term_budget = 0.0);

/// min over N_values of |J_N|; passes when every |J_N| >= 1.
CheckResult check_lemma_121(int p, const std::vector<std::int64_t>& n_values, const JonesOptions& options = {});

/// Li2(z) + Li2(-z) - Li2(z^2)/2 at `count` seeded random points, |z| <= 0.99.
CheckResult check_lemma_100(std::uint64_t seed, int count = 10000, double tolerance = 1e-10);

/// |Li2(exp(2 pi i n/N)) - pi^2/6| for n in {1, 2, 3}, N = 8n 2^k up to 2^14 n.
CheckResult check_lemma_98(double tolerance = 1e-2);

/// (2 pi/N) log|[b; a]| against Im[L(a) - L(b) + L(b - a)] at fixed ratios.
CheckResult check_corollary_102(Rational lower, Rational upper, const std::vector<std::int64_t>& n_values,
                                double tolerance = 0.05);

/// |Im f_lattice(n) - Im f(exp(2 pi i n/N))| at fixed ratios n_i/N.
CheckResult check_lemma_103(int p, const std::vector<Rational>& ratios, const std::vector<std::int64_t>& n_values,
                            double tolerance = 0.05);

/// At the lattice index maximizing |term|, (2 pi/N) log|term| against Im f_lattice there.
CheckResult check_lemma_106(int p, const std::vector<std::int64_t>& n_values, double tolerance = 0.1,
                            double term_budget = 0.0);

/// Standalone check suites: "qseries", "dilog", "bounds", "asymptotics", "all".
std::vector<CheckResult> run_lemma_suite(const std::string& suite, std::uint64_t seed = 1);

const std::vector<std::string>& lemma_suite_names();

struct ExperimentConfig {
  int p = 2;
  std::vector<std::int64_t> n_values{50, 100, 150, 200, 250, 300, 350, 400};
  double term_budget = 0.0;                ///< 0 selects default_term_budget()
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  std::vector<std::int64_t> grid_n_values{30, 60, 120};
  std::int64_t grid_reference_n = 60;

  /// Throws ConfigError on invalid values or unknown tolerance names.
  void validate() const;
  /// Tolerance by name, falling back to the default.
  double tolerance(const std::string& name) const;
};

/// Tolerance names accepted in ExperimentConfig::tolerances with their defaults for p.
std::map<std::string, double> default_tolerances(int p);

struct ReportRow {
  std::int64_t N = 0;
  double v = 0.0;
  double lower_proxy = 0.0;        ///< (2pi/N) log(max term / (N 2^{(N-1)(2p-1)}))
  double upper_proxy = 0.0;        ///< (2pi/N) log(N^{2p-1} max term)
  double lower_proxy_paper = 0.0;  ///< (2pi/N) log(max term / N), constant dropped
  double log_abs_jones = 0.0;
  double max_term_log_abs = 0.0;
  long precision_bits = 0;
};

struct ConvergenceReport {
  int p = 2;
  std::uint64_t seed = 0;
  double term_budget = 0.0;
  std::vector<ReportRow> rows;
  std::optional<LimitFit> fit;
  std::optional<LimitFit> fit_n_le_200;
  double extrapolated = 0.0;
  double potential_volume = 0.0;
  double gap = 0.0;
  CriticalPoint critical;
  std::vector<std::pair<std::int64_t, double>> grid_max;
  std::map<std::string, double> tolerances;
  bool defaults_applied = false;
  std::vector<CheckResult> lemma_checks;
  std::vector<std::string> notes;

  bool all_passed() const;
};

/// Runs the Jones sequence, extrapolation, critical-point solve, lattice
/// maximization and every lemma check. Failed checks are recorded, never
/// thrown; only budget and solver errors propagate.
ConvergenceReport run_experiment(const ExperimentConfig& config);

/// JSON with stable key order; numbers rounded to 15 significant digits.
std::string report_to_json(const ConvergenceReport& report);
/// Columns N, v_N, lower_proxy, upper_proxy.
std::string report_to_csv(const ConvergenceReport& report);

/// Shortest decimal form of x with at most 15 significant digits.
std::string format_number(double x);

}  // namespace twistvol
