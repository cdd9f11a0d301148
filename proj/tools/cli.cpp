#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistvol/conjecture.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/jones.hpp"
#include "twistvol/potential.hpp"

namespace twistvol::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> p;
  std::optional<std::int64_t> n;
  std::optional<std::string> n_values;
  std::optional<std::string> grid_n_values;
  std::optional<std::int64_t> grid_reference_n;
  std::string format = "plain";
  std::optional<std::string> output;
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> budget;
  std::vector<std::string> tol;
  std::string suite = "all";
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::int64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError(std::string("invalid integer '") + item + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw UsageError("invalid number '" + text + "' for " + what);
  return v;
}

std::pair<std::string, double> parse_tol(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + text + "'");
  std::string name = trim(text.substr(0, eq));
  return {name, parse_real(trim(text.substr(eq + 1)), "tolerance " + name)};
}

/// Flat key = value file; keys mirror the long flag names. Values already
/// given on the command line win.
void apply_config_file(const std::string& path, Options& o, const CLI::App& cmd) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  auto given = [&](const char* flag) { return cmd.count(flag) > 0; };
  std::vector<std::string> file_tols;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "p") {
      if (!given("--p")) o.p = static_cast<int>(parse_list(value, "p").at(0));
    } else if (key == "n-values") {
      if (!given("--n-values")) o.n_values = value;
    } else if (key == "grid-n-values") {
      if (!given("--grid-n-values")) o.grid_n_values = value;
    } else if (key == "grid-reference-n") {
      if (!given("--grid-reference-n")) o.grid_reference_n = parse_list(value, key.c_str()).at(0);
    } else if (key == "seed") {
      if (!given("--seed")) o.seed = static_cast<std::uint64_t>(parse_list(value, "seed").at(0));
    } else if (key == "threads") {
      if (!given("--threads")) o.threads = static_cast<unsigned>(parse_list(value, "threads").at(0));
    } else if (key == "budget") {
      if (!given("--budget")) o.budget = parse_real(value, "budget");
    } else if (key == "output") {
      if (!given("--output")) o.output = value;
    } else if (key == "format") {
      if (!given("--format")) o.format = value;
    } else if (key.rfind("tol.", 0) == 0) {
      file_tols.push_back(key.substr(4) + "=" + value);
    } else {
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  // Command-line tolerances are applied last and therefore override.
  file_tols.insert(file_tols.end(), o.tol.begin(), o.tol.end());
  o.tol = std::move(file_tols);
}

int require_p(const Options& o) {
  if (!o.p) throw UsageError("--p is required");
  if (*o.p == 0 || *o.p == 1 || *o.p == -1) throw UsageError("p must lie in Z \\ {-1, 0, 1}; got " + std::to_string(*o.p));
  return *o.p;
}

JonesOptions jones_options(const Options& o) {
  JonesOptions j;
  if (o.budget) j.term_budget = *o.budget;
  if (o.threads) j.threads = *o.threads;
  return j;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output) {
    std::ofstream f(*o.output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + *o.output + "'");
    f << text;
  } else {
    out << text;
  }
}

std::string fmt(double x) { return format_number(x); }

std::string complex_text(std::complex<double> z) {
  std::string im = fmt(std::abs(z.imag()));
  return fmt(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + im + "i";
}

int cmd_jones(const Options& o, std::ostream& out) {
  int p = require_p(o);
  if (!o.n) throw UsageError("--n is required");
  if (*o.n < 1) throw UsageError("N must be >= 1");
  TwistKnotSpec spec(p);
  JonesValue j = colored_jones(spec, *o.n, jones_options(o));
  double v = 2.0 * std::numbers::pi * j.log_abs / static_cast<double>(j.N);
  double abs = std::exp(j.log_abs);
  std::ostringstream s;
  if (o.format == "json") {
    ordered_json js;
    js["p"] = p;
    js["N"] = j.N;
    js["re"] = fmt(j.value.real());
    js["im"] = fmt(j.value.imag());
    js["abs"] = fmt(abs);
    js["log_abs"] = fmt(j.log_abs);
    js["arg"] = fmt(j.arg);
    js["v"] = fmt(v);
    js["precision_bits"] = j.precision_bits;
    s << js.dump(2) << "\n";
  } else if (o.format == "csv") {
    s << "p,N,re,im,abs,log_abs,arg,v\n"
      << p << ',' << j.N << ',' << fmt(j.value.real()) << ',' << fmt(j.value.imag()) << ',' << fmt(abs) << ','
      << fmt(j.log_abs) << ',' << fmt(j.arg) << ',' << fmt(v) << "\n";
  } else {
    s << "p = " << p << "\nN = " << j.N << "\nvalue = " << complex_text(j.value) << "\nabs = " << fmt(abs)
      << "\nlog_abs = " << fmt(j.log_abs) << "\narg = " << fmt(j.arg) << "\nv = " << fmt(v)
      << "\nprecision_bits = " << j.precision_bits << "\n";
  }
  emit(s.str(), o, out);
  return ok;
}

int cmd_volume(const Options& o, std::ostream& out) {
  int p = require_p(o);
  SolverConfig cfg;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  CriticalPoint cp = solve_critical_for_knot(TwistKnotSpec(p), cfg);
  std::ostringstream s;
  if (o.format == "json") {
    ordered_json js;
    js["p"] = p;
    ordered_json a = ordered_json::array();
    for (auto z : cp.a) a.push_back({fmt(z.real()), fmt(z.imag())});
    js["a"] = a;
    js["residual"] = fmt(cp.residual);
    js["volume"] = fmt(cp.volume);
    js["potential"] = {fmt(cp.potential.real()), fmt(cp.potential.imag())};
    js["start_index"] = cp.start_index;
    js["min_re_margin"] = fmt(cp.min_re_margin);
    js["min_cut_distance"] = fmt(cp.min_cut_distance);
    js["gradient_norm"] = fmt(cp.gradient_norm);
    js["branch_shift"] = cp.branch_shift;
    s << js.dump(2) << "\n";
  } else if (o.format == "csv") {
    s << "i,re,im\n";
    for (std::size_t i = 0; i < cp.a.size(); ++i)
      s << i + 1 << ',' << fmt(cp.a[i].real()) << ',' << fmt(cp.a[i].imag()) << "\n";
  } else {
    s << "p = " << p << "\n";
    for (std::size_t i = 0; i < cp.a.size(); ++i) s << "a" << i + 1 << " = " << complex_text(cp.a[i]) << "\n";
    s << "residual = " << fmt(cp.residual) << "\ngradient_norm = " << fmt(cp.gradient_norm) << "\nbranch_shift =";
    for (int k : cp.branch_shift) s << ' ' << k;
    s << "\nvolume = " << fmt(cp.volume) << "\n";
  }
  emit(s.str(), o, out);
  return ok;
}

std::string check_line(const CheckResult& c) {
  std::ostringstream s;
  s << c.name << "  " << c.lemma << "  measured=" << fmt(c.measured) << "  tolerance=" << fmt(c.tolerance) << "  "
    << to_string(c.status);
  if (!c.note.empty()) s << "  (" << c.note << ")";
  return s.str();
}

int cmd_verify(const Options& o, std::ostream& out) {
  ExperimentConfig cfg;
  if (o.p) cfg.p = require_p(o);
  if (o.n_values) cfg.n_values = parse_list(*o.n_values, "--n-values");
  if (o.grid_n_values) cfg.grid_n_values = parse_list(*o.grid_n_values, "--grid-n-values");
  if (o.grid_reference_n) cfg.grid_reference_n = *o.grid_reference_n;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
  if (o.budget) cfg.term_budget = *o.budget;
  for (const auto& t : o.tol) {
    auto [name, value] = parse_tol(t);
    cfg.tolerances[name] = value;
  }
  ConvergenceReport rep = run_experiment(cfg);
  std::string prefix = o.output.value_or("twistvol_report");
  for (const char* ext : {".json", ".csv"})
    if (prefix.size() > 5 && prefix.ends_with(ext)) prefix.resize(prefix.size() - std::char_traits<char>::length(ext));
  {
    std::ofstream f(prefix + ".json", std::ios::binary);
    if (!f) throw UsageError("cannot write '" + prefix + ".json'");
    f << report_to_json(rep);
    std::ofstream c(prefix + ".csv", std::ios::binary);
    if (!c) throw UsageError("cannot write '" + prefix + ".csv'");
    c << report_to_csv(rep);
  }
  if (o.format == "json") {
    out << report_to_json(rep);
  } else if (o.format == "csv") {
    out << report_to_csv(rep);
  } else {
    out << "extrapolated = " << fmt(rep.extrapolated) << "\npotential_volume = " << fmt(rep.potential_volume)
        << "\ngap = " << fmt(rep.gap) << "\n";
    for (const auto& c : rep.lemma_checks) out << check_line(c) << "\n";
    out << "report = " << prefix << ".json, " << prefix << ".csv\n";
  }
  return rep.all_passed() ? ok : check_failed;
}

int cmd_lemmas(const Options& o, std::ostream& out) {
  std::vector<CheckResult> checks;
  try {
    checks = run_lemma_suite(o.suite, o.seed.value_or(1));
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  bool failed = false;
  std::ostringstream s;
  if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
      arr.push_back({{"name", c.name},
                     {"lemma", c.lemma},
                     {"status", to_string(c.status)},
                     {"measured", fmt(c.measured)},
                     {"tolerance", fmt(c.tolerance)},
                     {"note", c.note}});
    }
    s << arr.dump(2) << "\n";
  } else if (o.format == "csv") {
    s << "name,lemma,measured,tolerance,status\n";
    for (const auto& c : checks)
      s << c.name << ',' << c.lemma << ',' << fmt(c.measured) << ',' << fmt(c.tolerance) << ',' << to_string(c.status)
        << "\n";
  } else {
    for (const auto& c : checks) s << check_line(c) << "\n";
  }
  for (const auto& c : checks) failed = failed || c.failed();
  emit(s.str(), o, out);
  return failed ? check_failed : ok;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  int p = require_p(o);
  if (!o.n_values) throw UsageError("--n-values is required");
  auto ns = parse_list(*o.n_values, "--n-values");
  for (auto n : ns)
    if (n < 1) throw UsageError("N values must be >= 1");
  auto rows = volume_sequence(TwistKnotSpec(p), ns, jones_options(o));
  bool budget_hit = false;
  std::ostringstream s;
  if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row;
      row["N"] = r.N;
      row["v_N"] = fmt(r.v);
      row["log_abs"] = r.jones ? ordered_json(fmt(r.jones->log_abs)) : ordered_json(nullptr);
      row["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
      arr.push_back(row);
    }
    s << arr.dump(2) << "\n";
  } else {
    const char* sep = o.format == "csv" ? "," : "  ";
    s << "N" << sep << "v_N" << sep << "log_abs\n";
    for (const auto& r : rows)
      s << r.N << sep << fmt(r.v) << sep << (r.jones ? fmt(r.jones->log_abs) : std::string("nan")) << "\n";
  }
  for (const auto& r : rows) budget_hit = budget_hit || r.error.has_value();
  emit(s.str(), o, out);
  return budget_hit ? budget : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored Jones polynomials of twist knots and the volume conjecture"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "plain, json or csv")->check(CLI::IsMember({"plain", "json", "csv"}));
    c->add_option("--output", o.output, "write to this path instead of stdout");
  };
  auto add_compute = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    c->add_option("--budget", o.budget, "maximum lattice size (default: TWISTVOL_TERM_BUDGET or 2e9)");
  };

  auto* jones = app.add_subcommand("jones", "J_N at q = exp(2 pi i/N)");
  jones->add_option("--p", o.p, "twist parameter")->required();
  jones->add_option("--n", o.n, "color N")->required();
  add_format(jones);
  add_compute(jones);

  auto* volume = app.add_subcommand("volume", "critical point of the potential and Im f");
  volume->add_option("--p", o.p, "twist parameter")->required();
  volume->add_option("--seed", o.seed, "multi-start seed");
  volume->add_option("--threads", o.threads, "worker threads");
  add_format(volume);

  auto* verify = app.add_subcommand("verify", "full experiment; writes PREFIX.json and PREFIX.csv");
  verify->add_option("--config", o.config, "flat key = value file");
  verify->add_option("--p", o.p, "twist parameter");
  verify->add_option("--n-values", o.n_values, "comma separated N list");
  verify->add_option("--grid-n-values", o.grid_n_values, "comma separated grid N list");
  verify->add_option("--grid-reference-n", o.grid_reference_n, "grid N compared with Im f(a)");
  verify->add_option("--seed", o.seed, "multi-start and sampling seed");
  verify->add_option("--tol", o.tol, "name=value tolerance override")->allow_extra_args(false);
  verify->add_option("--format", o.format, "summary format")->check(CLI::IsMember({"plain", "json", "csv"}));
  verify->add_option("--output", o.output, "report path prefix");
  add_compute(verify);

  auto* lemmas = app.add_subcommand("lemmas", "standalone lemma checks");
  lemmas->add_option("--suite", o.suite, "all, qseries, dilog, bounds or asymptotics");
  lemmas->add_option("--seed", o.seed, "sampling seed");
  add_format(lemmas);

  auto* sweep = app.add_subcommand("sweep", "v_N over a list of N");
  sweep->add_option("--p", o.p, "twist parameter")->required();
  sweep->add_option("--n-values", o.n_values, "comma separated N list")->required();
  add_format(sweep);
  add_compute(sweep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    if (*verify) {
      if (o.config) apply_config_file(*o.config, o, *verify);
      return cmd_verify(o, out);
    }
    if (*jones) return cmd_jones(o, out);
    if (*volume) return cmd_volume(o, out);
    if (*lemmas) return cmd_lemmas(o, out);
    if (*sweep) return cmd_sweep(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return budget;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (best residual " << format_number(e.best_residual()) << ")\n";
    return solver;
  }
  return usage;
}

}  // namespace twistvol::cli
