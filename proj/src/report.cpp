#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "twistvol/conjecture.hpp"

namespace twistvol {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

ordered_json complex_pair(std::complex<double> z) { return ordered_json::array({num(z.real()), num(z.imag())}); }

ordered_json fit_json(const std::optional<LimitFit>& fit) {
  if (!fit) return nullptr;
  ordered_json j;
  j["limit"] = num(fit->limit);
  j["fit_residual"] = num(fit->residual);
  j["log_coefficient"] = num(fit->log_coefficient);
  j["inverse_coefficient"] = num(fit->inverse_coefficient);
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string report_to_json(const ConvergenceReport& rep) {
  ordered_json j;
  j["schema_version"] = 1;
  j["p"] = rep.p;
  j["seed"] = rep.seed;
  j["term_budget"] = num(rep.term_budget);
  ordered_json tol = ordered_json::object();
  for (const auto& [k, v] : rep.tolerances) tol[k] = num(v);
  j["tolerances"] = tol;
  j["defaults_applied"] = rep.defaults_applied;

  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    ordered_json row;
    row["N"] = r.N;
    row["v_N"] = num(r.v);
    row["lower_proxy"] = num(r.lower_proxy);
    row["upper_proxy"] = num(r.upper_proxy);
    row["lower_proxy_paper"] = num(r.lower_proxy_paper);
    row["log_abs_jones"] = num(r.log_abs_jones);
    row["max_term_log_abs"] = num(r.max_term_log_abs);
    row["precision_bits"] = r.precision_bits;
    rows.push_back(row);
  }
  j["per_N"] = rows;
  j["extrapolation"] = fit_json(rep.fit);
  j["extrapolation_n_le_200"] = fit_json(rep.fit_n_le_200);
  j["extrapolated"] = num(rep.extrapolated);
  j["potential_volume"] = num(rep.potential_volume);
  j["gap"] = num(rep.gap);

  ordered_json cp;
  ordered_json a = ordered_json::array();
  for (auto z : rep.critical.a) a.push_back(complex_pair(z));
  cp["a"] = a;
  cp["residual"] = num(rep.critical.residual);
  cp["volume"] = num(rep.critical.volume);
  cp["potential"] = complex_pair(rep.critical.potential);
  cp["start_index"] = rep.critical.start_index;
  cp["min_re_margin"] = num(rep.critical.min_re_margin);
  cp["min_cut_distance"] = num(rep.critical.min_cut_distance);
  cp["gradient_norm"] = num(rep.critical.gradient_norm);
  cp["branch_shift"] = rep.critical.branch_shift;
  j["critical_point"] = cp;

  ordered_json grid = ordered_json::array();
  for (const auto& [n, v] : rep.grid_max) grid.push_back({{"N", n}, {"value", num(v)}});
  j["grid_max"] = grid;

  ordered_json checks = ordered_json::object();
  for (const auto& c : rep.lemma_checks) {
    ordered_json cj;
    cj["lemma"] = c.lemma;
    cj["status"] = to_string(c.status);
    cj["passed"] = c.status == CheckStatus::passed;
    cj["measured"] = num(c.measured);
    cj["tolerance"] = num(c.tolerance);
    cj["note"] = c.note;
    ordered_json s = ordered_json::array();
    for (const auto& [x, y] : c.series) s.push_back(ordered_json::array({num(x), num(y)}));
    cj["series"] = s;
    checks[c.name] = cj;
  }
  j["lemma_checks"] = checks;
  j["all_passed"] = rep.all_passed();
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const ConvergenceReport& rep) {
  std::ostringstream out;
  out << "N,v_N,lower_proxy,upper_proxy\n";
  for (const auto& r : rep.rows)
    out << r.N << ',' << format_number(r.v) << ',' << format_number(r.lower_proxy) << ','
        << format_number(r.upper_proxy) << '\n';
  return out.str();
}

}  // namespace twistvol
