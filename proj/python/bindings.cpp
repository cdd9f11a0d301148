#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistvol/conjecture.hpp"
#include "twistvol/dilog.hpp"
#include "twistvol/errors.hpp"
#include "twistvol/jones.hpp"
#include "twistvol/potential.hpp"
#include "twistvol/qseries.hpp"

namespace py = pybind11;
using namespace twistvol;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Colored Jones polynomials of twist knots at roots of unity";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ExtrapolationError>(m, "ExtrapolationError", PyExc_ValueError);

  m.def(
      "q_pochhammer",
      [](std::int64_t N, std::int64_t exponent, std::int64_t n) {
        return q_pochhammer(RootOfUnity(N), QPower{exponent}, n).to_rect();
      },
      py::arg("N"), py::arg("exponent"), py::arg("n"), "(q^exponent; q)_n at q = exp(2 pi i/N)");
  m.def(
      "q_binomial", [](std::int64_t N, std::int64_t top, std::int64_t bot) {
        return q_binomial(RootOfUnity(N), top, bot).to_rect();
      },
      py::arg("N"), py::arg("top"), py::arg("bot"));

  m.def("li2", [](std::complex<double> z) { return li2(z); }, py::arg("z"));
  m.def("clausen", &clausen, py::arg("theta"));
  m.def("li2_circle", &li2_circle, py::arg("n"), py::arg("N"));

  py::class_<JonesValue>(m, "JonesValue")
      .def_readonly("value", &JonesValue::value)
      .def_readonly("log_abs", &JonesValue::log_abs)
      .def_readonly("arg", &JonesValue::arg)
      .def_readonly("N", &JonesValue::N)
      .def_readonly("p", &JonesValue::p)
      .def_readonly("precision_bits", &JonesValue::precision_bits)
      .def("__repr__", [](const JonesValue& j) {
        return "JonesValue(p=" + std::to_string(j.p) + ", N=" + std::to_string(j.N) +
               ", log_abs=" + format_number(j.log_abs) + ")";
      });

  m.def(
      "colored_jones",
      [](int p, std::int64_t N, double term_budget, unsigned threads) {
        JonesOptions o;
        o.term_budget = term_budget;
        o.threads = threads;
        py::gil_scoped_release release;
        return colored_jones(TwistKnotSpec(p), N, o);
      },
      py::arg("p"), py::arg("N"), py::arg("term_budget") = 0.0, py::arg("threads") = 0);

  m.def(
      "volume_sequence",
      [](int p, const std::vector<std::int64_t>& ns, double term_budget) {
        JonesOptions o;
        o.term_budget = term_budget;
        std::vector<std::pair<std::int64_t, double>> out;
        {
          py::gil_scoped_release release;
          for (const auto& r : volume_sequence(TwistKnotSpec(p), ns, o)) out.emplace_back(r.N, r.v);
        }
        return out;
      },
      py::arg("p"), py::arg("N_values"), py::arg("term_budget") = 0.0, "list of (N, v_N)");

  m.def(
      "extrapolate_limit",
      [](const std::vector<std::pair<std::int64_t, double>>& pts) {
        std::vector<SequencePoint> sp;
        for (auto [n, v] : pts) sp.push_back({n, v});
        LimitFit f = extrapolate_limit(sp);
        return py::dict(py::arg("limit") = f.limit, py::arg("residual") = f.residual,
                        py::arg("log_coefficient") = f.log_coefficient,
                        py::arg("inverse_coefficient") = f.inverse_coefficient);
      },
      py::arg("points"));

  m.def(
      "potential_f", [](int p, const ComplexVector& z) { return potential_f({p, z}); }, py::arg("p"), py::arg("z"));
  m.def(
      "grad_f", [](int p, const ComplexVector& z) { return grad_f({p, z}); }, py::arg("p"), py::arg("z"));

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_readonly("p", &CriticalPoint::p)
      .def_readonly("a", &CriticalPoint::a)
      .def_readonly("residual", &CriticalPoint::residual)
      .def_readonly("volume", &CriticalPoint::volume)
      .def_readonly("potential", &CriticalPoint::potential)
      .def_readonly("start_index", &CriticalPoint::start_index)
      .def_readonly("min_re_margin", &CriticalPoint::min_re_margin)
      .def_readonly("min_cut_distance", &CriticalPoint::min_cut_distance)
      .def_readonly("gradient_norm", &CriticalPoint::gradient_norm)
      .def_readonly("branch_shift", &CriticalPoint::branch_shift);

  m.def(
      "solve_critical",
      [](int p, std::uint64_t seed) {
        SolverConfig c;
        c.seed = seed;
        return solve_critical_for_knot(TwistKnotSpec(p), c);
      },
      py::arg("p"), py::arg("seed") = SolverConfig{}.seed);

  m.def(
      "grid_max_im_f", [](int p, std::int64_t N) { return grid_max_im_f(p, N).best_value; }, py::arg("p"),
      py::arg("N"));

  m.def(
      "run_experiment",
      [](int p, const std::vector<std::int64_t>& ns, std::uint64_t seed, const std::map<std::string, double>& tol,
         const std::vector<std::int64_t>& grid_ns, std::int64_t grid_ref) {
        ExperimentConfig c;
        c.p = p;
        c.n_values = ns;
        c.seed = seed;
        c.tolerances = tol;
        c.grid_n_values = grid_ns;
        c.grid_reference_n = grid_ref;
        std::string json;
        {
          py::gil_scoped_release release;
          json = report_to_json(run_experiment(c));
        }
        return json;
      },
      py::arg("p") = 2, py::arg("N_values") = ExperimentConfig{}.n_values, py::arg("seed") = ExperimentConfig{}.seed,
      py::arg("tolerances") = std::map<std::string, double>{}, py::arg("grid_N_values") = ExperimentConfig{}.grid_n_values,
      py::arg("grid_reference_N") = ExperimentConfig{}.grid_reference_n, "report as a JSON string");

  m.def(
      "run_lemma_suite",
      [](const std::string& suite, std::uint64_t seed) {
        py::list out;
        for (const auto& c : run_lemma_suite(suite, seed))
          out.append(py::dict(py::arg("name") = c.name, py::arg("lemma") = c.lemma,
                              py::arg("status") = to_string(c.status), py::arg("measured") = c.measured,
                              py::arg("tolerance") = c.tolerance));
        return out;
      },
      py::arg("suite") = "all", py::arg("seed") = 1);
}
