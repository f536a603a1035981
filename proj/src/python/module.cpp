#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sievekit/sievekit.hpp"

#ifndef VERSION_INFO
#define VERSION_INFO SIEVEKIT_VERSION
#endif

namespace py = pybind11;
using namespace sievekit;

namespace {

py::object to_python(const nlohmann::json& j) {
  if (j.is_null()) return py::none();
  if (j.is_boolean()) return py::bool_(j.get<bool>());
  if (j.is_number_integer()) return py::int_(j.get<std::int64_t>());
  if (j.is_number()) return py::float_(j.get<double>());
  if (j.is_string()) return py::str(j.get<std::string>());
  if (j.is_array()) {
    py::list out;
    for (const auto& v : j) out.append(to_python(v));
    return out;
  }
  py::dict out;
  for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
  return out;
}

py::dict report_dict(const BoundReport& r) { return to_python(to_json(r)).cast<py::dict>(); }

SieveProblem problem_from_kwargs(const std::string& kind, const py::kwargs& kwargs) {
  ProblemParams p;
  p.kind = parse_problem_kind(kind);
  for (const auto& [key, value] : kwargs) {
    const auto name = key.cast<std::string>();
    const auto v = value.cast<Int>();
    if (name == "x") p.x = v;
    else if (name == "y") p.y = v;
    else if (name == "N") p.N = v;
    else if (name == "k") p.k = v;
    else if (name == "l") p.l = v;
    else if (name == "r") p.r = v;
    else throw ConfigError("unknown problem parameter '" + name + "'");
  }
  return build_problem(p);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact sieve counts, classical sieve bounds and large-sieve checks.";
  m.attr("__version__") = VERSION_INFO;

  static py::exception<Error> error(m, "Error");
  static py::exception<DomainError> domain_error(m, "DomainError", error.ptr());
  static py::exception<BudgetError> budget_error(m, "BudgetError", error.ptr());
  static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const BudgetError& e) {
      py::set_error(budget_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("primes_below", &primes_below, py::arg("z"));
  m.def("mobius", &mobius, py::arg("n"));
  m.def("euler_phi", &euler_phi, py::arg("n"));
  m.def("li", &li, py::arg("x"));

  py::class_<SieveProblem>(m, "Problem")
      .def(py::init(&problem_from_kwargs), py::arg("kind"))
      .def_static("from_config", [](const std::string& text) { return build_problem(ProblemParams::from_config(text)); })
      .def_static("interval", &make_interval, py::arg("M"), py::arg("N"))
      .def("describe", &SieveProblem::describe)
      .def("to_config", [](const SieveProblem& p) { return p.params().to_config(); })
      .def_property_readonly("kind", [](const SieveProblem& p) { return std::string(to_string(p.kind())); })
      .def_property_readonly("size", &SieveProblem::size)
      .def_property_readonly("X", [](const SieveProblem& p) { return to_double(p.X()); })
      .def("__repr__", [](const SieveProblem& p) { return "<Problem " + p.describe() + ">"; });

  m.def("exact_sift", [](const SieveProblem& p, Int z) { return exact_sift(p, z); }, py::arg("problem"), py::arg("z"));
  m.def(
      "legendre",
      [](const SieveProblem& p, Int z) {
        const auto d = legendre_decompose(p, z);
        py::dict out;
        out["total"] = d.total;
        out["main"] = to_string(d.main);
        out["remainder"] = to_string(d.remainder);
        out["divisors"] = d.divisors;
        return out;
      },
      py::arg("problem"), py::arg("z"));
  m.def(
      "brun_pure",
      [](const SieveProblem& p, Int z, int ell, const std::string& parity) {
        const auto dir = parity == "lower" ? Direction::lower : Direction::upper;
        return report_dict(pure_sieve_bound(p, {z, ell, dir}));
      },
      py::arg("problem"), py::arg("z"), py::arg("ell"), py::arg("parity") = "upper");
  m.def(
      "selberg",
      [](const SieveProblem& p, Int z, bool crude) { return report_dict(selberg_upper_bound(p, z, crude)); },
      py::arg("problem"), py::arg("z"), py::arg("crude") = false);
  m.def(
      "linnik", [](const SieveProblem& p, Int z) { return report_dict(linnik_bound(p, z)); }, py::arg("problem"),
      py::arg("z"));
  m.def(
      "rosser",
      [](const SieveProblem& p, Int z, double D, int r, double beta) {
        LinearSieveOptions options;
        options.beta = beta;
        return report_dict(linear_sieve_bound(p, z, D, r, options));
      },
      py::arg("problem"), py::arg("z"), py::arg("D"), py::arg("parity") = 1, py::arg("beta") = 2.0);

  m.def(
      "sieve_functions",
      [](double tau_max, double step) {
        const auto t = solve_sieve_functions(tau_max, step);
        std::vector<std::tuple<double, double, double>> rows;
        for (std::size_t i = 1; i < t.size(); ++i) rows.emplace_back(t.tau_at(i), t.phi0_at(i), t.phi1_at(i));
        return rows;
      },
      py::arg("tau_max") = 10.0, py::arg("step") = 1e-3);

  m.def("chen_weight", [](Int n, Int N) { return to_double(chen_weight(n, N)); }, py::arg("n"), py::arg("N"));
  m.def(
      "chen",
      [](Int N) {
        const auto r = chen_decomposition(N);
        py::dict out;
        out["N"] = r.N;
        out["lhs"] = r.lhs;
        out["term1"] = r.term1;
        out["term2"] = r.term2;
        out["term3"] = r.term3;
        out["rhs"] = to_double(r.rhs);
        out["holds"] = r.holds;
        return out;
      },
      py::arg("N"));

  m.def(
      "verify",
      [](const std::string& suite, const std::string& budget, std::uint64_t seed) {
        const auto result = run_verify(suite, parse_verify_budget(budget), seed);
        py::list out;
        for (const auto& c : result.checks) {
          py::dict row;
          row["suite"] = c.suite;
          row["name"] = c.name;
          row["passed"] = c.passed;
          row["detail"] = c.detail;
          out.append(row);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("budget") = "small", py::arg("seed") = 1);
}
