#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lrgeom/cli.hpp"
#include "lrgeom/examples.hpp"
#include "lrgeom/tasks.hpp"

namespace py = pybind11;
using namespace lrgeom;

namespace {

ScenarioOptions options(const std::string& order) { return {parse_order(order)}; }

Scenario scenario_from_text(const std::string& text, const std::string& order) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j, options(order));
}

std::string run_report(const Scenario& s, std::vector<std::string> tasks, unsigned threads) {
  if (tasks.empty()) tasks = s.tasks;
  return render_json(run_tasks(s, tasks, threads)).dump();
}

std::vector<std::vector<std::vector<std::string>>> matrices(const std::vector<Mat>& ms, const VarTable& v) {
  std::vector<std::vector<std::vector<std::string>>> out;
  for (const auto& m : ms) out.push_back(matrix_strings(m, v));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact verification of connections on Lie-Rinehart algebras";
  m.attr("__version__") = kVersion;

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("list_examples", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : example_catalog()) out.push_back({e.name, e.summary});
    return out;
  });
  m.def("example_scenario", [](const std::string& name) { return scenario_dump(build_example(name)); },
        py::arg("name"), "Scenario JSON text of a built-in example");
  m.def("normalize_scenario",
        [](const std::string& text, const std::string& order) { return scenario_dump(scenario_from_text(text, order)); },
        py::arg("text"), py::arg("order") = "grevlex");
  m.def(
      "run_example",
      [](const std::string& name, std::vector<std::string> tasks, unsigned threads) {
        py::gil_scoped_release release;
        return run_report(build_example(name), std::move(tasks), threads);
      },
      py::arg("name"), py::arg("tasks") = std::vector<std::string>{}, py::arg("threads") = 1,
      "JSON report text; an empty task list runs the example's tasks");
  m.def(
      "run_scenario",
      [](const std::string& text, std::vector<std::string> tasks, unsigned threads, const std::string& order) {
        Scenario s = scenario_from_text(text, order);
        py::gil_scoped_release release;
        return run_report(s, std::move(tasks), threads);
      },
      py::arg("text"), py::arg("tasks") = std::vector<std::string>{}, py::arg("threads") = 1,
      py::arg("order") = "grevlex");
  m.def(
      "solve_levi_civita",
      [](const std::string& text) {
        Scenario s = scenario_from_text(text, "grevlex");
        if (!s.metric) throw DomainError("scenario has no metric");
        Connection c = koszul_solve_free(s.presentation, *s.metric);
        return matrices(c.gammas(), s.vars());
      },
      py::arg("text"), "Christoffel matrices, row convention: [i][mu][nu] = Gamma_{i mu}^nu");
  m.def(
      "curvature",
      [](const std::string& text, std::size_t i, std::size_t j) {
        Scenario s = scenario_from_text(text, "grevlex");
        Mat r = curvature_at(scenario_connection(s), i, j);
        return matrix_strings(nf(r, s.ring()), s.vars());
      },
      py::arg("text"), py::arg("i"), py::arg("j"), "R(X_i, X_j) in row convention, 0-based generators");
  m.def(
      "normal_form",
      [](const std::vector<std::string>& vars, const std::vector<std::string>& ideal, const std::string& expr,
         const std::string& order) {
        auto v = std::make_shared<const VarTable>(vars);
        std::vector<Poly> gens;
        for (const auto& g : ideal) gens.push_back(parse_poly(g, *v));
        QuotientRing R(v, gens, parse_order(order));
        return R.str(R.nf(parse_poly(expr, *v)));
      },
      py::arg("vars"), py::arg("ideal"), py::arg("expr"), py::arg("order") = "grevlex");
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit code, stdout, stderr)");
}
