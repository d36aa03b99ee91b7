#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lrgeom/examples.hpp"
#include "lrgeom/tasks.hpp"
#include "support.hpp"

using namespace lrgeom;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string scenario_path(const std::string& name) { return std::string(LRGEOM_SOURCE_DIR) + "/scenarios/" + name; }

std::size_t count(const Report& r, const std::string& task, Status s) {
  std::size_t n = 0;
  for (const auto& e : r.entries())
    if (e.task == task && e.status == s) ++n;
  return n;
}

}  // namespace

TEST_CASE("generator calls expand innermost first") {
  Scenario s = build_double_cone();
  const auto& L = *s.presentation;
  const auto& v = L.vars();
  CHECK(frac_eq(expand_generator_calls("X1(u1)", L), Frac(parse_poly("2*u1", v))));
  CHECK(frac_eq(expand_generator_calls("X3(X1(u3))", L), Frac(parse_poly("u1", v))));
  CHECK(expand_generator_calls("X3(X1(u1))", L).is_zero());
  CHECK(frac_eq(expand_generator_calls("b*X3(a) - c*X1(b)", L),
                Frac(parse_poly("b*(2*u3*a_2 + u1*a_3) - c*(2*u1*b_1 + u3*b_3)", v))));
  CHECK(frac_eq(expand_generator_calls("X1(a)/(a*b - c^2)", L),
                Frac(parse_poly("2*u1*a_1 + u3*a_3", v), parse_poly("a*b - c^2", v))));
  CHECK_THROWS_AS(expand_generator_calls("X1(a", L), ParseError);
}

TEST_CASE("lifted plane connection matches the shipped cone connection") {
  Scenario s = build_double_cone();
  auto plane_s = build_two_dim_metric();
  Connection plane = scenario_connection(plane_s);
  auto lifted = lift_cone_christoffels(*s.presentation, plane);
  Connection shipped = scenario_connection(s);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) CHECK(frac_eq(shipped.christoffel(i, j, k), lifted[i](j, k)));
}

TEST_CASE("double cone golden tasks") {
  Scenario s = build_double_cone();
  Report tables = run_task(s, "cone-christoffel-tables");
  CHECK(tables.passed());
  CHECK(count(tables, "cone-christoffel", Status::Pass) == 64);
  CHECK(count(tables, "cone-christoffel-printed", Status::Info) == 11);
  CHECK(count(tables, "cone-christoffel-errata", Status::Pass) == 1);

  Report curv = run_task(s, "cone-curvature-example");
  CHECK(curv.passed());
  CHECK(count(curv, "cone-curvature-example", Status::Pass) == 1);

  Report k = run_task(s, "koszul", 2);
  CHECK(k.passed());
  CHECK(k.count(Status::Pass) == 64);
  CHECK(run_task(s, "torsion").passed());
  CHECK(run_task(s, "metric").passed());
  CHECK(run_task(s, "cone-determinant").passed());
  CHECK(run_task(s, "cone-generators").passed());
}

TEST_CASE("a corrupted cone table cell is caught") {
  Scenario s = build_double_cone();
  s.connection->gamma[0](2, 0) += Frac(parse_poly("u3", s.vars()));
  Report k = run_task(s, "koszul");
  CHECK_FALSE(k.passed());
  Report t = run_task(s, "cone-christoffel-tables");
  CHECK(count(t, "cone-christoffel", Status::Fail) == 1);
}

TEST_CASE("every example passes its task list") {
  for (const auto& info : example_catalog()) {
    CAPTURE(info.name);
    Scenario s = build_example(info.name);
    RunResult r = run_tasks(s, s.tasks, 2);
    CHECK(r.passed());
    CHECK(r.count(Status::Error) == 0);
    for (const auto& t : r.tasks) {
      CAPTURE(t.task);
      CHECK_FALSE(t.report.entries().empty());
    }
  }
}

TEST_CASE("shipped scenario files equal the serialized builders") {
  for (const auto& info : example_catalog()) {
    CAPTURE(info.name);
    Scenario s = build_example(info.name);
    CHECK(slurp(scenario_path(info.name + ".json")) == scenario_dump(s));
    Scenario back = load_scenario(scenario_path(info.name + ".json"));
    CHECK(scenario_dump(back) == scenario_dump(s));
  }
}

TEST_CASE("scenario parsing diagnostics") {
  CHECK_THROWS_WITH_AS(load_scenario(scenario_path("negative/jet-in-ideal.json")), doctest::Contains("ideals must be jet-free"),
                       ScenarioError);
  Scenario s = load_scenario(scenario_path("double-cone.json"));
  CHECK(s.presentation->size() == 4);
  CHECK(s.presentation->syzygies().size() == 4);

  auto j = scenario_to_json(build_cone_adjoint());
  j["schema"] = 2;
  CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);
  j = scenario_to_json(build_cone_adjoint());
  j["presentation"]["generators"][1]["coeffs"][0] = "2*u3 +";
  try {
    scenario_from_json(j);
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    CHECK(e.pointer() == "/presentation/generators/1/coeffs/0");
  }
  j = scenario_to_json(build_cone_adjoint());
  j["presentation"]["syzygies"][0] = {"u2", "-u3"};
  CHECK_THROWS_AS(scenario_from_json(j), ScenarioError);
}

TEST_CASE("broken syzygy is reported with its column") {
  Scenario s = load_scenario(scenario_path("negative/broken.json"));
  auto bad = validate_presentation(s);
  REQUIRE(bad);
  const Entry* e = bad->first_failure();
  REQUIRE(e);
  CHECK(e->task == "syzygy");
  CHECK(e->index == std::vector<int>{2});
}

TEST_CASE("lex order round trip keeps the results") {
  Scenario s = build_a2_orbit();
  Scenario lex = scenario_from_json(scenario_to_json(s), {MonomialOrder::Lex});
  CHECK(lex.ring().order() == MonomialOrder::Lex);
  RunResult r = run_tasks(lex, {"koszul", "a2-christoffel", "a2-curvature"});
  CHECK(r.passed());
}

TEST_CASE("reports do not depend on the thread count") {
  Scenario s = build_double_cone();
  std::vector<std::string> tasks{"koszul", "metric", "cone-christoffel-tables"};
  std::string a = render_text(run_tasks(s, tasks, 1));
  std::string b = render_text(run_tasks(s, tasks, 4));
  CHECK(a == b);
  CHECK(render_json(run_tasks(s, tasks, 3)).dump() == render_json(run_tasks(s, tasks, 1)).dump());
}

TEST_CASE("unknown tasks and missing payloads become error entries") {
  Scenario s = build_cone_adjoint();
  Report r = run_task(s, "no-such-task");
  CHECK(r.count(Status::Error) == 1);
  Report m = run_task(s, "koszul");
  CHECK(m.count(Status::Error) == 1);
}
