#include "lrgeom/cli.hpp"

#include <algorithm>
#include <fstream>

#include "CLI11.hpp"
#include "lrgeom/examples.hpp"
#include "lrgeom/tasks.hpp"

namespace lrgeom {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string json_path;
  std::string order = "grevlex";
  unsigned threads = 1;
  bool lazy = false;
};

Scenario reorder(const Scenario& s, const ScenarioOptions& opts) {
  if (opts.order == s.ring().order()) return s;
  return scenario_from_json(scenario_to_json(s), opts);
}

int emit(const RunResult& r, const Options& o, std::ostream& out) {
  out << render_text(r);
  if (!o.json_path.empty()) {
    std::ofstream f(o.json_path);
    if (!f) throw InputError("cannot write " + o.json_path);
    f << render_json(r).dump(2) << "\n";
  }
  return r.exit_code();
}

int run(const Scenario& s, const std::vector<std::string>& tasks, const Options& o, std::ostream& out) {
  if (!o.lazy) {
    if (auto bad = validate_presentation(s)) {
      RunResult r;
      r.scenario = s.name;
      r.order = s.ring().order();
      r.tasks.push_back({"presentation", *bad});
      return emit(r, o, out);
    }
  }
  return emit(run_tasks(s, tasks, o.threads), o, out);
}

bool known_task(const std::string& t) {
  const auto& a = standard_task_names();
  const auto& b = golden_task_names();
  return std::find(a.begin(), a.end(), t) != a.end() || std::find(b.begin(), b.end(), t) != b.end();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connections on Lie-Rinehart algebras: exact verification of scenarios and built-in examples",
               "lrgeom"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--json", o.json_path, "Also write the report as JSON to this path");
  app.add_option("--order", o.order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
  app.add_option("--threads", o.threads, "Worker threads for verification loops")->check(CLI::Range(1u, 256u));
  app.add_flag("--lazy", o.lazy, "Defer presentation validation to the presentation task");

  std::string file, name, check = "all", export_path;
  auto* verify = app.add_subcommand("verify", "Run the tasks listed in a scenario file");
  verify->add_option("file", file, "Scenario JSON")->required();
  auto* solve = app.add_subcommand("solve-lc", "Solve the Koszul equations for the scenario metric and verify");
  solve->add_option("file", file, "Scenario JSON")->required();
  auto* curv = app.add_subcommand("curvature", "Curvature of the scenario connection");
  curv->add_option("file", file, "Scenario JSON")->required();
  auto* example = app.add_subcommand("example", "Run a built-in example");
  example->add_option("name", name, "Example name (see list-examples)")->required();
  example->add_option("--check", check, "all or a single task");
  example->add_option("--export", export_path, "Write the example as a scenario file and exit");
  auto* list = app.add_subcommand("list-examples", "List the built-in examples");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    ScenarioOptions sopts{parse_order(o.order)};
    if (*list) {
      for (const auto& info : example_catalog()) out << info.name << "  " << info.summary << "\n";
      return 0;
    }
    if (*example) {
      Scenario s;
      try {
        s = build_example(name);
      } catch (const DomainError& e) {
        throw InputError(e.what());
      }
      if (!export_path.empty()) {
        std::ofstream f(export_path);
        if (!f) throw InputError("cannot write " + export_path);
        f << scenario_dump(s);
        return 0;
      }
      s = reorder(s, sopts);
      std::vector<std::string> tasks = s.tasks;
      if (check != "all") {
        if (!known_task(check)) throw InputError("unknown task '" + check + "'");
        tasks = {check};
      }
      return run(s, tasks, o, out);
    }
    Scenario s = load_scenario(file, sopts);
    if (*verify) return run(s, s.tasks, o, out);
    if (*solve) {
      if (!s.metric) throw InputError(file + ": solve-lc needs a metric");
      s.connection = ConnectionPayload{true, {s.presentation->size(), {}, true}, {}};
      return run(s, {"solve", "koszul"}, o, out);
    }
    if (*curv) {
      if (!s.connection) throw InputError(file + ": curvature needs a connection");
      return run(s, {"curvature"}, o, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lrgeom
