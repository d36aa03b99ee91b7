#include "lrgeom/tasks.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "lrgeom/chern.hpp"
#include "lrgeom/examples.hpp"
#include "lrgeom/gauge.hpp"

namespace lrgeom {

using nlohmann::json;

namespace {

const Mat& need_metric(const Scenario& s) {
  if (!s.metric) throw DomainError("task needs a metric");
  return *s.metric;
}

const Mat& need_idempotent(const Scenario& s) {
  if (!s.idempotent) throw DomainError("task needs an idempotent");
  return *s.idempotent;
}

const std::vector<Poly>& need_ideal(const Scenario& s) {
  if (s.ideal_gens.empty()) throw DomainError("task needs ideal_gens");
  return s.ideal_gens;
}

Report solve_task(const Scenario& s) {
  Connection nabla = koszul_solve_free(s.presentation, need_metric(s));
  const auto& v = s.vars();
  Report rep;
  for (std::size_t i = 0; i < nabla.gens(); ++i) {
    // Display orientation: row k lists Gamma_ij^k over j.
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t k = 0; k < nabla.rank(); ++k) {
      std::string line = "[";
      for (std::size_t j = 0; j < nabla.rank(); ++j)
        line += (j ? ", " : "") + to_string(nabla.christoffel(i, j, k), v);
      rows.push_back({"row " + std::to_string(k + 1), line + "]"});
    }
    rep.add({"solve", {int(i + 1)}, Status::Info, "Gamma_" + s.presentation->name(i) + ", output generator on rows",
             rows});
  }
  return rep;
}

Report solve_refusal_task(const Scenario& s) {
  Report rep;
  try {
    koszul_solve_free(s.presentation, need_metric(s));
    rep.add("solve-refusal", {}, false, "solver accepted a presentation with syzygies");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    rep.add("solve-refusal", {}, msg.find("syzygies") != std::string::npos, "solver refused: " + msg);
  }
  return rep;
}

Report gauge_task(const Scenario& s, unsigned threads) {
  if (!s.gauge) throw DomainError("task needs a gauge payload");
  const auto& R = s.ring();
  GaugeElement g(R, s.gauge->matrix, s.gauge->inverse);
  GaugeElement h(R, s.gauge->inverse, s.gauge->matrix);
  std::size_t n = g.size();
  Connection nabla = s.connection ? scenario_connection(s) : Connection::trivial(s.presentation, n);
  MatForm eta(s.presentation->size(), 1, n, Convention::Operator);
  return gauge_certificates(g, h, nabla, eta, threads);
}

Report dispatch(const Scenario& s, const std::string& task, unsigned threads) {
  const auto& L = s.presentation;
  if (task == "presentation") return verify_presentation(*L);
  if (task == "koszul") return koszul_verify(scenario_connection(s), need_metric(s), threads);
  if (task == "torsion") return torsion_check(scenario_connection(s));
  if (task == "metric") return metric_compat_check(scenario_connection(s), need_metric(s), threads);
  if (task == "bianchi") return bianchi_checks(scenario_connection(s), threads);
  if (task == "curvature") return curvature_report(scenario_connection(s), "curvature");
  if (task == "solve") return solve_task(s);
  if (task == "solve-refusal") return solve_refusal_task(s);
  if (task == "adjoint") return adjoint_connection(L).certificate;
  if (task == "bott") return bott_connection(need_ideal(s), L).certificate;
  if (task == "jacobi") return scenario_poisson(s).jacobi_report();
  if (task == "poisson") return poisson_connection(scenario_poisson(s), need_ideal(s)).certificate;
  if (task == "dirac") return dirac_connection(scenario_poisson(s), need_ideal(s), {}).certificate;
  if (task == "fedosov") return fedosov_connection(need_idempotent(s), L).certificate;
  if (task == "chern") return chern_character(need_idempotent(s), L, Rational(1)).report;
  if (task == "gauge") return gauge_task(s, threads);
  if (auto r = run_golden_task(s, task, threads)) return *r;
  Report rep;
  rep.error(task, "unknown task");
  return rep;
}

void order_entries(Report& rep) {
  std::map<std::string, std::size_t> first;
  for (const auto& e : rep.entries()) first.emplace(e.task, first.size());
  std::vector<Entry> es = rep.entries();
  std::stable_sort(es.begin(), es.end(), [&](const Entry& a, const Entry& b) {
    std::size_t fa = first[a.task], fb = first[b.task];
    if (fa != fb) return fa < fb;
    return a.index < b.index;
  });
  rep = Report();
  for (auto& e : es) rep.add(std::move(e));
}

std::string index_str(const std::vector<int>& idx) {
  if (idx.empty()) return "";
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

}  // namespace

const std::vector<std::string>& standard_task_names() {
  static const std::vector<std::string> names = {"presentation", "koszul", "torsion", "metric", "bianchi",
                                                 "curvature", "solve", "solve-refusal", "adjoint", "bott",
                                                 "jacobi", "poisson", "dirac", "fedosov", "chern", "gauge"};
  return names;
}

Report run_task(const Scenario& s, const std::string& task, unsigned threads) {
  Report rep;
  try {
    rep = dispatch(s, task, threads);
  } catch (const std::exception& e) {
    rep = Report();
    rep.error(task, e.what());
  }
  order_entries(rep);
  return rep;
}

RunResult run_tasks(const Scenario& s, const std::vector<std::string>& tasks, unsigned threads) {
  RunResult r;
  r.scenario = s.name;
  r.order = s.ring().order();
  for (const auto& t : tasks) r.tasks.push_back({t, run_task(s, t, threads)});
  return r;
}

std::optional<Report> validate_presentation(const Scenario& s) {
  Report rep = verify_presentation(*s.presentation);
  if (rep.passed()) return std::nullopt;
  order_entries(rep);
  return rep;
}

std::size_t RunResult::count(Status st) const {
  std::size_t n = 0;
  for (const auto& t : tasks) n += t.report.count(st);
  return n;
}

bool RunResult::passed() const { return count(Status::Fail) == 0 && count(Status::Error) == 0; }

std::string task_status(const Report& r) {
  if (r.count(Status::Error)) return "error";
  if (r.count(Status::Fail)) return "fail";
  if (r.count(Status::Pass)) return "pass";
  return "info";
}

std::string conventions_text(MonomialOrder order) {
  return "order=" + to_string(order) +
         "; gamma=row (Gamma_i[mu][nu] = Gamma_{i mu}^nu); operator=transpose"
         "; curvature=X_i(G_j)-X_j(G_i)+G_jG_i-G_iG_j-c_ij^kG_k"
         "; mc_defect=dC+sign*C^C with [C,C](X_i,X_j)=C_iC_j-C_jC_i, sign -1 row, +1 operator"
         "; gauge=operator";
}

std::string conventions_hash(MonomialOrder order) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : conventions_text(order)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string render_text(const RunResult& r) {
  std::ostringstream out;
  out << "lrgeom " << kVersion << "\n";
  out << "scenario: " << r.scenario << "\n";
  out << "order: " << to_string(r.order) << "\n";
  out << "conventions: " << conventions_text(r.order) << "\n";
  out << "conventions-hash: " << conventions_hash(r.order) << "\n";
  for (const auto& t : r.tasks) {
    const auto& rep = t.report;
    out << "\n[" << t.task << "] " << task_status(rep) << " (" << rep.count(Status::Pass) << " pass, "
        << rep.count(Status::Fail) << " fail, " << rep.count(Status::Error) << " error, " << rep.count(Status::Info)
        << " info)\n";
    for (const auto& e : rep.entries()) {
      out << "  " << to_string(e.status) << " " << e.task;
      std::string idx = index_str(e.index);
      if (!idx.empty()) out << " " << idx;
      if (!e.note.empty()) out << ": " << e.note;
      out << "\n";
      for (const auto& [k, v] : e.values) out << "      " << k << " = " << v << "\n";
    }
  }
  out << "\nsummary: " << r.tasks.size() << " tasks, " << r.count(Status::Pass) << " pass, "
      << r.count(Status::Fail) << " fail, " << r.count(Status::Error) << " error, " << r.count(Status::Info)
      << " info\n";
  out << "result: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

json render_json(const RunResult& r) {
  json tasks = json::array();
  for (const auto& t : r.tasks) {
    json entries = json::array();
    for (const auto& e : t.report.entries()) {
      json vals = json::array();
      for (const auto& [k, v] : e.values) vals.push_back({k, v});
      entries.push_back(
          {{"task", e.task}, {"index", e.index}, {"status", to_string(e.status)}, {"note", e.note}, {"values", vals}});
    }
    tasks.push_back({{"task", t.task}, {"status", task_status(t.report)}, {"entries", entries}});
  }
  json j;
  j["header"] = {{"tool", "lrgeom"},
                 {"version", kVersion},
                 {"order", to_string(r.order)},
                 {"conventions", conventions_text(r.order)},
                 {"conventions_hash", conventions_hash(r.order)}};
  j["scenario"] = r.scenario;
  j["tasks"] = tasks;
  j["summary"] = {{"tasks", r.tasks.size()},
                  {"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},
                  {"error", r.count(Status::Error)},
                  {"info", r.count(Status::Info)}};
  j["exit_code"] = r.exit_code();
  return j;
}

}  // namespace lrgeom
