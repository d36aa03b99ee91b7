#pragma once

#include <string>
#include <vector>

#include "lrgeom/scenario.hpp"

namespace lrgeom {

inline constexpr const char* kVersion = "0.1.0";

struct TaskResult {
  std::string task;
  Report report;
};

struct RunResult {
  std::string scenario;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::vector<TaskResult> tasks;

  std::size_t count(Status s) const;
  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
};

// Tasks understood without golden data.
const std::vector<std::string>& standard_task_names();

// Runs one task. Unknown tasks and exceptions become Error entries. Entries
// are ordered by subtask (first appearance) and then by index tuple.
Report run_task(const Scenario& s, const std::string& task, unsigned threads = 1);
RunResult run_tasks(const Scenario& s, const std::vector<std::string>& tasks, unsigned threads = 1);

// Presentation validation done when a scenario is loaded without --lazy;
// empty on success, otherwise the failing presentation report.
std::optional<Report> validate_presentation(const Scenario& s);

std::string conventions_text(MonomialOrder order);
std::string conventions_hash(MonomialOrder order);  // "fnv1a64:<16 hex digits>"

std::string render_text(const RunResult& r);
nlohmann::json render_json(const RunResult& r);

std::string task_status(const Report& r);  // pass, fail, error or info

}  // namespace lrgeom
