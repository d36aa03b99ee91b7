#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrgeom/constructions.hpp"

namespace lrgeom {

// A reference value and where it comes from. value is any JSON; tables are
// nested arrays of expression strings.
struct Golden {
  std::string key;
  std::string anchor;
  nlohmann::json value;
};

struct ConnectionPayload {
  bool solve = false;      // solve the Koszul equations for the metric
  ModuleCarrier carrier;   // is_L for connections on L itself
  std::vector<Mat> gamma;  // row convention
};

struct GaugePayload {
  Mat matrix, inverse;  // operator convention
};

struct Scenario {
  std::string name;
  std::string description;
  PresentationPtr presentation;
  std::optional<Mat> metric;
  std::optional<ConnectionPayload> connection;
  std::optional<std::vector<std::vector<Poly>>> poisson;
  std::vector<Poly> ideal_gens;
  std::optional<Mat> idempotent;
  std::optional<GaugePayload> gauge;
  std::vector<std::string> tasks;
  std::vector<Golden> golden;
  std::vector<std::string> notes;

  const QuotientRing& ring() const { return presentation->ring(); }
  const VarTable& vars() const { return presentation->vars(); }
  // Throws DomainError when the key is missing.
  const Golden& golden_value(const std::string& key) const;
};

// Malformed scenario input; pointer is a JSON pointer into the document.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& pointer, const std::string& what)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct ScenarioOptions {
  MonomialOrder order = MonomialOrder::Grevlex;
};

constexpr int kScenarioSchema = 1;

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j, const ScenarioOptions& opts = {});
// Reads and parses a file; JSON syntax errors become ScenarioError with the line.
Scenario load_scenario(const std::string& path, const ScenarioOptions& opts = {});
std::string scenario_dump(const Scenario& s);

// The connection described by the payload, solving the Koszul equations if requested.
Connection scenario_connection(const Scenario& s);
PoissonStructure scenario_poisson(const Scenario& s);

}  // namespace lrgeom
