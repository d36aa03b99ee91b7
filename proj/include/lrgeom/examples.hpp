#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrgeom/scenario.hpp"

namespace lrgeom {

struct ExampleInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExampleInfo>& example_catalog();
// Throws DomainError for unknown names.
Scenario build_example(const std::string& name);

Scenario build_double_cone();
Scenario build_double_cone_embedding();
Scenario build_two_dim_metric();
Scenario build_a2_orbit();
Scenario build_sigma3_tables();
Scenario build_sphere_idempotent();
Scenario build_cone_adjoint();
Scenario build_cone_bott();
Scenario build_cone_poisson();
Scenario build_dirac_plane();
Scenario build_cone_gauge();

// Parses an expression in which generator names act as operators, e.g.
// "b*X3(a) - c*X1(b)" or "X3(X1(c))". Innermost calls are expanded first.
Frac expand_generator_calls(const std::string& text, const LRPresentation& L);

// Christoffel matrices on the double cone obtained by pushing the plane
// Levi-Civita connection through u1 = q^2, u2 = p^2, u3 = q p. The cone
// presentation must list X1..X4 = q d/dq, p d/dq, q d/dp, p d/dp.
std::vector<Mat> lift_cone_christoffels(const LRPresentation& cone, const Connection& plane);

// Example-specific checks against golden data; nullopt for unknown names.
std::optional<Report> run_golden_task(const Scenario& s, const std::string& task, unsigned threads);
const std::vector<std::string>& golden_task_names();

}  // namespace lrgeom
