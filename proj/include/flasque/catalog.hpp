#pragma once

// Named, self-checking scenarios run by the verification subcommand.

#include <string>
#include <vector>

#include "flasque/serialize.hpp"
#include "flasque/sweep.hpp"

namespace flasque {

// kind is one of: flasque, family, resolution, kernel_order, ind_copies,
// rclasses, odd_cover, connector. params and expected are kind-specific JSON.
struct Scenario {
  std::string name;
  std::string kind;
  io::Json params;
  io::Json expected;
};

struct ScenarioResult {
  std::string name;
  std::string kind;
  bool passed = false;
  std::string detail;
};

std::vector<Scenario> builtin_catalog();
// Array of {name, kind, params, expected}. Names must be unique.
std::vector<Scenario> catalog_from_json(const io::Json& j);
io::Json to_json(const Scenario& s);
io::Json to_json(const ScenarioResult& r);

// Mathematical mismatches are reported as a failed result; malformed
// parameters throw InputError.
ScenarioResult run_scenario(const Scenario& s, Execution mode = Execution::parallel);
std::vector<ScenarioResult> run_catalog(const std::vector<Scenario>& catalog, Execution mode = Execution::parallel);

}  // namespace flasque
