#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wco/checks.hpp"

// Self-contained scenario descriptions: a space, a group, an action, one
// element of the algebra, the exponents to test and the checks to run.
// Scenarios load from JSON or from a strict TOML subset (tables, arrays of
// tables, scalars, arrays, inline tables); both formats share one
// validation path.  Reports serialize deterministically: object keys are
// emitted in sorted order and entries are ordered by check name, then by
// exponent ascending with inf last.

namespace wco {

struct Scenario {
  std::string id;
  SpacePtr space;
  std::optional<std::vector<double>> space2_weights;
  GroupPtr group;
  ActionPtr action;
  int dim = 1;
  SymbolicElement element;
  std::vector<double> exponents;
  std::vector<std::string> checks;
  std::uint64_t seed = 0;
  Tolerances tolerances;
};

// Names accepted in a scenario's check list.
const std::vector<std::string>& known_check_names();

// TOML-subset text -> JSON document (exposed for tests; the subset covers
// tables, [[arrays of tables]], dotted keys, strings, numbers, booleans,
// arrays and inline tables; the float literal inf maps to the string
// "inf").
nlohmann::json toml_to_json(const std::string& text);

// "inf" or a finite number >= 1.
double exponent_from_json(const nlohmann::json& j, const std::string& field);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);

// Reads .toml or .json by extension; throws Error(parse_error |
// validation_error) with the offending field named in the message.
Scenario load_scenario(const std::string& path);

struct SuiteReport {
  std::string scenario_id;
  int total = 0;
  int passed = 0;
  int failed = 0;
  int refused = 0;
  nlohmann::json reports = nlohmann::json::array();
};

void to_json(nlohmann::json& j, const SuiteReport& r);

// Runs every requested check at every exponent; check preconditions that
// do not apply become "refused" entries rather than failures.
SuiteReport run_scenario(const Scenario& scenario);

}  // namespace wco
