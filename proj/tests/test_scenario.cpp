#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "wco/errors.hpp"
#include "wco/scenario.hpp"

using wco::Errc;
using wco::Error;
using wco::Scenario;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a wco::Error");
  return Errc::parse_error;  // unreachable
}

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected a wco::Error");
  return {};
}

// A complete, valid scenario document to mutate in validation tests.
nlohmann::json base_scenario() {
  return nlohmann::json{
      {"id", "test"},
      {"dim", 1},
      {"seed", 5},
      // Brace-init would fold a list of [label, weight] pairs into an
      // object, so the atom list is built as an explicit array.
      {"space",
       {{"atoms", nlohmann::json::array({nlohmann::json::array({"x0", 0.5}),
                                         nlohmann::json::array({"x1", 0.25}),
                                         nlohmann::json::array(
                                             {"x2", 0.25})})}}},
      {"group", {{"cayley", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}}},
      {"action", {{"perms", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}}},
      {"element",
       {{"terms",
         {{{"g", 0}, {"blocks", {1.0, 2.0, 3.0}}},
          {{"g", 1}, {"blocks", {1.0, 1.0, 1.0}}}}}}},
      {"exponents", {1.0, "inf"}},
      {"checks", {"property_star", "regular_isomorphism"}}};
}

}  // namespace

TEST_CASE("toml subset parsing") {
  const std::string doc = R"(
# comment
title = "weighted \"ops\""
count = 42
ratio = -0.25
flag = true
p = inf
list = [1, 2, 3]
mixed = [1.5, "inf"]
nested = [["a", 0.5], ["b", 0.5]]
inline = { x = 1, y = "two" }

[table]
key = "value"
dotted.sub = 7

[[rows]]
g = 0

[[rows]]
g = 1
)";
  const nlohmann::json j = wco::toml_to_json(doc);
  CHECK(j.at("title") == "weighted \"ops\"");
  CHECK(j.at("count") == 42);
  CHECK(j.at("ratio").get<double>() == doctest::Approx(-0.25));
  CHECK(j.at("flag") == true);
  CHECK(j.at("p") == "inf");
  CHECK(j.at("list") == nlohmann::json({1, 2, 3}));
  CHECK(j.at("mixed")[1] == "inf");
  CHECK(j.at("nested")[1][1].get<double>() == doctest::Approx(0.5));
  CHECK(j.at("inline").at("y") == "two");
  CHECK(j.at("table").at("key") == "value");
  CHECK(j.at("table").at("dotted").at("sub") == 7);
  REQUIRE(j.at("rows").size() == 2);
  CHECK(j.at("rows")[1].at("g") == 1);
}

TEST_CASE("toml parse errors carry line information") {
  const std::string msg =
      error_message([] { wco::toml_to_json("key = \n"); });
  CHECK(msg.find("line") != std::string::npos);
  CHECK(code_of([] { wco::toml_to_json("key = @bad\n"); }) ==
        Errc::parse_error);
  CHECK(code_of([] { wco::toml_to_json("a = 1\na = 2\n"); }) ==
        Errc::parse_error);
  CHECK(code_of([] { wco::toml_to_json("x = \"unterminated\n"); }) ==
        Errc::parse_error);
}

TEST_CASE("scenario validation names the offending field") {
  // Permutation entry out of range.
  nlohmann::json bad = base_scenario();
  bad["action"]["perms"][1][2] = 5;
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("action.perms") != std::string::npos);
  CHECK(code_of([&] { wco::scenario_from_json(bad); }) ==
        Errc::validation_error);

  // Negative weight.
  bad = base_scenario();
  bad["space"]["atoms"][0][1] = -0.5;
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("space.atoms") != std::string::npos);

  // Unknown check name.
  bad = base_scenario();
  bad["checks"].push_back("not_a_check");
  CHECK(code_of([&] { wco::scenario_from_json(bad); }) ==
        Errc::unknown_check);

  // Term at a group element that does not exist.
  bad = base_scenario();
  bad["element"]["terms"][0]["g"] = 9;
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("element.terms") != std::string::npos);

  // Exponent below 1.
  bad = base_scenario();
  bad["exponents"][0] = 0.5;
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("exponents") != std::string::npos);

  // Missing required section.
  bad = base_scenario();
  bad.erase("group");
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("group") != std::string::npos);

  // space2 with wrong length.
  bad = base_scenario();
  bad["space2"] = {{"weights", {1.0, 1.0}}};
  CHECK(error_message([&] { wco::scenario_from_json(bad); })
            .find("space2.weights") != std::string::npos);
}

TEST_CASE("bundled fixture loads and echoes the running coefficients") {
  const Scenario s =
      wco::load_scenario(std::string(WCO_SOURCE_DIR) +
                         "/scenarios/z3_rotation.toml");
  CHECK(s.id == "z3_rotation");
  CHECK(s.dim == 1);
  CHECK(s.space->atom_count() == 3);
  CHECK(s.space->weight(0) == doctest::Approx(0.5));
  CHECK(s.group->order() == 3);
  CHECK(s.element.support() == std::vector<int>{0, 1});
  CHECK(s.element.terms().at(0).block(1)(0, 0) == wco::cplx(2.0, 0.0));
  CHECK(s.element.terms().at(1).block(2)(0, 0) == wco::cplx(1.0, 0.0));
  REQUIRE(s.exponents.size() == 2);
  CHECK(s.exponents[0] == 1.0);
  CHECK(std::isinf(s.exponents[1]));
  CHECK(s.checks ==
        std::vector<std::string>{"property_star", "regular_isomorphism"});
}

TEST_CASE("toml and json forms of one scenario produce identical values") {
  const Scenario from_json = wco::scenario_from_json(base_scenario());
  const Scenario from_toml =
      wco::load_scenario(std::string(WCO_SOURCE_DIR) +
                         "/scenarios/z3_rotation.toml");
  // The fixture file and base_scenario() describe the same system apart
  // from id/seed; canonical serialization must agree on the shared parts.
  const nlohmann::json a = wco::scenario_to_json(from_json);
  const nlohmann::json b = wco::scenario_to_json(from_toml);
  CHECK(a.at("space") == b.at("space"));
  CHECK(a.at("group") == b.at("group"));
  CHECK(a.at("action") == b.at("action"));
  CHECK(a.at("element") == b.at("element"));
  CHECK(a.at("exponents") == b.at("exponents"));
  CHECK(a.at("checks") == b.at("checks"));
}

TEST_CASE("canonical serialization round-trips") {
  const Scenario s = wco::scenario_from_json(base_scenario());
  const nlohmann::json once = wco::scenario_to_json(s);
  const Scenario reloaded = wco::scenario_from_json(once);
  const nlohmann::json twice = wco::scenario_to_json(reloaded);
  CHECK(once.dump() == twice.dump());
}

TEST_CASE("the scenario runner orders, counts and stamps reports") {
  const Scenario s =
      wco::load_scenario(std::string(WCO_SOURCE_DIR) +
                         "/scenarios/z3_rotation.toml");
  const wco::SuiteReport r = wco::run_scenario(s);
  CHECK(r.scenario_id == "z3_rotation");
  CHECK(r.total == 4);
  CHECK(r.passed == 4);
  CHECK(r.failed == 0);
  CHECK(r.refused == 0);
  REQUIRE(r.reports.size() == 4);
  // Ordering: check name, then exponent ascending with inf last.
  CHECK(r.reports[0].at("check") == "property_star");
  CHECK(r.reports[0].at("p") == 1.0);
  CHECK(r.reports[1].at("check") == "property_star");
  CHECK(r.reports[1].at("p") == "inf");
  CHECK(r.reports[2].at("check") == "regular_isomorphism");
  for (const nlohmann::json& rep : r.reports) {
    CHECK(rep.at("scenario_id") == "z3_rotation");
    CHECK(rep.at("status") == "passed");
  }

  // Determinism of the whole suite report.
  nlohmann::json j1, j2;
  wco::to_json(j1, wco::run_scenario(s));
  wco::to_json(j2, wco::run_scenario(s));
  CHECK(j1.dump() == j2.dump());
}

TEST_CASE("runner turns precondition errors into refusals, not failures") {
  nlohmann::json doc = base_scenario();
  // Z3 rotation is free: the failure search must refuse (ActionIsFree),
  // and interpolation must refuse at the endpoints but run at p = 2.
  doc["checks"] = {"property_star_failure_search", "interpolation"};
  doc["exponents"] = {1.0, 2.0};
  const wco::SuiteReport r = wco::run_scenario(wco::scenario_from_json(doc));
  CHECK(r.total == 4);
  CHECK(r.failed == 0);
  CHECK(r.refused == 3);
  CHECK(r.passed == 1);
  int saw_reason = 0;
  for (const nlohmann::json& rep : r.reports) {
    if (rep.at("status") == "refused") {
      CHECK(rep.contains("reason"));
      CHECK(rep.contains("code"));
      ++saw_reason;
    }
  }
  CHECK(saw_reason == 3);
}

TEST_CASE("runner records genuine failures") {
  // One-atom trivial Z2 action with b = T_e - T_g: property (*) fails.
  nlohmann::json doc;
  doc["id"] = "failcase";
  doc["space"] = {
      {"atoms", nlohmann::json::array({nlohmann::json::array({"pt", 1.0})})}};
  doc["group"] = {{"cayley", {{0, 1}, {1, 0}}}};
  doc["action"] = {{"perms", {{0}, {0}}}};
  doc["element"] = {{"terms",
                     {{{"g", 0}, {"blocks", {1.0}}},
                      {{"g", 1}, {"blocks", {-1.0}}}}}};
  doc["exponents"] = {"inf"};
  doc["checks"] = {"property_star"};
  const wco::SuiteReport r = wco::run_scenario(wco::scenario_from_json(doc));
  CHECK(r.total == 1);
  CHECK(r.failed == 1);
  CHECK(r.reports[0].at("status") == "failed");
  CHECK(r.reports[0].at("lhs").get<double>() == doctest::Approx(0.0));
  CHECK(r.reports[0].at("rhs").get<double>() == doctest::Approx(1.0));
}

TEST_CASE("empty check list yields an empty, passing report") {
  nlohmann::json doc = base_scenario();
  doc["checks"] = nlohmann::json::array();
  const wco::SuiteReport r = wco::run_scenario(wco::scenario_from_json(doc));
  CHECK(r.total == 0);
  CHECK(r.failed == 0);
  CHECK(r.reports.empty());
}

TEST_CASE("measure isomorphism check uses the second weight vector") {
  nlohmann::json doc = base_scenario();
  doc["checks"] = {"measure_isomorphism"};
  doc["exponents"] = {1.0};
  // Without space2 the check refuses.
  wco::SuiteReport r = wco::run_scenario(wco::scenario_from_json(doc));
  CHECK(r.refused == 1);
  // With it, the weight-independence holds.
  doc["space2"] = {{"weights", {1.0, 1.0, 1.0}}};
  r = wco::run_scenario(wco::scenario_from_json(doc));
  CHECK(r.passed == 1);
}

TEST_CASE("known check names are sorted and complete") {
  const std::vector<std::string>& names = wco::known_check_names();
  CHECK(names.size() == 8);
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const char* expected :
       {"character_symmetry", "interpolation", "measure_isomorphism",
        "property_double_star", "property_star",
        "property_star_failure_search", "regular_isomorphism",
        "trajectory_norm"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
}
