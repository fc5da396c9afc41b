// Command-line front end: load a scenario file (TOML subset or JSON), then
// run its check suite, compute a single operator norm, report freeness of
// the action, or dump an assembled matrix.  Reports go to stdout as JSON
// with sorted keys; diagnostics go to stderr.  Exit codes: 0 all checks
// passed (refusals do not fail a run), 1 at least one check failed, 2
// usage, load, or computation error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wco/assembly.hpp"
#include "wco/corpus.hpp"
#include "wco/errors.hpp"
#include "wco/norms.hpp"
#include "wco/scenario.hpp"

namespace {

double parse_exponent_flag(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value >= 1.0)) {
    throw wco::Error(wco::Errc::invalid_exponent,
                     "exponent must be a number >= 1 or \"inf\", got '" +
                         text + "'");
  }
  return value;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

// Column-major [re, im] pairs, one flat array; reshape with rows/cols.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return entries;
}

int cmd_check(const std::string& path,
              const std::optional<double>& tol_exact,
              const std::optional<double>& tol_svd,
              const std::optional<double>& tol_power) {
  wco::Scenario scenario = wco::load_scenario(path);
  if (tol_exact) scenario.tolerances.exact = *tol_exact;
  if (tol_svd) scenario.tolerances.svd = *tol_svd;
  if (tol_power) scenario.tolerances.power = *tol_power;
  const wco::SuiteReport report = wco::run_scenario(scenario);
  nlohmann::json j;
  wco::to_json(j, report);
  emit(j);
  return report.failed == 0 ? 0 : 1;
}

int cmd_norm(const std::string& path, const std::string& p_text,
             const std::string& method, int restarts, int samples,
             std::uint64_t seed, bool seed_given) {
  const wco::Scenario scenario = wco::load_scenario(path);
  const double p = parse_exponent_flag(p_text);
  const std::uint64_t rng_seed = seed_given ? seed : scenario.seed;

  wco::NormResult result{};
  if (method == "formula") {
    if (std::isinf(p)) {
      result = wco::formula_norm_linf(scenario.element);
    } else if (p == 1.0) {
      result = wco::formula_norm_l1(scenario.element);
    } else {
      throw wco::Error(wco::Errc::unsupported_exponent,
                       "formula norms exist only for p = 1 and p = inf");
    }
  } else {
    const wco::AssembledOperator op = wco::assemble_direct(scenario.element, p);
    if (method == "exact") {
      result = wco::norm_exact(op);
    } else if (method == "svd") {
      if (p != 2.0) {
        throw wco::Error(wco::Errc::unsupported_exponent,
                         "the svd method applies only at p = 2");
      }
      result = wco::norm_p(op);
    } else if (method == "power") {
      wco::PowerOptions opts;
      opts.restarts = restarts;
      opts.seed = rng_seed;
      result = wco::norm_p(op, opts);
    } else if (method == "brute") {
      result = wco::norm_brute_force(op, samples, rng_seed);
    } else {  // auto
      wco::PowerOptions opts;
      opts.restarts = restarts;
      opts.seed = rng_seed;
      result = wco::operator_norm(op, opts);
    }
  }

  nlohmann::json j;
  wco::to_json(j, result);
  j["p"] = wco::exponent_to_json(p);
  j["scenario_id"] = scenario.id;
  emit(j);
  return 0;
}

int cmd_freeness(const std::string& path) {
  const wco::Scenario scenario = wco::load_scenario(path);
  const wco::FreenessVerdict fast = wco::check_metrically_free(*scenario.action);
  const wco::FreenessVerdict direct = wco::check_metrically_free_direct(
      *scenario.action, scenario.action->space().atom_count());
  nlohmann::json j;
  j["scenario_id"] = scenario.id;
  j["free"] = fast.free;
  j["direct_agrees"] = (fast.free == direct.free);
  if (fast.witness) {
    j["witness"] = {{"g", fast.witness->first},
                    {"atom", fast.witness->second}};
  } else {
    j["witness"] = nullptr;
  }
  emit(j);
  return fast.free == direct.free ? 0 : 1;
}

int cmd_dump(const std::string& path, const std::string& p_text,
             const std::string& rep, int atom) {
  const wco::Scenario scenario = wco::load_scenario(path);
  const double p = parse_exponent_flag(p_text);
  wco::AssembledOperator op = [&] {
    if (rep == "direct") return wco::assemble_direct(scenario.element, p);
    if (rep == "regular") return wco::assemble_regular(scenario.element, p);
    return wco::assemble_trajectory(scenario.element, atom, p);
  }();
  nlohmann::json j;
  j["scenario_id"] = scenario.id;
  j["rep"] = rep;
  j["p"] = wco::exponent_to_json(p);
  if (rep == "trajectory") j["atom"] = atom;
  j["rows"] = op.matrix.rows();
  j["cols"] = op.matrix.cols();
  j["order"] = "column-major";
  j["entries"] = matrix_to_json(op.matrix);
  emit(j);
  return 0;
}

int cmd_corpus(const std::string& dir, int draws, std::uint64_t seed,
               const std::string& freeness) {
  wco::CorpusSpec spec;
  spec.draws = draws;
  spec.seed = seed;
  if (freeness == "free") {
    spec.freeness = wco::FreenessFilter::free_only;
  } else if (freeness == "nonfree") {
    spec.freeness = wco::FreenessFilter::non_free_only;
  } else {
    spec.freeness = wco::FreenessFilter::mixed;
  }
  const std::vector<wco::Scenario> scenarios = wco::generate(spec);
  wco::write_corpus(scenarios, dir);
  nlohmann::json j;
  j["directory"] = dir;
  j["scenarios"] = scenarios.size();
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted composition operator algebras on finite atomic "
               "spaces: checks, norms, freeness, matrix dumps"};
  app.require_subcommand(1);

  std::string path;
  std::string p_text = "2";
  std::string method = "auto";
  std::string rep = "direct";
  std::string corpus_dir;
  std::string freeness_filter = "mixed";
  int restarts = 32;
  int samples = 200000;
  int atom = 0;
  int draws = 3;
  std::uint64_t seed = 0;
  std::uint64_t corpus_seed = 20260814;
  std::optional<double> tol_exact, tol_svd, tol_power;

  CLI::App* check = app.add_subcommand(
      "check", "Run the scenario's checks at each exponent");
  check->add_option("file", path, "scenario file (.toml or .json)")
      ->required();
  check->add_option("--tol-exact", tol_exact,
                    "override tolerance for exactly computed quantities");
  check->add_option("--tol-svd", tol_svd,
                    "override tolerance for p = 2 comparisons");
  check->add_option("--tol-power", tol_power,
                    "override tolerance for iterative p-norm comparisons");

  CLI::App* norm = app.add_subcommand(
      "norm", "Operator norm of the scenario element on L^p");
  norm->add_option("file", path, "scenario file (.toml or .json)")
      ->required();
  norm->add_option("--p", p_text, "exponent: number >= 1 or \"inf\"")
      ->capture_default_str();
  norm->add_option("--method", method,
                   "auto | exact | svd | power | brute | formula")
      ->check(CLI::IsMember({"auto", "exact", "svd", "power", "brute",
                             "formula"}))
      ->capture_default_str();
  norm->add_option("--restarts", restarts, "power-iteration restarts")
      ->capture_default_str();
  norm->add_option("--samples", samples, "brute-force sample budget")
      ->capture_default_str();
  CLI::Option* seed_opt =
      norm->add_option("--seed", seed, "RNG seed (default: scenario seed)");

  CLI::App* freeness = app.add_subcommand(
      "freeness", "Decide metric freeness of the scenario's action");
  freeness->add_option("file", path, "scenario file (.toml or .json)")
      ->required();

  CLI::App* dump = app.add_subcommand(
      "dump", "Dump an assembled operator matrix as JSON");
  dump->add_option("file", path, "scenario file (.toml or .json)")
      ->required();
  dump->add_option("--p", p_text, "exponent: number >= 1 or \"inf\"")
      ->capture_default_str();
  dump->add_option("--rep", rep, "direct | regular | trajectory")
      ->check(CLI::IsMember({"direct", "regular", "trajectory"}))
      ->capture_default_str();
  dump->add_option("--atom", atom, "trajectory start atom")
      ->capture_default_str();

  CLI::App* corpus = app.add_subcommand(
      "corpus", "Write the generated scenario family to a directory");
  corpus->add_option("dir", corpus_dir, "output directory")->required();
  corpus->add_option("--draws", draws, "coefficient draws per action/dim")
      ->capture_default_str();
  corpus->add_option("--seed", corpus_seed, "generator seed")
      ->capture_default_str();
  corpus->add_option("--freeness", freeness_filter, "free | nonfree | mixed")
      ->check(CLI::IsMember({"free", "nonfree", "mixed"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(path, tol_exact, tol_svd, tol_power);
    if (norm->parsed()) {
      return cmd_norm(path, p_text, method, restarts, samples, seed,
                      seed_opt->count() > 0);
    }
    if (freeness->parsed()) return cmd_freeness(path);
    if (dump->parsed()) return cmd_dump(path, p_text, rep, atom);
    if (corpus->parsed()) {
      return cmd_corpus(corpus_dir, draws, corpus_seed, freeness_filter);
    }
  } catch (const wco::Error& e) {
    std::cerr << "error [" << wco::errc_name(e.code()) << "]: " << e.what()
              << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
