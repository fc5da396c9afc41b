#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "wco/corpus.hpp"
#include "wco/errors.hpp"

using wco::CorpusSpec;
using wco::Errc;
using wco::Error;
using wco::FreenessFilter;
using wco::GroupKind;
using wco::Scenario;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a wco::Error");
  return Errc::parse_error;  // unreachable
}

bool is_free_scenario(const Scenario& s) {
  return wco::check_metrically_free(*s.action).free;
}

}  // namespace

TEST_CASE("dyadic weights") {
  CHECK(wco::dyadic_weights(1) == std::vector<double>{1.0});
  CHECK(wco::dyadic_weights(3) == std::vector<double>{0.5, 0.25, 0.25});
  for (int n = 2; n <= 6; ++n) {
    const std::vector<double> w = wco::dyadic_weights(n);
    double sum = 0.0;
    for (double v : w) {
      CHECK(v > 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("single-draw cyclic spec reproduces the bundled fixture") {
  CorpusSpec spec;
  spec.groups = {GroupKind::z3};
  spec.freeness = FreenessFilter::free_only;
  spec.dims = {1};
  spec.draws = 1;
  const std::vector<Scenario> got = wco::generate(spec);
  REQUIRE(got.size() == 1);
  const Scenario& s = got[0];
  CHECK(s.id == "z3_rotation");
  CHECK(s.dim == 1);
  CHECK(s.space->weights() == std::vector<double>{0.5, 0.25, 0.25});
  CHECK(s.element.support() == std::vector<int>{0, 1});
  for (int x = 0; x < 3; ++x) {
    CHECK(s.element.terms().at(0).block(x)(0, 0) ==
          wco::cplx(double(x + 1), 0.0));
    CHECK(s.element.terms().at(1).block(x)(0, 0) == wco::cplx(1.0, 0.0));
  }
  CHECK(s.action->apply(1, 0) == 1);  // rotation by +1
  REQUIRE(s.exponents.size() == 4);
  CHECK(std::isinf(s.exponents.back()));
}

TEST_CASE("non-free z2 spec includes the cancellation counterexample") {
  CorpusSpec spec;
  spec.groups = {GroupKind::z2};
  spec.freeness = FreenessFilter::non_free_only;
  spec.dims = {1};
  spec.draws = 1;
  const std::vector<Scenario> got = wco::generate(spec);
  REQUIRE(got.size() == 2);  // trivial + swap-two-fix-one
  const auto trivial =
      std::find_if(got.begin(), got.end(),
                   [](const Scenario& s) { return s.id == "z2_trivial"; });
  REQUIRE(trivial != got.end());
  CHECK(trivial->element.support() == std::vector<int>{0, 1});
  CHECK(trivial->element.terms().at(1).block(0)(0, 0) ==
        wco::cplx(-1.0, 0.0));
  CHECK_FALSE(is_free_scenario(*trivial));
  const auto swapfix =
      std::find_if(got.begin(), got.end(),
                   [](const Scenario& s) { return s.id == "z2_swapfix"; });
  REQUIRE(swapfix != got.end());
  CHECK(swapfix->action->apply(1, 2) == 2);
}

TEST_CASE("s3 right translation is generated and verified free") {
  CorpusSpec spec;
  spec.groups = {GroupKind::s3};
  spec.freeness = FreenessFilter::free_only;
  spec.dims = {1};
  spec.draws = 1;
  const std::vector<Scenario> got = wco::generate(spec);
  REQUIRE(got.size() == 1);
  CHECK(got[0].id == "s3_translation");
  CHECK(got[0].space->atom_count() == 6);
  CHECK_FALSE(got[0].group->is_abelian());
  // Independent confirmation by the exhaustive oracle.
  CHECK(wco::check_metrically_free_direct(*got[0].action, 6).free);
  // Non-abelian groups must not request the character check.
  CHECK(std::find(got[0].checks.begin(), got[0].checks.end(),
                  "character_symmetry") == got[0].checks.end());
}

TEST_CASE("generated freeness labels match the exhaustive checker") {
  CorpusSpec spec;
  spec.draws = 2;
  const std::vector<Scenario> all = wco::generate(spec);
  CHECK(all.size() == 60);
  std::set<std::string> ids;
  for (const Scenario& s : all) {
    CHECK(ids.insert(s.id).second);  // unique ids
    const bool free = is_free_scenario(s);
    CHECK(wco::check_metrically_free_direct(
              *s.action, s.action->space().atom_count())
              .free == free);
    const bool lists_star =
        std::find(s.checks.begin(), s.checks.end(), "property_star") !=
        s.checks.end();
    const bool lists_search =
        std::find(s.checks.begin(), s.checks.end(),
                  "property_star_failure_search") != s.checks.end();
    CHECK(lists_star == free);
    CHECK(lists_search == !free);
    if (free) CHECK(s.space2_weights.has_value());
    // Elements always carry the identity in their support.
    CHECK(s.element.support().front() == 0);
  }
}

TEST_CASE("generation is deterministic") {
  CorpusSpec spec;
  spec.draws = 3;
  spec.seed = 77;
  const std::vector<Scenario> a = wco::generate(spec);
  const std::vector<Scenario> b = wco::generate(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(wco::scenario_to_json(a[i]).dump() ==
          wco::scenario_to_json(b[i]).dump());
  }
  // A different seed changes at least the random draws.
  CorpusSpec other = spec;
  other.seed = 78;
  const std::vector<Scenario> c = wco::generate(other);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (wco::scenario_to_json(a[i]).dump() !=
        wco::scenario_to_json(c[i]).dump()) {
      any_different = true;
    }
  }
  CHECK(any_different);
}

TEST_CASE("corpus bounds are enforced") {
  CorpusSpec spec;
  spec.max_atoms = 7;
  CHECK(code_of([&] { wco::generate(spec); }) == Errc::bounds_exceeded);
  spec = CorpusSpec{};
  spec.dims = {3};
  CHECK(code_of([&] { wco::generate(spec); }) == Errc::bounds_exceeded);
  spec = CorpusSpec{};
  spec.draws = 0;
  CHECK(code_of([&] { wco::generate(spec); }) == Errc::bounds_exceeded);

  // Groups needing more atoms than allowed are skipped, not fatal.
  spec = CorpusSpec{};
  spec.max_atoms = 4;
  spec.freeness = FreenessFilter::free_only;
  spec.dims = {1};
  spec.draws = 1;
  const std::vector<Scenario> got = wco::generate(spec);
  for (const Scenario& s : got) {
    CHECK(s.space->atom_count() <= 4);
  }
  CHECK(got.size() == 4);  // z2, z3, z4 rotations + z2xz2 translation
}

TEST_CASE("random elements stay inside the documented envelope") {
  std::mt19937_64 rng(5);
  const wco::ActionPtr act = fix::rot3();
  for (int trial = 0; trial < 20; ++trial) {
    const wco::SymbolicElement b = wco::random_element(act, 2, rng);
    REQUIRE(!b.support().empty());
    CHECK(b.support().front() == 0);
    CHECK(b.support().size() >= 2);
    for (int g : b.support()) {
      for (int x = 0; x < 3; ++x) {
        const Eigen::MatrixXcd& m = b.terms().at(g).block(x);
        CHECK(m.real().maxCoeff() <= 1.0);
        CHECK(m.real().minCoeff() >= -1.0);
        CHECK(m.imag().maxCoeff() <= 1.0);
        CHECK(m.imag().minCoeff() >= -1.0);
      }
    }
  }
}

TEST_CASE("written corpus files are stable and reloadable") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "wco_corpus_unit_test";
  std::filesystem::remove_all(dir);

  CorpusSpec spec;
  spec.groups = {GroupKind::z2, GroupKind::z3};
  spec.dims = {1};
  spec.draws = 1;
  const std::vector<Scenario> scenarios = wco::generate(spec);
  wco::write_corpus(scenarios, dir);

  std::vector<std::string> first;
  for (const Scenario& s : scenarios) {
    std::ifstream in(dir / (s.id + ".json"));
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    first.push_back(buf.str());
    // Each file parses back into an identical canonical form.
    const Scenario back =
        wco::load_scenario((dir / (s.id + ".json")).string());
    CHECK(wco::scenario_to_json(back).dump() ==
          wco::scenario_to_json(s).dump());
  }

  wco::write_corpus(scenarios, dir);
  std::size_t i = 0;
  for (const Scenario& s : scenarios) {
    std::ifstream in(dir / (s.id + ".json"));
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == first[i++]);
  }
  std::filesystem::remove_all(dir);
}
