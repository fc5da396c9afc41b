#include "wco/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "wco/errors.hpp"

namespace wco {
namespace {

// Deterministic uniform draw in [0, 1) from the top 53 bits; avoids
// std::uniform_real_distribution, whose output is implementation-defined.
double canonical01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_pm1(std::mt19937_64& rng) { return 2.0 * canonical01(rng) - 1.0; }

std::uint64_t combine(std::uint64_t s, std::uint64_t v) {
  return s ^ (v + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2));
}

std::uint64_t scenario_seed(std::uint64_t base, std::uint64_t group,
                            std::uint64_t recipe, std::uint64_t dim,
                            std::uint64_t draw) {
  std::uint64_t s = base;
  s = combine(s, group);
  s = combine(s, recipe);
  s = combine(s, dim);
  s = combine(s, draw);
  return s;
}

SpacePtr dyadic_space(int atoms) {
  std::vector<std::pair<std::string, double>> spec;
  const std::vector<double> weights = dyadic_weights(atoms);
  for (int x = 0; x < atoms; ++x) {
    spec.emplace_back("x" + std::to_string(x), weights[x]);
  }
  return build_space(spec);
}

// a_e(x) = (x+1) I_d together with a_g = I_d at the first non-identity
// element; this is the running example family (for Z3, d = 1 it is exactly
// a_e = (1,2,3), a_g = (1,1,1)).
SymbolicElement canonical_free_element(const ActionPtr& action, int dim) {
  const int atoms = action->space().atom_count();
  const SpacePtr& space = action->space_ptr();
  std::vector<Eigen::MatrixXcd> identity_blocks(
      atoms, Eigen::MatrixXcd::Identity(dim, dim));
  std::vector<Eigen::MatrixXcd> ramp_blocks;
  for (int x = 0; x < atoms; ++x) {
    ramp_blocks.push_back(static_cast<double>(x + 1) *
                          Eigen::MatrixXcd::Identity(dim, dim));
  }
  return SymbolicElement::make(
      action, dim,
      {{FiniteGroup::identity, Coefficient(space, dim, ramp_blocks)},
       {1, Coefficient(space, dim, identity_blocks)}});
}

// T_e - T_g at the first non-identity element: on any atom fixed by g the
// two shifts cancel, so on actions with fixed atoms this element witnesses
// failure of the coefficient-domination property.
SymbolicElement counterexample_element(const ActionPtr& action, int dim) {
  const int atoms = action->space().atom_count();
  const SpacePtr& space = action->space_ptr();
  std::vector<Eigen::MatrixXcd> plus(atoms,
                                     Eigen::MatrixXcd::Identity(dim, dim));
  std::vector<Eigen::MatrixXcd> minus(
      atoms, -Eigen::MatrixXcd::Identity(dim, dim));
  return SymbolicElement::make(
      action, dim,
      {{FiniteGroup::identity, Coefficient(space, dim, plus)},
       {1, Coefficient(space, dim, minus)}});
}

struct ActionRecipe {
  std::string name;
  ActionPtr action;
  bool free = false;
};

void verify_declared_freeness(const ActionRecipe& recipe) {
  const GroupAction& action = *recipe.action;
  const FreenessVerdict fast = check_metrically_free(action);
  const FreenessVerdict direct =
      check_metrically_free_direct(action, action.space().atom_count());
  if (fast.free != recipe.free || direct.free != recipe.free) {
    throw std::logic_error("corpus: declared freeness of action '" +
                           recipe.name + "' disagrees with the checkers");
  }
}

std::vector<std::string> free_checks(bool abelian) {
  std::vector<std::string> checks = {
      "interpolation",        "measure_isomorphism", "property_double_star",
      "property_star",        "regular_isomorphism", "trajectory_norm"};
  if (abelian) checks.insert(checks.begin(), "character_symmetry");
  return checks;
}

std::vector<std::string> non_free_checks() {
  return {"property_star_failure_search", "regular_isomorphism",
          "trajectory_norm"};
}

}  // namespace

const char* group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::z2: return "z2";
    case GroupKind::z3: return "z3";
    case GroupKind::z4: return "z4";
    case GroupKind::z5: return "z5";
    case GroupKind::z6: return "z6";
    case GroupKind::z2xz2: return "z2xz2";
    case GroupKind::s3: return "s3";
  }
  throw std::logic_error("group_kind_name: unknown kind");
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw Error(Errc::not_a_group, "cyclic order must be positive");
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cayley[i][j] = (i + j) % n;
  }
  return std::make_shared<const FiniteGroup>(std::move(cayley));
}

GroupPtr make_z2xz2() {
  std::vector<std::vector<int>> cayley(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) cayley[i][j] = i ^ j;
  }
  return std::make_shared<const FiniteGroup>(std::move(cayley));
}

GroupPtr make_s3() {
  std::vector<std::array<int, 3>> elems;
  std::array<int, 3> p = {0, 1, 2};
  do {
    elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (elems[k] == q) return static_cast<int>(k);
    }
    throw std::logic_error("make_s3: composition left the permutation set");
  };
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> comp;
      for (int i = 0; i < 3; ++i) comp[i] = elems[a][elems[b][i]];
      cayley[a][b] = index_of(comp);
    }
  }
  return std::make_shared<const FiniteGroup>(std::move(cayley));
}

GroupPtr make_group(GroupKind kind) {
  switch (kind) {
    case GroupKind::z2: return make_cyclic(2);
    case GroupKind::z3: return make_cyclic(3);
    case GroupKind::z4: return make_cyclic(4);
    case GroupKind::z5: return make_cyclic(5);
    case GroupKind::z6: return make_cyclic(6);
    case GroupKind::z2xz2: return make_z2xz2();
    case GroupKind::s3: return make_s3();
  }
  throw std::logic_error("make_group: unknown kind");
}

std::vector<double> dyadic_weights(int atoms) {
  if (atoms < 1) throw Error(Errc::empty_space, "dyadic_weights: no atoms");
  std::vector<double> weights;
  double remaining = 1.0;
  for (int x = 0; x + 1 < atoms; ++x) {
    weights.push_back(std::ldexp(1.0, -(x + 1)));
    remaining -= weights.back();
  }
  weights.push_back(remaining);
  return weights;
}

ActionPtr rotation_action(const GroupPtr& group, const SpacePtr& space) {
  const int n = group->order();
  if (space->atom_count() != n) {
    throw Error(Errc::action_mismatch,
                "rotation_action: atom count must equal the group order");
  }
  std::vector<std::vector<int>> perms(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < n; ++x) perms[g][x] = (x + g) % n;
  }
  return build_action(group, space, perms);
}

ActionPtr translation_action(const GroupPtr& group, const SpacePtr& space) {
  const int n = group->order();
  if (space->atom_count() != n) {
    throw Error(Errc::action_mismatch,
                "translation_action: atom count must equal the group order");
  }
  std::vector<std::vector<int>> perms(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < n; ++x) perms[g][x] = group->mul(x, group->inv(g));
  }
  return build_action(group, space, perms);
}

ActionPtr trivial_action(const GroupPtr& group, const SpacePtr& space) {
  std::vector<int> id(space->atom_count());
  for (int x = 0; x < space->atom_count(); ++x) id[x] = x;
  return build_action(group, space,
                      std::vector<std::vector<int>>(group->order(), id));
}

ActionPtr swap_two_fix_one_action(const GroupPtr& z2, const SpacePtr& space) {
  if (z2->order() != 2) {
    throw Error(Errc::group_mismatch,
                "swap_two_fix_one_action: needs a group of order 2");
  }
  if (space->atom_count() != 3) {
    throw Error(Errc::action_mismatch,
                "swap_two_fix_one_action: needs exactly three atoms");
  }
  return build_action(z2, space, {{0, 1, 2}, {1, 0, 2}});
}

SymbolicElement random_element(const ActionPtr& action, int dim,
                               std::mt19937_64& rng) {
  const int order = action->group().order();
  const int atoms = action->space().atom_count();
  std::vector<int> support = {FiniteGroup::identity};
  for (int g = 1; g < order; ++g) {
    if (canonical01(rng) < 0.5) support.push_back(g);
  }
  if (support.size() == 1 && order > 1) {
    support.push_back(
        1 + static_cast<int>(rng() % static_cast<std::uint64_t>(order - 1)));
  }
  std::vector<std::pair<int, Coefficient>> terms;
  for (int g : support) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int x = 0; x < atoms; ++x) {
      Eigen::MatrixXcd block(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          block(i, j) = cplx(uniform_pm1(rng), uniform_pm1(rng));
        }
      }
      blocks.push_back(std::move(block));
    }
    terms.emplace_back(g, Coefficient(action->space_ptr(), dim, blocks));
  }
  return SymbolicElement::make(action, dim, terms);
}

std::vector<Scenario> generate(const CorpusSpec& spec) {
  if (spec.max_atoms < 1 || spec.max_atoms > 6) {
    throw Error(Errc::bounds_exceeded,
                "corpus: max_atoms must lie in [1, 6], got " +
                    std::to_string(spec.max_atoms));
  }
  if (spec.draws < 1) {
    throw Error(Errc::bounds_exceeded, "corpus: draws must be at least 1");
  }
  for (int d : spec.dims) {
    if (d != 1 && d != 2) {
      throw Error(Errc::bounds_exceeded,
                  "corpus: block dimension must be 1 or 2, got " +
                      std::to_string(d));
    }
  }

  const std::vector<double> exponents = {
      1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()};

  std::vector<Scenario> scenarios;
  std::set<std::string> seen_ids;

  for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
    const GroupKind kind = spec.groups[gi];
    const GroupPtr group = make_group(kind);

    std::vector<ActionRecipe> recipes;
    if (spec.freeness != FreenessFilter::non_free_only) {
      if (group->order() <= spec.max_atoms) {
        const SpacePtr space = dyadic_space(group->order());
        const bool cyclic = kind != GroupKind::z2xz2 && kind != GroupKind::s3;
        recipes.push_back({cyclic ? "rotation" : "translation",
                           cyclic ? rotation_action(group, space)
                                  : translation_action(group, space),
                           true});
      }
    }
    if (spec.freeness != FreenessFilter::free_only && spec.max_atoms >= 3) {
      const SpacePtr space = dyadic_space(3);
      recipes.push_back({"trivial", trivial_action(group, space), false});
      if (kind == GroupKind::z2) {
        recipes.push_back(
            {"swapfix", swap_two_fix_one_action(group, space), false});
      }
    }

    for (std::size_t ri = 0; ri < recipes.size(); ++ri) {
      const ActionRecipe& recipe = recipes[ri];
      verify_declared_freeness(recipe);
      const std::vector<std::string> checks =
          recipe.free ? free_checks(group->is_abelian()) : non_free_checks();
      std::vector<double> uniform(
          recipe.action->space().atom_count(),
          1.0 / recipe.action->space().atom_count());

      for (int d : spec.dims) {
        for (int draw = 0; draw < spec.draws; ++draw) {
          const std::uint64_t seed = scenario_seed(
              spec.seed, static_cast<std::uint64_t>(kind), ri,
              static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(draw));
          std::mt19937_64 rng(seed);
          SymbolicElement element =
              draw == 0 ? (recipe.free ? canonical_free_element(recipe.action, d)
                                       : counterexample_element(recipe.action, d))
                        : random_element(recipe.action, d, rng);
          std::string id =
              std::string(group_kind_name(kind)) + "_" + recipe.name;
          if (d != 1 || draw != 0) {
            id += "_d" + std::to_string(d) + "_r" + std::to_string(draw);
          }
          if (!seen_ids.insert(id).second) {
            throw std::logic_error("corpus: duplicate scenario id " + id);
          }
          scenarios.push_back(Scenario{
              id,
              recipe.action->space_ptr(),
              recipe.free ? std::optional<std::vector<double>>(uniform)
                          : std::nullopt,
              group,
              recipe.action,
              d,
              std::move(element),
              exponents,
              checks,
              seed,
              Tolerances{},
          });
        }
      }
    }
  }
  return scenarios;
}

void write_corpus(const std::vector<Scenario>& scenarios,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const Scenario& scenario : scenarios) {
    const std::filesystem::path path = dir / (scenario.id + ".json");
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("corpus: cannot open " + path.string() +
                               " for writing");
    }
    out << scenario_to_json(scenario).dump(2) << '\n';
    if (!out) {
      throw std::runtime_error("corpus: write failed for " + path.string());
    }
  }
}

}  // namespace wco
