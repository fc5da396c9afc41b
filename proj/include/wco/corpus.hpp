#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "wco/scenario.hpp"

namespace wco {

// Families of finite groups available to the generator.
enum class GroupKind { z2, z3, z4, z5, z6, z2xz2, s3 };

const char* group_kind_name(GroupKind kind);

enum class FreenessFilter { free_only, non_free_only, mixed };

// Deterministic recipe for a family of scenarios. The generator walks
// groups, dimensions, and draw indices in order, so equal specs produce
// byte-identical scenario lists.
struct CorpusSpec {
  int max_atoms = 6;
  std::vector<GroupKind> groups = {GroupKind::z2,    GroupKind::z3,
                                   GroupKind::z4,    GroupKind::z5,
                                   GroupKind::z6,    GroupKind::z2xz2,
                                   GroupKind::s3};
  FreenessFilter freeness = FreenessFilter::mixed;
  std::vector<int> dims = {1, 2};
  int draws = 3;            // coefficient draws per (group, action, dim)
  std::uint64_t seed = 20260814;
};

// Group constructors. Elements are indices into the multiplication table;
// index 0 is always the identity.
GroupPtr make_cyclic(int n);
GroupPtr make_z2xz2();
// Permutations of {0,1,2} in lexicographic order of their one-line form.
GroupPtr make_s3();
GroupPtr make_group(GroupKind kind);

// Dyadic weights (1/2, 1/4, ..., 1/2^{n-1}, 1/2^{n-1}); they sum to 1 and
// are pairwise distinct except for the last two, which keeps cocycles
// nontrivial.
std::vector<double> dyadic_weights(int atoms);

// Z_n acting on n atoms by x -> x + g (mod n). Free for n >= 2.
ActionPtr rotation_action(const GroupPtr& group, const SpacePtr& space);
// G acting on |G| atoms by right translation x -> x * g^{-1}. Free.
ActionPtr translation_action(const GroupPtr& group, const SpacePtr& space);
// Every group element acts as the identity permutation. Non-free for |G|>1.
ActionPtr trivial_action(const GroupPtr& group, const SpacePtr& space);
// Z2 on three atoms: the generator swaps atoms 0,1 and fixes atom 2.
ActionPtr swap_two_fix_one_action(const GroupPtr& z2, const SpacePtr& space);

// Random element supported on the identity plus a nonempty random subset of
// the remaining group elements; block entries have real and imaginary parts
// uniform in [-1, 1].
SymbolicElement random_element(const ActionPtr& action, int dim,
                               std::mt19937_64& rng);

// Generate the scenario family described by `spec`. Every action's declared
// freeness is re-verified with the exhaustive checker before use. Groups
// whose natural atom count exceeds max_atoms are skipped. Throws
// Error(Errc::bounds_exceeded) when the spec itself is out of range
// (max_atoms > 6, d outside {1,2}, draws < 1).
std::vector<Scenario> generate(const CorpusSpec& spec);

// Write each scenario to dir/<id>.json in list order (canonical JSON,
// two-space indent, trailing newline).
void write_corpus(const std::vector<Scenario>& scenarios,
                  const std::filesystem::path& dir);

}  // namespace wco
