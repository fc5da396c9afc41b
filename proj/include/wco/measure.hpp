#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wco/errors.hpp"

// Finite atomic measure spaces, finite groups given by multiplication
// tables, and measure-preserving-in-class group actions by atom
// permutations.  All objects are immutable after construction and safe to
// share; compatibility between objects built separately is decided by
// content equality, not identity.

namespace wco {

class MeasureSpace {
 public:
  // Atoms keep their given order; labels must be unique, weights positive.
  MeasureSpace(std::vector<std::string> labels, std::vector<double> weights);

  int atom_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int x) const { return labels_.at(x); }
  double weight(int x) const { return weights_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const;

  bool operator==(const MeasureSpace&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const MeasureSpace>;

SpacePtr build_space(const std::vector<std::pair<std::string, double>>& atoms);

// Finite group presented by its full Cayley table; element 0 is the
// identity.  Associativity, the identity row/column and two-sided inverses
// are all verified at construction.
class FiniteGroup {
 public:
  static constexpr int identity = 0;

  explicit FiniteGroup(std::vector<std::vector<int>> cayley);

  int order() const { return static_cast<int>(cayley_.size()); }
  int mul(int g, int h) const { return cayley_.at(g).at(h); }
  int inv(int g) const { return inverse_.at(g); }
  const std::vector<std::vector<int>>& cayley() const { return cayley_; }

  bool is_abelian() const;
  int element_order(int g) const;

  bool operator==(const FiniteGroup& other) const {
    return cayley_ == other.cayley_;
  }

 private:
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Action of a group on the atoms of a space: one permutation per element,
// perm[g][x] = position of atom x after g acts.  The identity must act
// trivially and perm[g*h] must equal perm[g] followed after perm[h]
// (i.e. alpha_{gh} = alpha_g . alpha_h); both are verified exactly.
class GroupAction {
 public:
  GroupAction(GroupPtr group, SpacePtr space,
              std::vector<std::vector<int>> perms);

  const FiniteGroup& group() const { return *group_; }
  const MeasureSpace& space() const { return *space_; }
  const GroupPtr& group_ptr() const { return group_; }
  const SpacePtr& space_ptr() const { return space_; }

  // alpha_g(x) and alpha_g^{-1}(x).
  int apply(int g, int x) const { return perms_.at(g).at(x); }
  int apply_inverse(int g, int x) const { return inv_perms_.at(g).at(x); }
  const std::vector<std::vector<int>>& perms() const { return perms_; }

  bool operator==(const GroupAction& other) const {
    return *group_ == *other.group_ && *space_ == *other.space_ &&
           perms_ == other.perms_;
  }

 private:
  GroupPtr group_;
  SpacePtr space_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<int>> inv_perms_;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

ActionPtr build_action(GroupPtr group, SpacePtr space,
                       const std::vector<std::vector<int>>& perms);

struct FreenessVerdict {
  bool free = false;
  // Present exactly when free == false: a pair (g, x) with g != identity
  // and alpha_g(x) == x.
  std::optional<std::pair<int, int>> witness;
};

// Radon-Nikodym cocycle of T_g at exponent p on an atomic space:
//   ( mu(alpha_g^{-1}(x)) / mu(x) )^(1/p),  finite p only.
double rn_cocycle(const GroupAction& action, int g, double p, int x);

// Atoms fixed by alpha_g, ascending.
std::vector<int> fixed_atoms(const GroupAction& action, int g);

// Fast criterion: the action is metrically free on a finite atomic space
// iff no non-identity element fixes an atom.
FreenessVerdict check_metrically_free(const GroupAction& action);

// Independent oracle: literal enumeration of the definition.  For every
// subset F of the group with |F| >= 2 and every nonempty atom set D, search
// for a nonempty D' inside D, |D'| <= max_subset_atoms, whose images
// alpha_g(D') for g in F are pairwise disjoint.
FreenessVerdict check_metrically_free_direct(const GroupAction& action,
                                             int max_subset_atoms);

}  // namespace wco
