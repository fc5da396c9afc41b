#include "wco/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wco {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_space: return "EmptySpace";
    case Errc::nonpositive_weight: return "NonpositiveWeight";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::not_a_group: return "NotAGroup";
    case Errc::not_homomorphism: return "NotHomomorphism";
    case Errc::identity_not_fixed: return "IdentityNotFixed";
    case Errc::missing_element: return "MissingElement";
    case Errc::invalid_atom: return "InvalidAtom";
    case Errc::space_too_large: return "SpaceTooLarge";
    case Errc::infinite_exponent: return "InfiniteExponent";
    case Errc::invalid_exponent: return "InvalidExponent";
    case Errc::unsupported_exponent: return "UnsupportedExponent";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::action_mismatch: return "ActionMismatch";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::group_mismatch: return "GroupMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::atom_mismatch: return "AtomMismatch";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::too_large: return "TooLarge";
    case Errc::action_not_free: return "ActionNotFree";
    case Errc::action_is_free: return "ActionIsFree";
    case Errc::non_abelian_group: return "NonAbelianGroup";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
    case Errc::unknown_check: return "UnknownCheck";
    case Errc::bounds_exceeded: return "BoundsExceeded";
  }
  return "UnknownError";
}

// ----- MeasureSpace ---------------------------------------------------------

MeasureSpace::MeasureSpace(std::vector<std::string> labels,
                           std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.empty()) {
    throw Error(Errc::empty_space, "measure space needs at least one atom");
  }
  if (labels_.size() != weights_.size()) {
    throw Error(Errc::empty_space, "label/weight count mismatch");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw Error(Errc::nonpositive_weight,
                  "atom '" + labels_[i] + "' has non-positive weight");
    }
  }
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      throw Error(Errc::duplicate_label, "duplicate atom label '" + label + "'");
    }
  }
}

double MeasureSpace::total_mass() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

SpacePtr build_space(const std::vector<std::pair<std::string, double>>& atoms) {
  std::vector<std::string> labels;
  std::vector<double> weights;
  labels.reserve(atoms.size());
  weights.reserve(atoms.size());
  for (const auto& [label, weight] : atoms) {
    labels.push_back(label);
    weights.push_back(weight);
  }
  return std::make_shared<const MeasureSpace>(std::move(labels),
                                              std::move(weights));
}

// ----- FiniteGroup ----------------------------------------------------------

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> cayley)
    : cayley_(std::move(cayley)) {
  const int n = static_cast<int>(cayley_.size());
  if (n == 0) throw Error(Errc::not_a_group, "empty multiplication table");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(cayley_[g].size()) != n) {
      throw Error(Errc::not_a_group, "multiplication table is not square");
    }
    for (int h = 0; h < n; ++h) {
      const int k = cayley_[g][h];
      if (k < 0 || k >= n) {
        throw Error(Errc::not_a_group, "table entry out of range");
      }
    }
  }
  for (int g = 0; g < n; ++g) {
    if (cayley_[identity][g] != g || cayley_[g][identity] != g) {
      throw Error(Errc::not_a_group, "element 0 is not a two-sided identity");
    }
  }
  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (cayley_[g][h] == identity && cayley_[h][g] == identity) {
        inverse_[g] = h;
        break;
      }
    }
    if (inverse_[g] < 0) {
      throw Error(Errc::not_a_group,
                  "element " + std::to_string(g) + " has no two-sided inverse");
    }
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      for (int k = 0; k < n; ++k) {
        if (cayley_[cayley_[g][h]][k] != cayley_[g][cayley_[h][k]]) {
          throw Error(Errc::not_a_group, "multiplication is not associative");
        }
      }
    }
  }
}

bool FiniteGroup::is_abelian() const {
  const int n = order();
  for (int g = 0; g < n; ++g) {
    for (int h = g + 1; h < n; ++h) {
      if (cayley_[g][h] != cayley_[h][g]) return false;
    }
  }
  return true;
}

int FiniteGroup::element_order(int g) const {
  int k = g;
  int ord = 1;
  while (k != identity) {
    k = mul(k, g);
    ++ord;
    if (ord > order()) {
      throw std::logic_error("element order exceeds group order");
    }
  }
  return ord;
}

// ----- GroupAction ----------------------------------------------------------

GroupAction::GroupAction(GroupPtr group, SpacePtr space,
                         std::vector<std::vector<int>> perms)
    : group_(std::move(group)), space_(std::move(space)),
      perms_(std::move(perms)) {
  if (!group_ || !space_) {
    throw Error(Errc::missing_element, "action needs a group and a space");
  }
  const int n = group_->order();
  const int atoms = space_->atom_count();
  if (static_cast<int>(perms_.size()) != n) {
    throw Error(Errc::missing_element,
                "expected one permutation per group element (" +
                    std::to_string(n) + "), got " +
                    std::to_string(perms_.size()));
  }
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(perms_[g].size()) != atoms) {
      throw Error(Errc::missing_element,
                  "permutation for element " + std::to_string(g) +
                      " has wrong length");
    }
    for (int x = 0; x < atoms; ++x) {
      if (perms_[g][x] < 0 || perms_[g][x] >= atoms) {
        throw Error(Errc::invalid_atom,
                    "permutation for element " + std::to_string(g) +
                        " maps atom " + std::to_string(x) + " out of range");
      }
    }
  }
  for (int x = 0; x < atoms; ++x) {
    if (perms_[FiniteGroup::identity][x] != x) {
      throw Error(Errc::identity_not_fixed,
                  "identity element must act trivially");
    }
  }
  // alpha_{g h} = alpha_g . alpha_h, exactly.  Together with the identity
  // row this forces every perms_[g] to be a bijection.
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int gh = group_->mul(g, h);
      for (int x = 0; x < atoms; ++x) {
        if (perms_[gh][x] != perms_[g][perms_[h][x]]) {
          throw Error(Errc::not_homomorphism,
                      "permutations violate the product rule at (g, h) = (" +
                          std::to_string(g) + ", " + std::to_string(h) + ")");
        }
      }
    }
  }
  inv_perms_.assign(n, std::vector<int>(atoms, 0));
  for (int g = 0; g < n; ++g) {
    for (int x = 0; x < atoms; ++x) {
      inv_perms_[g][perms_[g][x]] = x;
    }
  }
}

ActionPtr build_action(GroupPtr group, SpacePtr space,
                       const std::vector<std::vector<int>>& perms) {
  return std::make_shared<const GroupAction>(std::move(group),
                                             std::move(space), perms);
}

// ----- cocycle and freeness -------------------------------------------------

double rn_cocycle(const GroupAction& action, int g, double p, int x) {
  if (std::isinf(p)) {
    throw Error(Errc::infinite_exponent,
                "the cocycle has no weight factor at p = inf");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(Errc::invalid_exponent, "exponent must lie in [1, inf)");
  }
  const int n = action.group().order();
  if (g < 0 || g >= n) {
    throw Error(Errc::missing_element, "no group element " + std::to_string(g));
  }
  const int atoms = action.space().atom_count();
  if (x < 0 || x >= atoms) {
    throw Error(Errc::invalid_atom, "no atom " + std::to_string(x));
  }
  const double ratio =
      action.space().weight(action.apply_inverse(g, x)) /
      action.space().weight(x);
  return std::pow(ratio, 1.0 / p);
}

std::vector<int> fixed_atoms(const GroupAction& action, int g) {
  const int n = action.group().order();
  if (g < 0 || g >= n) {
    throw Error(Errc::missing_element, "no group element " + std::to_string(g));
  }
  std::vector<int> fixed;
  for (int x = 0; x < action.space().atom_count(); ++x) {
    if (action.apply(g, x) == x) fixed.push_back(x);
  }
  return fixed;
}

FreenessVerdict check_metrically_free(const GroupAction& action) {
  for (int g = 1; g < action.group().order(); ++g) {
    for (int x = 0; x < action.space().atom_count(); ++x) {
      if (action.apply(g, x) == x) {
        return FreenessVerdict{false, std::make_pair(g, x)};
      }
    }
  }
  return FreenessVerdict{true, std::nullopt};
}

namespace {

// Image of an atom bitmask under alpha_g.
unsigned apply_mask(const GroupAction& action, int g, unsigned mask) {
  unsigned out = 0;
  while (mask != 0) {
    const int x = std::countr_zero(mask);
    mask &= mask - 1;
    out |= 1u << action.apply(g, x);
  }
  return out;
}

}  // namespace

FreenessVerdict check_metrically_free_direct(const GroupAction& action,
                                             int max_subset_atoms) {
  const int n = action.group().order();
  const int atoms = action.space().atom_count();
  if (atoms > 8 || n > 8) {
    throw Error(Errc::space_too_large,
                "direct enumeration is limited to 8 atoms and group order 8");
  }
  if (max_subset_atoms < 1) {
    throw Error(Errc::validation_error, "max_subset_atoms must be >= 1");
  }

  // Precompute alpha_g on bitmask subsets for all elements and singletons.
  const unsigned full = (1u << atoms) - 1u;

  bool free = true;
  for (unsigned fset = 0; fset <= (1u << n) - 1u && free; ++fset) {
    if (std::popcount(fset) < 2) continue;
    std::vector<int> members;
    for (int g = 0; g < n; ++g) {
      if (fset & (1u << g)) members.push_back(g);
    }
    for (unsigned delta = 1; delta <= full && free; ++delta) {
      bool found = false;
      // Enumerate sub-subsets of delta literally.
      for (unsigned sub = delta; sub != 0 && !found;
           sub = (sub - 1) & delta) {
        if (std::popcount(sub) > max_subset_atoms) continue;
        bool disjoint = true;
        std::vector<unsigned> images(members.size());
        for (std::size_t i = 0; i < members.size() && disjoint; ++i) {
          images[i] = apply_mask(action, members[i], sub);
          for (std::size_t j = 0; j < i && disjoint; ++j) {
            if ((images[i] & images[j]) != 0) disjoint = false;
          }
        }
        if (disjoint) found = true;
      }
      if (!found) free = false;
    }
  }

  if (free) return FreenessVerdict{true, std::nullopt};

  // Attach a concrete fixed pair as the witness; on atomic spaces a failed
  // enumeration always comes with one.
  for (int g = 1; g < n; ++g) {
    for (int x = 0; x < atoms; ++x) {
      if (action.apply(g, x) == x) {
        return FreenessVerdict{false, std::make_pair(g, x)};
      }
    }
  }
  throw std::logic_error(
      "enumeration failed without a fixed atom; this cannot happen on "
      "finite atomic spaces");
}

}  // namespace wco
