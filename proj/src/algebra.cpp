#include "wco/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wco {

namespace {

bool same_space(const MeasureSpace& a, const MeasureSpace& b) {
  return &a == &b || a == b;
}

bool block_is_zero(const Eigen::MatrixXcd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const cplx v = m(r, c);
      if (v.real() != 0.0 || v.imag() != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

// ----- Coefficient ----------------------------------------------------------

Coefficient::Coefficient(SpacePtr space, int dim,
                         std::vector<Eigen::MatrixXcd> blocks)
    : space_(std::move(space)), dim_(dim), blocks_(std::move(blocks)) {
  if (!space_) throw Error(Errc::empty_space, "coefficient needs a space");
  if (dim_ < 1) {
    throw Error(Errc::dim_mismatch, "fibre dimension must be >= 1");
  }
  if (static_cast<int>(blocks_.size()) != space_->atom_count()) {
    throw Error(Errc::space_mismatch,
                "expected one block per atom (" +
                    std::to_string(space_->atom_count()) + "), got " +
                    std::to_string(blocks_.size()));
  }
  for (const auto& block : blocks_) {
    if (block.rows() != dim_ || block.cols() != dim_) {
      throw Error(Errc::dim_mismatch, "coefficient block is not " +
                                          std::to_string(dim_) + "x" +
                                          std::to_string(dim_));
    }
  }
}

Coefficient Coefficient::zero(SpacePtr space, int dim) {
  if (!space) throw Error(Errc::empty_space, "coefficient needs a space");
  std::vector<Eigen::MatrixXcd> blocks(space->atom_count(),
                                       Eigen::MatrixXcd::Zero(dim, dim));
  return Coefficient(std::move(space), dim, std::move(blocks));
}

Coefficient Coefficient::scalar(SpacePtr space,
                                const std::vector<cplx>& values) {
  if (!space) throw Error(Errc::empty_space, "coefficient needs a space");
  if (static_cast<int>(values.size()) != space->atom_count()) {
    throw Error(Errc::space_mismatch, "expected one value per atom");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(values.size());
  for (const cplx v : values) {
    blocks.push_back(Eigen::MatrixXcd::Constant(1, 1, v));
  }
  return Coefficient(std::move(space), 1, std::move(blocks));
}

Coefficient Coefficient::constant(SpacePtr space,
                                  const Eigen::MatrixXcd& block) {
  if (!space) throw Error(Errc::empty_space, "coefficient needs a space");
  if (block.rows() != block.cols() || block.rows() < 1) {
    throw Error(Errc::dim_mismatch, "coefficient block must be square");
  }
  std::vector<Eigen::MatrixXcd> blocks(space->atom_count(), block);
  return Coefficient(std::move(space), static_cast<int>(block.rows()),
                     std::move(blocks));
}

Coefficient Coefficient::indicator(SpacePtr space, int atom, cplx value) {
  if (!space) throw Error(Errc::empty_space, "coefficient needs a space");
  if (atom < 0 || atom >= space->atom_count()) {
    throw Error(Errc::invalid_atom, "no atom " + std::to_string(atom));
  }
  std::vector<cplx> values(space->atom_count(), cplx(0.0, 0.0));
  values[atom] = value;
  return scalar(std::move(space), values);
}

bool Coefficient::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), block_is_zero);
}

Coefficient Coefficient::operator*(const Coefficient& rhs) const {
  if (!same_space(*space_, *rhs.space_)) {
    throw Error(Errc::space_mismatch, "coefficients live on different spaces");
  }
  if (dim_ != rhs.dim_) {
    throw Error(Errc::dim_mismatch, "coefficients have different dimensions");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    blocks.push_back(blocks_[x] * rhs.blocks_[x]);
  }
  return Coefficient(space_, dim_, std::move(blocks));
}

Coefficient Coefficient::operator+(const Coefficient& rhs) const {
  if (!same_space(*space_, *rhs.space_)) {
    throw Error(Errc::space_mismatch, "coefficients live on different spaces");
  }
  if (dim_ != rhs.dim_) {
    throw Error(Errc::dim_mismatch, "coefficients have different dimensions");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t x = 0; x < blocks_.size(); ++x) {
    blocks.push_back(blocks_[x] + rhs.blocks_[x]);
  }
  return Coefficient(space_, dim_, std::move(blocks));
}

Coefficient Coefficient::scaled(cplx factor) const {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& block : blocks_) blocks.push_back(factor * block);
  return Coefficient(space_, dim_, std::move(blocks));
}

// ----- SymbolicElement ------------------------------------------------------

SymbolicElement::SymbolicElement(ActionPtr action, int dim,
                                 std::map<int, Coefficient> terms)
    : action_(std::move(action)), dim_(dim), terms_(std::move(terms)) {
  if (!action_) throw Error(Errc::action_mismatch, "element needs an action");
  if (dim_ < 1) {
    throw Error(Errc::dim_mismatch, "fibre dimension must be >= 1");
  }
  const int n = action_->group().order();
  for (auto it = terms_.begin(); it != terms_.end();) {
    const auto& [g, coeff] = *it;
    if (g < 0 || g >= n) {
      throw Error(Errc::missing_element,
                  "no group element " + std::to_string(g));
    }
    if (coeff.dim() != dim_) {
      throw Error(Errc::dim_mismatch,
                  "coefficient at term " + std::to_string(g) +
                      " has the wrong dimension");
    }
    if (!same_space(coeff.space(), action_->space())) {
      throw Error(Errc::space_mismatch,
                  "coefficient at term " + std::to_string(g) +
                      " lives on a different space");
    }
    // Canonical form: drop exactly-zero coefficients.
    if (coeff.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

SymbolicElement SymbolicElement::zero(ActionPtr action, int dim) {
  return SymbolicElement(std::move(action), dim, {});
}

SymbolicElement SymbolicElement::make(
    ActionPtr action, int dim,
    const std::vector<std::pair<int, Coefficient>>& terms) {
  std::map<int, Coefficient> map;
  for (const auto& [g, coeff] : terms) {
    auto [it, inserted] = map.insert({g, coeff});
    if (!inserted) it->second = it->second + coeff;
  }
  return SymbolicElement(std::move(action), dim, std::move(map));
}

std::vector<int> SymbolicElement::support() const {
  std::vector<int> out;
  out.reserve(terms_.size());
  for (const auto& [g, coeff] : terms_) out.push_back(g);
  return out;
}

// ----- operations -----------------------------------------------------------

Coefficient automorphism_apply(const GroupAction& action, int g,
                               const Coefficient& a) {
  if (!same_space(a.space(), action.space())) {
    throw Error(Errc::space_mismatch,
                "coefficient lives on a different space than the action");
  }
  const int n = action.group().order();
  if (g < 0 || g >= n) {
    throw Error(Errc::missing_element, "no group element " + std::to_string(g));
  }
  const int atoms = action.space().atom_count();
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(atoms);
  for (int x = 0; x < atoms; ++x) {
    blocks.push_back(a.block(action.apply_inverse(g, x)));
  }
  return Coefficient(a.space_ptr(), a.dim(), std::move(blocks));
}

SymbolicElement multiply(const SymbolicElement& lhs,
                         const SymbolicElement& rhs) {
  if (!(lhs.action() == rhs.action())) {
    throw Error(Errc::action_mismatch,
                "factors are defined over different actions");
  }
  if (lhs.dim() != rhs.dim()) {
    throw Error(Errc::dim_mismatch, "factors have different dimensions");
  }
  const GroupAction& action = lhs.action();
  std::map<int, Coefficient> terms;
  for (const auto& [g, a] : lhs.terms()) {
    for (const auto& [h, b] : rhs.terms()) {
      const int gh = action.group().mul(g, h);
      Coefficient product = a * automorphism_apply(action, g, b);
      auto [it, inserted] = terms.insert({gh, product});
      if (!inserted) it->second = it->second + product;
    }
  }
  return SymbolicElement(lhs.action_ptr(), lhs.dim(), std::move(terms));
}

Coefficient fourier_coefficient(const SymbolicElement& b, int g) {
  const int n = b.action().group().order();
  if (g < 0 || g >= n) {
    throw Error(Errc::missing_element, "no group element " + std::to_string(g));
  }
  const auto it = b.terms().find(g);
  if (it == b.terms().end()) {
    return Coefficient::zero(b.action().space_ptr(), b.dim());
  }
  return it->second;
}

bool is_symbolically_zero(const SymbolicElement& b) {
  return b.terms().empty();
}

// ----- characters -----------------------------------------------------------

Character::Character(GroupPtr group, std::vector<cplx> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (!group_) throw Error(Errc::group_mismatch, "character needs a group");
  const int n = group_->order();
  if (static_cast<int>(values_.size()) != n) {
    throw Error(Errc::validation_error, "expected one value per group element");
  }
  constexpr double tol = 1e-12;
  for (int g = 0; g < n; ++g) {
    if (std::abs(std::abs(values_[g]) - 1.0) > tol) {
      throw Error(Errc::validation_error,
                  "character value at element " + std::to_string(g) +
                      " is not unimodular");
    }
  }
  if (std::abs(values_[FiniteGroup::identity] - cplx(1.0, 0.0)) > tol) {
    throw Error(Errc::validation_error, "character must send identity to 1");
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (std::abs(values_[group_->mul(g, h)] - values_[g] * values_[h]) >
          tol) {
        throw Error(Errc::validation_error,
                    "character is not multiplicative at (" +
                        std::to_string(g) + ", " + std::to_string(h) + ")");
      }
    }
  }
}

namespace {

// Search for a cyclic decomposition: a list of generators whose cyclic
// spans intersect trivially and multiply out to the whole group.  For a
// finite abelian group one always exists; candidates are tried by
// descending element order so the usual case needs no backtracking.
struct DecompositionSearch {
  const FiniteGroup& group;
  std::vector<int> orders;

  explicit DecompositionSearch(const FiniteGroup& g) : group(g) {
    orders.resize(g.order());
    for (int e = 0; e < g.order(); ++e) orders[e] = g.element_order(e);
  }

  bool extend(std::vector<bool>& span, std::vector<int>& generators) {
    const int n = group.order();
    int covered = 0;
    for (bool b : span) covered += b ? 1 : 0;
    if (covered == n) return true;

    std::vector<int> candidates;
    for (int g = 1; g < n; ++g) {
      if (!span[g]) candidates.push_back(g);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return orders[a] > orders[b]; });

    for (int g : candidates) {
      // The cyclic span of g must meet the current span only at elements
      // already absorbed by lower powers staying outside; concretely every
      // proper power of g must lie outside the span.
      bool clean = true;
      int power = g;
      for (int k = 1; k < orders[g]; ++k) {
        if (span[power]) {
          clean = false;
          break;
        }
        power = group.mul(power, g);
      }
      if (!clean) continue;

      std::vector<bool> extended(n, false);
      std::vector<int> members;
      for (int e = 0; e < n; ++e) {
        if (span[e]) members.push_back(e);
      }
      for (int e : members) {
        int shifted = e;
        for (int k = 0; k < orders[g]; ++k) {
          extended[shifted] = true;
          shifted = group.mul(shifted, g);
        }
      }
      generators.push_back(g);
      if (extend(extended, generators)) {
        span.swap(extended);
        return true;
      }
      generators.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<Character> enumerate_characters(const GroupPtr& group) {
  if (!group) throw Error(Errc::group_mismatch, "no group given");
  if (!group->is_abelian()) {
    throw Error(Errc::non_abelian_group,
                "character enumeration requires an abelian group");
  }
  const int n = group->order();

  std::vector<int> generators;
  {
    DecompositionSearch search(*group);
    std::vector<bool> span(n, false);
    span[FiniteGroup::identity] = true;
    if (!search.extend(span, generators)) {
      throw std::logic_error("no cyclic decomposition found for abelian group");
    }
  }

  std::vector<int> gen_orders;
  gen_orders.reserve(generators.size());
  for (int g : generators) gen_orders.push_back(group->element_order(g));

  // Exponent tuple of every element in the chosen decomposition.
  const int k = static_cast<int>(generators.size());
  std::vector<std::vector<int>> exponents(n);
  {
    std::vector<int> tuple(k, 0);
    int produced = 0;
    while (true) {
      int element = FiniteGroup::identity;
      for (int l = 0; l < k; ++l) {
        for (int m = 0; m < tuple[l]; ++m) {
          element = group->mul(element, generators[l]);
        }
      }
      if (!exponents[element].empty()) {
        throw std::logic_error("cyclic decomposition is not direct");
      }
      exponents[element] = tuple;
      ++produced;
      int l = k - 1;
      while (l >= 0) {
        if (++tuple[l] < gen_orders[l]) break;
        tuple[l] = 0;
        --l;
      }
      if (l < 0) break;
    }
    if (produced != n) {
      throw std::logic_error("cyclic decomposition does not cover the group");
    }
  }

  std::vector<Character> out;
  out.reserve(n);
  std::vector<int> index(k, 0);
  while (true) {
    std::vector<cplx> values(n);
    for (int e = 0; e < n; ++e) {
      double angle = 0.0;
      for (int l = 0; l < k; ++l) {
        angle += 2.0 * std::numbers::pi * index[l] * exponents[e][l] /
                 gen_orders[l];
      }
      values[e] = std::polar(1.0, angle);
    }
    // Snap the identity exactly; the constructor enforces the rest.
    values[FiniteGroup::identity] = cplx(1.0, 0.0);
    out.emplace_back(group, std::move(values));
    int l = k - 1;
    while (l >= 0) {
      if (++index[l] < gen_orders[l]) break;
      index[l] = 0;
      --l;
    }
    if (l < 0) break;
  }
  if (static_cast<int>(out.size()) != n) {
    throw std::logic_error("character count does not match group order");
  }
  return out;
}

SymbolicElement character_twist(const SymbolicElement& b,
                                const Character& chi) {
  if (!(chi.group() == b.action().group())) {
    throw Error(Errc::group_mismatch,
                "character belongs to a different group");
  }
  std::map<int, Coefficient> terms;
  for (const auto& [g, coeff] : b.terms()) {
    terms.insert({g, coeff.scaled(chi.value(g))});
  }
  return SymbolicElement(b.action_ptr(), b.dim(), std::move(terms));
}

}  // namespace wco
