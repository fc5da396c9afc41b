#pragma once

#include <complex>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wco/measure.hpp"

// Symbolic elements b = sum_g a_g T_g of the algebra generated by matrix
// multiplication operators a (one d x d block per atom) and the weighted
// shift operators T_g attached to a group action.  Multiplication uses the
// exact covariance rule (a T_g)(b T_h) = a * (b . alpha_g^{-1}) T_{g h};
// no matrices are assembled at this layer.

namespace wco {

using cplx = std::complex<double>;

// Operator-valued function on the atoms: block(x) is the d x d matrix the
// function takes at atom x.
class Coefficient {
 public:
  Coefficient(SpacePtr space, int dim, std::vector<Eigen::MatrixXcd> blocks);

  static Coefficient zero(SpacePtr space, int dim);
  // Scalar (d = 1) coefficient from one value per atom.
  static Coefficient scalar(SpacePtr space, const std::vector<cplx>& values);
  // The same block at every atom.
  static Coefficient constant(SpacePtr space, const Eigen::MatrixXcd& block);
  // Scalar indicator of a single atom.
  static Coefficient indicator(SpacePtr space, int atom, cplx value = 1.0);

  const Eigen::MatrixXcd& block(int x) const { return blocks_.at(x); }
  int dim() const { return dim_; }
  const MeasureSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  bool is_zero() const;  // exact, entrywise

  Coefficient operator*(const Coefficient& rhs) const;  // pointwise product
  Coefficient operator+(const Coefficient& rhs) const;
  Coefficient scaled(cplx factor) const;

 private:
  SpacePtr space_;
  int dim_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

// Finite formal sum b = sum_g a_g T_g over a fixed action.  Coefficients
// whose blocks are all exactly zero are pruned, so the stored support is
// canonical and symbolic zero means an empty term map.
class SymbolicElement {
 public:
  SymbolicElement(ActionPtr action, int dim,
                  std::map<int, Coefficient> terms);

  static SymbolicElement zero(ActionPtr action, int dim);
  static SymbolicElement make(
      ActionPtr action, int dim,
      const std::vector<std::pair<int, Coefficient>>& terms);

  const GroupAction& action() const { return *action_; }
  const ActionPtr& action_ptr() const { return action_; }
  int dim() const { return dim_; }
  const std::map<int, Coefficient>& terms() const { return terms_; }
  std::vector<int> support() const;

 private:
  ActionPtr action_;
  int dim_;
  std::map<int, Coefficient> terms_;
};

// a . alpha_g^{-1}: the result's block at atom x is a's block at
// alpha_g^{-1}(x).  This is the inner automorphism T_g a T_g^{-1}.
Coefficient automorphism_apply(const GroupAction& action, int g,
                               const Coefficient& a);

// Product in the algebra via the covariance rule; exact on coefficients.
SymbolicElement multiply(const SymbolicElement& lhs,
                         const SymbolicElement& rhs);

// N_g(b) = a_g: exact projection onto the coefficient at T_g, zero when g
// is outside the support.
Coefficient fourier_coefficient(const SymbolicElement& b, int g);

bool is_symbolically_zero(const SymbolicElement& b);

// Group character: unimodular values, one per element, value 1 at the
// identity, multiplicative.  All three are verified at construction.
class Character {
 public:
  Character(GroupPtr group, std::vector<cplx> values);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  cplx value(int g) const { return values_.at(g); }
  const std::vector<cplx>& values() const { return values_; }

 private:
  GroupPtr group_;
  std::vector<cplx> values_;
};

// All |G| characters of a finite abelian group, enumerated from a cyclic
// decomposition of the group; deterministic order.
std::vector<Character> enumerate_characters(const GroupPtr& group);

// sum_g a_g T_g  ->  sum_g chi(g) a_g T_g.
SymbolicElement character_twist(const SymbolicElement& b,
                                const Character& chi);

}  // namespace wco
