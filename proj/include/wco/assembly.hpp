#pragma once

#include <Eigen/Dense>

#include "wco/algebra.hpp"

// Dense matrix realizations of symbolic elements.
//
// Coordinate conventions (documented and stable, tests rely on them):
//  * direct:     index (x, i)    -> x*d + i          (atom-major)
//  * regular:    index (h, x, i) -> (h*N + x)*d + i  (group-slot major)
//  * trajectory: index (h, i)    -> h*d + i
// where N is the atom count, d the fibre dimension, h a group slot.
//
// For finite p the direct matrix is expressed in unweighted coordinates
// u(x) = mu(x)^(1/p) f(x): the weighted-shift cocycle is built in first and
// then conjugated away by W = diag(mu(x)^(1/p) I_d), so standard vector
// p-norms on coordinates equal the function-space norms.  At p = inf no
// weight enters anywhere.  Regular and trajectory blocks carry no measure
// weights: slot translation is already an isometry and multiplication
// blocks commute with W.

namespace wco {

enum class Provenance { direct, regular, trajectory };

struct AssembledOperator {
  Eigen::MatrixXcd matrix;
  double p = 2.0;
  Provenance provenance = Provenance::direct;
  int trajectory_atom = -1;  // >= 0 only for trajectory provenance
  ActionPtr action;
  int dim = 1;
};

// sum_g diag(a_g) P_g(p) conjugated into unweighted coordinates; P_g(p) is
// the permutation sending block coordinate alpha_g^{-1}(x) to x scaled by
// the cocycle rn_cocycle(g, p, x).
AssembledOperator assemble_direct(const SymbolicElement& b, double p);

// Block matrix over group slots: slot row h, slot column h*g carries the
// multiplication block of a_g . alpha_h^{-1}.
AssembledOperator assemble_regular(const SymbolicElement& b, double p);

// Representation along the orbit of one atom: slot row h, slot column h*g
// carries the single block a_g(alpha_h^{-1}(x)); no measure weights.
AssembledOperator assemble_trajectory(const SymbolicElement& b, int atom,
                                      double p);

Eigen::VectorXcd apply(const AssembledOperator& op,
                       const Eigen::VectorXcd& v);

}  // namespace wco
