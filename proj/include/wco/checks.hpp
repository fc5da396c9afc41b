#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "wco/norms.hpp"

// Verification checks: every statement of the theory that reduces to a
// finite-dimensional equality or inequality, packaged as a pass/fail report
// with the two compared values and the tolerance that was applied.
//
// Tolerance ladder (fixed): 1e-9 when both sides come from exact methods,
// 1e-6 when an SVD is involved, 1e-4 when a power-iteration lower bound is
// involved.  A pass or fail never hinges on the uncertain side of a lower
// bound: where only lower bounds exist on the large side, certified upper
// bounds (matrix interpolation) stand in.

namespace wco {

struct Tolerances {
  double exact = 1e-9;
  double svd = 1e-6;
  double power = 1e-4;

  double for_p(double p) const;
};

struct CheckReport {
  std::string check_name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  double p = 2.0;
  nlohmann::json details = nlohmann::json::object();
  std::string scenario_id;  // stamped by the scenario runner
};

void to_json(nlohmann::json& j, const CheckReport& r);

nlohmann::json exponent_to_json(double p);

// ||b|| >= ||N_e(b)||: the norm of an element dominates the norm of its
// identity coefficient.  Runs on free and non-free actions alike.
CheckReport check_property_star(const SymbolicElement& b, double p,
                                const Tolerances& tol = {});

// Search for a certified violation of the inequality above; only sensible
// on actions that are not metrically free.  Deterministic candidates built
// from indicator functions of fixed atoms come first, then seeded random
// coefficients localized the same way.
CheckReport check_property_star_failure_search(const ActionPtr& action,
                                               double p, int trials,
                                               std::uint64_t seed,
                                               int dim = 1,
                                               const Tolerances& tol = {});

// b = 0 exactly when every coefficient vanishes: symbolically zero
// elements assemble to (numerically) zero operators, and any surviving
// coefficient forces a strictly positive norm.  Requires a free action.
CheckReport check_property_double_star(const SymbolicElement& b, double p,
                                       const Tolerances& tol = {});

// || sum a_g T_g || = || sum chi(g) a_g T_g || for every character chi of
// an abelian group.
CheckReport check_character_symmetry(const SymbolicElement& b, double p,
                                     const Tolerances& tol = {});

// Norm equality between the direct operator and its regular-representation
// image on free actions; on non-free actions only the one-sided bound
// ||direct|| <= ||regular|| is asserted.
CheckReport check_regular_isomorphism(const SymbolicElement& b, double p,
                                      const Tolerances& tol = {});

// ||regular image|| = max over atoms of the trajectory-representation
// norms.  Holds for every action.
CheckReport check_trajectory_norm(const SymbolicElement& b, double p,
                                  const Tolerances& tol = {});

// ||b||_p <= ||b||_1^(1/p) * ||b||_inf^(1 - 1/p) with the right-hand side
// from the closed-form norms; p strictly between 1 and inf, free action.
CheckReport check_interpolation(const SymbolicElement& b, double p,
                                const Tolerances& tol = {});

// Replacing the weights by any other strictly positive weights on the same
// atoms leaves the operator norm unchanged (free action).
CheckReport check_measure_isomorphism(const SymbolicElement& b,
                                      const SpacePtr& space2, double p,
                                      const Tolerances& tol = {});

}  // namespace wco
