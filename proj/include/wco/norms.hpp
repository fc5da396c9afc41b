#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json.hpp>

#include "wco/assembly.hpp"

// Operator norms of assembled matrices acting between weighted-coordinate
// p-spaces, plus the closed-form norms available at p = 1 and p = inf when
// the underlying action is metrically free.

namespace wco {

enum class NormMethod {
  exact_rowsum,
  exact_colsum,
  svd,
  power_iteration,
  formula_linf,
  formula_l1,
  brute_force,
};

enum class NormGuarantee {
  exact,
  upper_and_lower_agree,
  lower_bound,
};

const char* norm_method_name(NormMethod m);
const char* norm_guarantee_name(NormGuarantee g);

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::exact_rowsum;
  NormGuarantee guarantee = NormGuarantee::exact;
  int iterations = 0;
  int restarts = 0;
  std::optional<int> witness_atom;  // formula norms: lowest maximizing atom
};

void to_json(nlohmann::json& j, const NormResult& r);

struct PowerOptions {
  int restarts = 32;
  double tol = 1e-12;
  int max_iters = 400;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

// Raised when no power-iteration restart reaches stationarity; the best
// lower bound found so far rides along.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& what, NormResult best_so_far)
      : Error(Errc::no_convergence, what), best(best_so_far) {}
  NormResult best;
};

// Exact norms: maximum absolute column sum at p = 1, maximum absolute row
// sum at p = inf.
NormResult norm_exact(const AssembledOperator& op);

// p in (1, inf): largest singular value at p = 2, otherwise a restarted
// nonlinear power iteration with dual-norm updates; every restart yields a
// certified lower bound and the best one is reported.
NormResult norm_p(const AssembledOperator& op, const PowerOptions& opts = {});
NormResult norm_p(const AssembledOperator& op, int restarts, double tol,
                  int max_iters);

// Direct search over unit vectors: deterministic structured candidates,
// enumerable extreme points (signed basis vectors at p = 1, sign patterns
// at p = inf for up to 12 coordinates), seeded random directions, then a
// shrinking-radius refinement around the incumbent.  Always a lower bound.
NormResult norm_brute_force(const AssembledOperator& op, int samples,
                            std::uint64_t seed);

// Closed-form norm on L^inf models: max over atoms of the max absolute row
// sum of the horizontally concatenated coefficient blocks at that atom.
// Requires a metrically free action.
NormResult formula_norm_linf(const SymbolicElement& b);

// Closed-form norm on L^1 models: the same row-sum functional applied to
// the adjoint blocks of a_g at the composed atom alpha_g(x).  Requires a
// metrically free action.
NormResult formula_norm_l1(const SymbolicElement& b);

// Method ladder used by every verification check: exact norms at p = 1 and
// p = inf, SVD at p = 2, power iteration elsewhere.
NormResult operator_norm(const AssembledOperator& op,
                         const PowerOptions& opts = {});

// Vector p-norm on coordinates, p in [1, inf]; shared by tests.
double vector_p_norm(const Eigen::VectorXcd& v, double p);

}  // namespace wco
