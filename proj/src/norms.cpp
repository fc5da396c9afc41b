#include "wco/norms.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wco {

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::exact_rowsum: return "exact_rowsum";
    case NormMethod::exact_colsum: return "exact_colsum";
    case NormMethod::svd: return "svd";
    case NormMethod::power_iteration: return "power_iteration";
    case NormMethod::formula_linf: return "formula_linf";
    case NormMethod::formula_l1: return "formula_l1";
    case NormMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

const char* norm_guarantee_name(NormGuarantee g) {
  switch (g) {
    case NormGuarantee::exact: return "exact";
    case NormGuarantee::upper_and_lower_agree: return "upper_and_lower_agree";
    case NormGuarantee::lower_bound: return "lower_bound";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const NormResult& r) {
  j = nlohmann::json{{"value", r.value},
                     {"method", norm_method_name(r.method)},
                     {"guarantee", norm_guarantee_name(r.guarantee)},
                     {"iterations", r.iterations},
                     {"restarts", r.restarts}};
  if (r.witness_atom) j["witness_atom"] = *r.witness_atom;
}

double vector_p_norm(const Eigen::VectorXcd& v, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      best = std::max(best, std::abs(v(i)));
    }
    return best;
  }
  if (p == 1.0) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::abs(v(i));
    return sum;
  }
  if (p == 2.0) return v.norm();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    sum += std::pow(std::abs(v(i)), p);
  }
  return std::pow(sum, 1.0 / p);
}

// ----- exact norms ----------------------------------------------------------

NormResult norm_exact(const AssembledOperator& op) {
  const auto& m = op.matrix;
  if (op.p == 1.0) {
    const double value = m.cwiseAbs().colwise().sum().maxCoeff();
    return NormResult{value, NormMethod::exact_colsum, NormGuarantee::exact,
                      0, 0, std::nullopt};
  }
  if (std::isinf(op.p) && op.p > 0) {
    const double value = m.cwiseAbs().rowwise().sum().maxCoeff();
    return NormResult{value, NormMethod::exact_rowsum, NormGuarantee::exact,
                      0, 0, std::nullopt};
  }
  throw Error(Errc::unsupported_exponent,
              "exact norms exist only at p = 1 and p = inf");
}

// ----- power iteration ------------------------------------------------------

namespace {

cplx unit_sign(cplx v) {
  const double a = std::abs(v);
  return a == 0.0 ? cplx(0.0, 0.0) : v / a;
}

// The vector u with ||u||_{r'} = 1 and u^H v = ||v||_r (zero stays zero).
Eigen::VectorXcd dual_vector(const Eigen::VectorXcd& v, double r) {
  const double norm = vector_p_norm(v, r);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(v.size());
  if (norm == 0.0) return u;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a == 0.0) continue;
    u(i) = unit_sign(v(i)) * std::pow(a / norm, r - 1.0);
  }
  return u;
}

struct PowerRun {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nonlinear power iteration for ||A||_{p->p}, 1 < p < inf: alternate the
// forward map with the dual-norm gradient update; the estimate is
// monotonically non-decreasing and every value is a lower bound.
PowerRun power_iteration_run(const Eigen::MatrixXcd& a, double p,
                             Eigen::VectorXcd x, double tol, int max_iters) {
  const double q = p / (p - 1.0);
  PowerRun run;
  const double xnorm = vector_p_norm(x, p);
  if (xnorm == 0.0) {
    run.converged = true;
    return run;
  }
  x /= xnorm;
  for (int iter = 1; iter <= max_iters; ++iter) {
    run.iterations = iter;
    const Eigen::VectorXcd y = a * x;
    const double gamma = vector_p_norm(y, p);
    run.value = std::max(run.value, gamma);
    if (gamma == 0.0) {
      run.converged = true;
      return run;
    }
    const Eigen::VectorXcd u = dual_vector(y, p);
    const Eigen::VectorXcd z = a.adjoint() * u;
    const double zq = vector_p_norm(z, q);
    // First-order optimality: gamma is stationary once ||z||_q stops
    // exceeding the current value re(z^H x) = gamma.
    if (zq <= gamma * (1.0 + tol)) {
      run.converged = true;
      return run;
    }
    x = dual_vector(z, q);
  }
  return run;
}

NormResult svd_norm(const AssembledOperator& op) {
  // Largest singular value through the spectrum of A^H A; for the top
  // singular value this is accurate to machine precision relative error.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      op.matrix.adjoint() * op.matrix, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().size() > 0
                         ? es.eigenvalues().maxCoeff()
                         : 0.0;
  const double value = std::sqrt(std::max(top, 0.0));
  return NormResult{value, NormMethod::svd,
                    NormGuarantee::upper_and_lower_agree, 0, 0, std::nullopt};
}

int argmax_column_norm(const Eigen::MatrixXcd& m, double p) {
  int best = 0;
  double best_norm = -1.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double n = vector_p_norm(m.col(c), p);
    if (n > best_norm) {
      best_norm = n;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

NormResult norm_p(const AssembledOperator& op, const PowerOptions& opts) {
  const double p = op.p;
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(Errc::unsupported_exponent,
                "norm_p handles exponents strictly between 1 and inf");
  }
  if (p == 2.0) return svd_norm(op);
  if (opts.restarts < 1) {
    throw Error(Errc::validation_error, "need at least one restart");
  }

  const Eigen::MatrixXcd& a = op.matrix;
  const Eigen::Index n = a.rows();

  NormResult result{0.0, NormMethod::power_iteration,
                    NormGuarantee::lower_bound, 0, opts.restarts,
                    std::nullopt};
  bool any_converged = false;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int r = 0; r < opts.restarts; ++r) {
    Eigen::VectorXcd x0(n);
    if (r == 0) {
      x0.setOnes();
    } else if (r == 1) {
      x0.setZero();
      x0(argmax_column_norm(a, p)) = 1.0;
    } else {
      for (Eigen::Index i = 0; i < n; ++i) {
        x0(i) = cplx(gauss(rng), gauss(rng));
      }
    }
    const PowerRun run =
        power_iteration_run(a, p, std::move(x0), opts.tol, opts.max_iters);
    result.iterations += run.iterations;
    result.value = std::max(result.value, run.value);
    any_converged = any_converged || run.converged;
  }

  if (!any_converged) {
    throw NoConvergenceError(
        "power iteration failed to reach stationarity in " +
            std::to_string(opts.max_iters) + " iterations",
        result);
  }
  return result;
}

NormResult norm_p(const AssembledOperator& op, int restarts, double tol,
                  int max_iters) {
  return norm_p(op, PowerOptions{restarts, tol, max_iters,
                                 PowerOptions{}.seed});
}

// ----- brute force ----------------------------------------------------------

NormResult norm_brute_force(const AssembledOperator& op, int samples,
                            std::uint64_t seed) {
  const Eigen::MatrixXcd& m = op.matrix;
  const Eigen::Index n = m.rows();
  if (n > 64) {
    throw Error(Errc::too_large,
                "brute-force search is limited to 64 coordinates");
  }
  const double p = op.p;

  double best = 0.0;
  Eigen::VectorXcd best_v = Eigen::VectorXcd::Zero(n);
  int evaluations = 0;
  const auto consider = [&](const Eigen::VectorXcd& v) {
    const double vn = vector_p_norm(v, p);
    if (vn == 0.0) return;
    ++evaluations;
    const double ratio = vector_p_norm(m * v, p) / vn;
    if (ratio > best) {
      best = ratio;
      best_v = v / vn;
    }
  };

  // Basis vectors; at p = 1 these exhaust the extreme points up to phase.
  for (Eigen::Index j = 0; j < n; ++j) {
    consider(Eigen::VectorXcd::Unit(n, j));
  }
  // Sign-pattern extreme points of the inf-ball.
  if (std::isinf(p) && n <= 12) {
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
      Eigen::VectorXcd v(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = (bits >> i) & 1 ? -1.0 : 1.0;
      }
      consider(v);
    }
  }
  // Per-row phase-aligned candidates.
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx s = unit_sign(std::conj(m(i, j)));
      v(j) = (s == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : s;
    }
    consider(v);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_direction = [&]() {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    return v;
  };

  const int budget = std::max(samples, 0);
  const int scatter = budget / 2;
  for (int s = 0; s < scatter; ++s) consider(random_direction());

  // Shrinking-radius refinement around the incumbent: still plain
  // evaluation of candidates, so the result stays a certified lower bound.
  int remaining = budget - scatter;
  double radius = 0.5;
  const int per_stage = std::max(remaining / 12, 1);
  int stage_used = 0;
  while (remaining > 0) {
    Eigen::VectorXcd v = best_v + radius * random_direction();
    consider(v);
    --remaining;
    if (++stage_used >= per_stage) {
      stage_used = 0;
      radius *= 0.5;
    }
  }

  return NormResult{best, NormMethod::brute_force, NormGuarantee::lower_bound,
                    evaluations, 0, std::nullopt};
}

// ----- closed-form norms ----------------------------------------------------

namespace {

void require_free(const SymbolicElement& b) {
  const FreenessVerdict verdict = check_metrically_free(b.action());
  if (!verdict.free) {
    throw Error(Errc::action_not_free,
                "the closed-form norms require a metrically free action");
  }
}

NormResult maximize_over_atoms(const std::vector<double>& per_atom,
                               NormMethod method) {
  double best = -1.0;
  int witness = 0;
  for (std::size_t x = 0; x < per_atom.size(); ++x) {
    if (per_atom[x] > best) {
      best = per_atom[x];
      witness = static_cast<int>(x);
    }
  }
  return NormResult{best, method, NormGuarantee::exact, 0, 0, witness};
}

}  // namespace

NormResult formula_norm_linf(const SymbolicElement& b) {
  require_free(b);
  const int atoms = b.action().space().atom_count();
  const int d = b.dim();
  std::vector<double> per_atom(atoms, 0.0);
  for (int x = 0; x < atoms; ++x) {
    // Max absolute row sum of [a_{g1}(x) | ... | a_{gk}(x)].
    for (int i = 0; i < d; ++i) {
      double row = 0.0;
      for (const auto& [g, coeff] : b.terms()) {
        row += coeff.block(x).row(i).cwiseAbs().sum();
      }
      per_atom[x] = std::max(per_atom[x], row);
    }
  }
  return maximize_over_atoms(per_atom, NormMethod::formula_linf);
}

NormResult formula_norm_l1(const SymbolicElement& b) {
  require_free(b);
  const GroupAction& action = b.action();
  const int atoms = action.space().atom_count();
  const int d = b.dim();
  std::vector<double> per_atom(atoms, 0.0);
  for (int x = 0; x < atoms; ++x) {
    // Max absolute row sum of the concatenated adjoints
    // [a_{g1}(alpha_{g1}(x))^* | ... | a_{gk}(alpha_{gk}(x))^*], i.e. max
    // over r of the summed column-r masses of the composed blocks.
    for (int r = 0; r < d; ++r) {
      double row = 0.0;
      for (const auto& [g, coeff] : b.terms()) {
        row += coeff.block(action.apply(g, x)).col(r).cwiseAbs().sum();
      }
      per_atom[x] = std::max(per_atom[x], row);
    }
  }
  return maximize_over_atoms(per_atom, NormMethod::formula_l1);
}

NormResult operator_norm(const AssembledOperator& op,
                         const PowerOptions& opts) {
  if (op.p == 1.0 || std::isinf(op.p)) return norm_exact(op);
  return norm_p(op, opts);
}

}  // namespace wco
