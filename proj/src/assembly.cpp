#include "wco/assembly.hpp"

#include <cmath>

namespace wco {

namespace {

void require_valid_exponent(double p) {
  if (std::isinf(p) && p > 0) return;
  if (!(p >= 1.0) || std::isnan(p)) {
    throw Error(Errc::invalid_exponent, "exponent must lie in [1, inf]");
  }
}

}  // namespace

AssembledOperator assemble_direct(const SymbolicElement& b, double p) {
  require_valid_exponent(p);
  const GroupAction& action = b.action();
  const MeasureSpace& space = action.space();
  const int atoms = space.atom_count();
  const int d = b.dim();
  const int size = atoms * d;
  const bool weighted = !std::isinf(p);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (const auto& [g, coeff] : b.terms()) {
    for (int x = 0; x < atoms; ++x) {
      const int y = action.apply_inverse(g, x);
      const double cocycle = weighted ? rn_cocycle(action, g, p, x) : 1.0;
      m.block(x * d, y * d, d, d) += coeff.block(x) * cocycle;
    }
  }

  if (weighted) {
    // W m W^{-1} with W = diag(mu(x)^(1/p) I_d).
    for (int x = 0; x < atoms; ++x) {
      const double wx = std::pow(space.weight(x), 1.0 / p);
      m.middleRows(x * d, d) *= wx;
    }
    for (int y = 0; y < atoms; ++y) {
      const double wy = std::pow(space.weight(y), 1.0 / p);
      m.middleCols(y * d, d) /= wy;
    }
  }

  return AssembledOperator{std::move(m), p, Provenance::direct, -1,
                           b.action_ptr(), d};
}

AssembledOperator assemble_regular(const SymbolicElement& b, double p) {
  require_valid_exponent(p);
  const GroupAction& action = b.action();
  const FiniteGroup& group = action.group();
  const int n = group.order();
  const int atoms = action.space().atom_count();
  const int d = b.dim();
  const int size = n * atoms * d;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (const auto& [g, coeff] : b.terms()) {
    for (int h = 0; h < n; ++h) {
      const int col_slot = group.mul(h, g);
      for (int x = 0; x < atoms; ++x) {
        const int row = (h * atoms + x) * d;
        const int col = (col_slot * atoms + x) * d;
        m.block(row, col, d, d) +=
            coeff.block(action.apply_inverse(h, x));
      }
    }
  }

  return AssembledOperator{std::move(m), p, Provenance::regular, -1,
                           b.action_ptr(), d};
}

AssembledOperator assemble_trajectory(const SymbolicElement& b, int atom,
                                      double p) {
  require_valid_exponent(p);
  const GroupAction& action = b.action();
  const FiniteGroup& group = action.group();
  const int atoms = action.space().atom_count();
  if (atom < 0 || atom >= atoms) {
    throw Error(Errc::invalid_atom, "no atom " + std::to_string(atom));
  }
  const int n = group.order();
  const int d = b.dim();
  const int size = n * d;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size, size);
  for (const auto& [g, coeff] : b.terms()) {
    for (int h = 0; h < n; ++h) {
      const int col_slot = group.mul(h, g);
      m.block(h * d, col_slot * d, d, d) +=
          coeff.block(action.apply_inverse(h, atom));
    }
  }

  return AssembledOperator{std::move(m), p, Provenance::trajectory, atom,
                           b.action_ptr(), d};
}

Eigen::VectorXcd apply(const AssembledOperator& op,
                       const Eigen::VectorXcd& v) {
  if (v.size() != op.matrix.cols()) {
    throw Error(Errc::dimension_mismatch,
                "vector length " + std::to_string(v.size()) +
                    " does not match operator size " +
                    std::to_string(op.matrix.cols()));
  }
  return op.matrix * v;
}

}  // namespace wco
