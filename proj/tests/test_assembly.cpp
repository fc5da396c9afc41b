#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "wco/assembly.hpp"
#include "wco/errors.hpp"
#include "wco/norms.hpp"

using wco::AssembledOperator;
using wco::cplx;
using wco::Coefficient;
using wco::Error;
using wco::SymbolicElement;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SymbolicElement unit_shift(const wco::ActionPtr& act, int g) {
  const int n = act->space().atom_count();
  return SymbolicElement::make(
      act, 1,
      {{g, Coefficient::scalar(act->space_ptr(),
                               std::vector<cplx>(n, 1.0))}});
}

double max_abs_row_sum(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

TEST_CASE("direct assembly: identity, permutation and weighted entries") {
  const wco::ActionPtr act = fix::rot3();

  for (double p : {1.0, 2.0, 3.0, kInf}) {
    const AssembledOperator id = wco::assemble_direct(unit_shift(act, 0), p);
    CHECK((id.matrix - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs()
              .maxCoeff() < 1e-14);
  }

  // Uniform weights: T_g is the plain cyclic permutation matrix at p = 2.
  const wco::ActionPtr uni = fix::rot3(fix::uniform3());
  const AssembledOperator perm = wco::assemble_direct(unit_shift(uni, 1), 2.0);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
  for (int x = 0; x < 3; ++x) expected(x, uni->apply_inverse(1, x)) = 1.0;
  CHECK((perm.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);

  // Nonuniform weights at p = 1: every column of T_g still sums to 1 --
  // the matrix realizes an isometry of the coordinate 1-norm.
  const AssembledOperator shift1 = wco::assemble_direct(unit_shift(act, 1), 1.0);
  const Eigen::VectorXd colsums = shift1.matrix.cwiseAbs().colwise().sum();
  for (int j = 0; j < 3; ++j) CHECK(colsums(j) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(wco::assemble_direct(unit_shift(act, 1), 0.5), Error);
}

TEST_CASE("direct assembly is exponent-independent in unweighted coordinates") {
  // The cocycle and the diagonal change of coordinates cancel exactly, so
  // the same matrix represents b at every exponent.
  std::mt19937_64 rng(31);
  const std::vector<wco::ActionPtr> actions = {fix::rot3(), fix::swapfix_z2()};
  for (const wco::ActionPtr& act : actions) {
    for (int dim : {1, 2}) {
      const SymbolicElement b = wco::random_element(act, dim, rng);
      const Eigen::MatrixXcd at_inf = wco::assemble_direct(b, kInf).matrix;
      for (double p : {1.0, 2.0, 3.0}) {
        const Eigen::MatrixXcd at_p = wco::assemble_direct(b, p).matrix;
        CHECK((at_p - at_inf).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("measure rescaling leaves the assembled matrix unchanged") {
  std::mt19937_64 rng(32);
  const wco::SpacePtr scaled = wco::build_space(
      {{"x0", 7 * 0.5}, {"x1", 7 * 0.25}, {"x2", 7 * 0.25}});
  const wco::ActionPtr act = fix::rot3();
  const wco::ActionPtr act7 = fix::rot3(scaled);
  for (int dim : {1, 2}) {
    const SymbolicElement b = wco::random_element(act, dim, rng);
    // Transplant the same blocks onto the rescaled space.
    std::vector<std::pair<int, Coefficient>> terms;
    for (const auto& [g, coeff] : b.terms()) {
      std::vector<Eigen::MatrixXcd> blocks;
      for (int x = 0; x < 3; ++x) blocks.push_back(coeff.block(x));
      terms.emplace_back(g, Coefficient(scaled, dim, blocks));
    }
    const SymbolicElement b7 = SymbolicElement::make(act7, dim, terms);
    for (double p : {1.0, 2.0, 3.0, kInf}) {
      const Eigen::MatrixXcd m1 = wco::assemble_direct(b, p).matrix;
      const Eigen::MatrixXcd m2 = wco::assemble_direct(b7, p).matrix;
      CHECK((m1 - m2).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("shift operators assemble to isometries at every exponent") {
  const std::vector<wco::ActionPtr> actions = {
      fix::rot3(), wco::translation_action(
                       wco::make_z2xz2(), wco::build_space({{"a", 0.4},
                                                            {"b", 0.3},
                                                            {"c", 0.2},
                                                            {"d", 0.1}}))};
  for (const wco::ActionPtr& act : actions) {
    for (int g = 0; g < act->group().order(); ++g) {
      for (double p : {1.0, 2.0, 3.0, kInf}) {
        const AssembledOperator op = wco::assemble_direct(unit_shift(act, g), p);
        const wco::NormResult r = wco::operator_norm(op);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("direct assembly represents the covariance product") {
  std::mt19937_64 rng(33);
  const std::vector<wco::ActionPtr> actions = {
      fix::rot3(), fix::trivial_z2_on3(), fix::swapfix_z2()};
  for (const wco::ActionPtr& act : actions) {
    for (int dim : {1, 2}) {
      for (int trial = 0; trial < 3; ++trial) {
        const SymbolicElement b1 = wco::random_element(act, dim, rng);
        const SymbolicElement b2 = wco::random_element(act, dim, rng);
        for (double p : {1.0, 2.0, kInf}) {
          const Eigen::MatrixXcd lhs =
              wco::assemble_direct(wco::multiply(b1, b2), p).matrix;
          const Eigen::MatrixXcd rhs = wco::assemble_direct(b1, p).matrix *
                                       wco::assemble_direct(b2, p).matrix;
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("regular assembly: identity size, covariance and the fixture value") {
  const wco::ActionPtr act = fix::rot3();
  const SymbolicElement b = fix::running_element();

  const AssembledOperator id =
      wco::assemble_regular(unit_shift(act, 0), 2.0);
  CHECK(id.matrix.rows() == 9);
  CHECK((id.matrix - Eigen::MatrixXcd::Identity(9, 9)).cwiseAbs()
            .maxCoeff() < 1e-14);

  // V_g abar V_g^{-1} equals the regular image of (a . alpha_g^{-1}).
  const wco::SpacePtr& s = act->space_ptr();
  const Coefficient a = fix::scalar123(s);
  const SymbolicElement ae = SymbolicElement::make(act, 1, {{0, a}});
  for (int g = 0; g < 3; ++g) {
    const Eigen::MatrixXcd vg =
        wco::assemble_regular(unit_shift(act, g), 2.0).matrix;
    const Eigen::MatrixXcd abar = wco::assemble_regular(ae, 2.0).matrix;
    const Eigen::MatrixXcd conj = vg * abar * vg.inverse();
    const SymbolicElement moved = SymbolicElement::make(
        act, 1, {{0, wco::automorphism_apply(*act, g, a)}});
    const Eigen::MatrixXcd target = wco::assemble_regular(moved, 2.0).matrix;
    CHECK((conj - target).cwiseAbs().maxCoeff() < 1e-12);
  }

  // Fixture: the 9x9 regular matrix has max absolute row sum 4.
  const AssembledOperator reg = wco::assemble_regular(b, kInf);
  CHECK(max_abs_row_sum(reg.matrix) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("fourier coefficients can be read back off the regular matrix") {
  const wco::ActionPtr act = fix::rot3();
  std::mt19937_64 rng(34);
  for (int dim : {1, 2}) {
    const SymbolicElement b = wco::random_element(act, dim, rng);
    const Eigen::MatrixXcd reg = wco::assemble_regular(b, kInf).matrix;
    const int n = act->space().atom_count();
    const int block = n * dim;  // one group slot
    for (int g = 0; g < act->group().order(); ++g) {
      const Coefficient ag = wco::fourier_coefficient(b, g);
      // Row slot e, column slot e*g = g holds Diag_x(a_g(x)).
      for (int x = 0; x < n; ++x) {
        const Eigen::MatrixXcd got =
            reg.block(x * dim, g * block + x * dim, dim, dim);
        CHECK((got - ag.block(x)).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("trajectory assembly: diagonal echo and the fixture maximum") {
  const wco::ActionPtr act = fix::rot3();
  const SymbolicElement b = fix::running_element();
  const wco::SpacePtr& s = act->space_ptr();

  // a T_e is diagonal with entries a(alpha_h^{-1}(x)).
  const SymbolicElement ae =
      SymbolicElement::make(act, 1, {{0, fix::scalar123(s)}});
  for (int x = 0; x < 3; ++x) {
    const AssembledOperator traj = wco::assemble_trajectory(ae, x, 2.0);
    CHECK(traj.matrix.rows() == 3);
    for (int h = 0; h < 3; ++h) {
      const cplx want = fix::scalar123(s).block(act->apply_inverse(h, x))(0, 0);
      CHECK(std::abs(traj.matrix(h, h) - want) < 1e-14);
      for (int k = 0; k < 3; ++k) {
        if (k != h) CHECK(std::abs(traj.matrix(h, k)) < 1e-14);
      }
    }
  }

  // Row sums of the fixture trajectory matrix are |a_e(alpha_h^{-1} x)|+1;
  // the max over atoms is 4.
  double best = 0.0;
  for (int x = 0; x < 3; ++x) {
    const AssembledOperator traj = wco::assemble_trajectory(b, x, kInf);
    for (int h = 0; h < 3; ++h) {
      const double row = traj.matrix.row(h).cwiseAbs().sum();
      const double want =
          std::abs(fix::scalar123(s).block(act->apply_inverse(h, x))(0, 0)) +
          1.0;
      CHECK(row == doctest::Approx(want).epsilon(1e-12));
    }
    best = std::max(best, max_abs_row_sum(traj.matrix));
  }
  CHECK(best == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(wco::assemble_trajectory(b, 5, 2.0), Error);
}

TEST_CASE("operator application") {
  const wco::ActionPtr act = fix::rot3();
  const AssembledOperator id = wco::assemble_direct(unit_shift(act, 0), 2.0);
  std::mt19937_64 rng(35);
  const Eigen::VectorXcd v = fix::rand_vector(3, rng);
  CHECK((wco::apply(id, v) - v).cwiseAbs().maxCoeff() < 1e-14);

  // Permutation with uniform weights moves basis vectors.
  const wco::ActionPtr uni = fix::rot3(fix::uniform3());
  const AssembledOperator perm = wco::assemble_direct(unit_shift(uni, 1), 2.0);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
  e0(0) = 1.0;
  const Eigen::VectorXcd moved = wco::apply(perm, e0);
  CHECK(std::abs(moved(uni->apply(1, 0)) - 1.0) < 1e-14);

  CHECK((wco::apply(perm, Eigen::VectorXcd::Zero(3))).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK_THROWS_AS(wco::apply(perm, Eigen::VectorXcd::Zero(4)), Error);
}
