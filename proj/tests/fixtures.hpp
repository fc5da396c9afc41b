#pragma once

// Shared builders for the recurring examples: three dyadic atoms under the
// Z3 rotation with coefficients a_e = (1,2,3), a_g = (1,1,1), plus the
// standard non-free actions.  Everything is rebuilt per call; compatibility
// is by content, so distinct pointers interoperate.

#include <cstdint>
#include <random>
#include <vector>

#include "wco/algebra.hpp"
#include "wco/corpus.hpp"
#include "wco/measure.hpp"

namespace fix {

inline wco::SpacePtr space3() {
  return wco::build_space({{"x0", 0.5}, {"x1", 0.25}, {"x2", 0.25}});
}

inline wco::SpacePtr uniform3() {
  return wco::build_space(
      {{"x0", 1.0 / 3}, {"x1", 1.0 / 3}, {"x2", 1.0 / 3}});
}

inline wco::ActionPtr rot3(wco::SpacePtr space = space3()) {
  return wco::rotation_action(wco::make_cyclic(3), std::move(space));
}

inline wco::Coefficient scalar123(const wco::SpacePtr& space) {
  return wco::Coefficient::scalar(space, {1.0, 2.0, 3.0});
}

inline wco::Coefficient scalar111(const wco::SpacePtr& space) {
  return wco::Coefficient::scalar(space, {1.0, 1.0, 1.0});
}

// a_e = (1,2,3), a_g = (1,1,1) over the Z3 rotation.
inline wco::SymbolicElement running_element() {
  wco::ActionPtr action = rot3();
  const wco::SpacePtr& space = action->space_ptr();
  return wco::SymbolicElement::make(
      action, 1, {{0, scalar123(space)}, {1, scalar111(space)}});
}

// T_e - T_g over an arbitrary action, scalar coefficients.
inline wco::SymbolicElement difference_element(const wco::ActionPtr& action) {
  const wco::SpacePtr& space = action->space_ptr();
  const int n = space->atom_count();
  return wco::SymbolicElement::make(
      action, 1,
      {{0, wco::Coefficient::scalar(space, std::vector<wco::cplx>(n, 1.0))},
       {1, wco::Coefficient::scalar(space, std::vector<wco::cplx>(n, -1.0))}});
}

inline wco::ActionPtr trivial_z2_on3() {
  return wco::trivial_action(wco::make_cyclic(2), space3());
}

inline wco::ActionPtr swapfix_z2() {
  return wco::swap_two_fix_one_action(wco::make_cyclic(2), space3());
}

inline double rand01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline wco::cplx rand_cplx(std::mt19937_64& rng) {
  return {2.0 * rand01(rng) - 1.0, 2.0 * rand01(rng) - 1.0};
}

inline Eigen::VectorXcd rand_vector(int n, std::mt19937_64& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rand_cplx(rng);
  return v;
}

}  // namespace fix
