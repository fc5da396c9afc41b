#pragma once

#include <stdexcept>
#include <string>

namespace wco {

// Every rejection the library can produce carries one of these codes.  The
// scenario runner turns codes raised by check preconditions into "refused"
// report entries instead of crashing, so the set doubles as the refusal
// vocabulary of the CLI.
enum class Errc {
  // measure / group / action construction
  empty_space,
  nonpositive_weight,
  duplicate_label,
  not_a_group,
  not_homomorphism,
  identity_not_fixed,
  missing_element,
  invalid_atom,
  space_too_large,
  // exponents
  infinite_exponent,
  invalid_exponent,
  unsupported_exponent,
  // cross-object compatibility
  space_mismatch,
  action_mismatch,
  dim_mismatch,
  group_mismatch,
  dimension_mismatch,
  atom_mismatch,
  // norm engine
  no_convergence,
  too_large,
  // verification preconditions
  action_not_free,
  action_is_free,
  non_abelian_group,
  // scenario / corpus I/O
  parse_error,
  validation_error,
  unknown_check,
  bounds_exceeded,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace wco
