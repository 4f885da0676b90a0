#pragma once

#include <stdexcept>
#include <string>

namespace chl {

/// Error codes for contract violations across the library. Tests match on
/// the code rather than on message text.
enum class errc {
  division_by_zero,
  incompatible_fields,
  invalid_automorphism,
  not_real,
  dimension_mismatch,
  singular_matrix,
  isotropic_polar_vector,
  non_unit_multiplier,
  malformed_word,
  unknown_family,
  disallowed_params,
  degenerate_parameters,
  no_candidate,
  ambiguous_selection,
  no_stratum_table,
  metadata_only_family,
  order_exceeds_bound,
  integrality_not_established,
  inconclusive,
  not_parabolic_shape,
  not_unipotent_corner,
  not_isometry_shape,
  form_mismatch,
  not_common_fixed_point,
  incomplete_profile,
  bad_catalog,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace chl
