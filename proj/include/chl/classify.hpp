#pragma once

#include "chl/hermitian.hpp"

namespace chl {

enum class IsometryType { elliptic_finite, elliptic_infinite, parabolic, loxodromic };

struct ElementClass {
  IsometryType type;
  unsigned order = 0; // set for elliptic_finite
  std::string detail;

  bool is(IsometryType t) const { return type == t; }
};

std::string isometry_type_name(IsometryType t);

/// Classifies an isometry of a signature-(n,1) Hermitian form:
///   loxodromic  - some eigenvalue off the unit circle (certified),
///   parabolic   - unit eigenvalues, some algebraic multiplicity exceeds
///                 the geometric one (tested at field eigenvalues),
///   elliptic    - diagonalizable with unit eigenvalues; finite order is
///                 decided exactly (roots of unity), otherwise infinite.
/// Pre: a preserves h exactly. Errors: form_mismatch; inconclusive when the
/// certificates cannot decide (reported, never guessed).
ElementClass classify_element(const MatC& a, const HermForm& h);

} // namespace chl
