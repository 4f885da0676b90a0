#pragma once

#include "chl/cyclotomic.hpp"

namespace chl {

/// Dense polynomial over a cyclotomic field, ascending coefficients.
/// Just enough machinery for characteristic-polynomial analysis.
struct Poly {
  CycField::Ptr field;
  std::vector<CycElem> c; // c[0] + c[1] x + ...

  static Poly from_coeffs(std::vector<CycElem> coeffs);
  unsigned degree() const { return c.empty() ? 0 : static_cast<unsigned>(c.size()) - 1; }
  bool is_constant() const { return degree() == 0; }
  void trim();

  CycElem eval(const CycElem& x) const;
  /// Multiplicity of x0 as a root (0 when not a root).
  unsigned root_multiplicity(const CycElem& x0) const;
  /// Exact deflation by (x - x0)^mult; requires divisibility.
  Poly deflate(const CycElem& x0, unsigned mult) const;

  friend Poly operator*(const Poly& a, const Poly& b);
  /// Remainder of x^e modulo this polynomial (monic leading coefficient not
  /// required); used to test whether the roots are roots of unity.
  Poly x_pow_mod(unsigned long e) const;
  /// True when this polynomial divides x^e - 1.
  bool divides_x_pow_minus_1(unsigned long e) const;

  Poly derivative() const;
  /// Leading coefficient normalized to 1.
  Poly monic() const;
};

/// Monic gcd over the field (Euclid).
Poly poly_gcd(Poly a, Poly b);

} // namespace chl
