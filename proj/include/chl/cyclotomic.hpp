#pragma once

#include <memory>
#include <string>
#include <vector>

#include "chl/interval.hpp"
#include "chl/rational.hpp"

namespace chl {

class CycElem;

/// The cyclotomic field Q(zeta_n), elements written in the power basis
/// 1, zeta, ..., zeta^(phi(n)-1) modulo the n-th cyclotomic polynomial.
/// embedding_k selects the complex embedding zeta |-> exp(2*pi*i*k/n); it
/// only affects numeric evaluation and sign certification, never the
/// exact arithmetic.
class CycField : public std::enable_shared_from_this<CycField> {
public:
  using Ptr = std::shared_ptr<const CycField>;

  /// Shared, cached instance. Requires n >= 1 and gcd(k, n) = 1.
  static Ptr get(unsigned n, unsigned embedding_k = 1);

  unsigned conductor() const { return n_; }
  unsigned degree() const { return dim_; }
  unsigned embedding_k() const { return k_; }
  /// Same field, different chosen embedding.
  Ptr with_embedding(unsigned k) const { return get(n_, k); }

  /// Coefficients of the n-th cyclotomic polynomial (monic, ascending).
  const std::vector<Int>& modulus() const { return phi_; }

  CycElem zero() const;
  CycElem one() const;
  CycElem from_rational(const Rational& q) const;
  /// zeta_n^e for any integer exponent e.
  CycElem zeta_pow(long e) const;
  /// zeta_m^e for m | n, as an element of this field.
  CycElem subfield_root(unsigned m, long e) const;
  CycElem from_coeffs(std::vector<Rational> c) const;

  bool same_field(const CycField& o) const { return n_ == o.n_ && k_ == o.k_; }

private:
  CycField(unsigned n, unsigned k);

  unsigned n_, dim_, k_;
  std::vector<Int> phi_;
  // zeta^m in the power basis for m = 0..n-1; integral because phi_ is monic.
  std::vector<std::vector<Rational>> pow_table_;

  friend class CycElem;
};

/// An element of Q(zeta_n). Immutable value type; two elements are equal
/// iff their coefficient vectors are equal (the representation is canonical).
class CycElem {
public:
  CycElem() = default;
  CycElem(CycField::Ptr f, std::vector<Rational> c);

  const CycField::Ptr& field() const { return f_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;
  /// Fixed by complex conjugation.
  bool is_real() const;

  CycElem operator-() const;
  friend CycElem operator+(const CycElem& a, const CycElem& b);
  friend CycElem operator-(const CycElem& a, const CycElem& b);
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  /// Errors: division_by_zero.
  friend CycElem operator/(const CycElem& a, const CycElem& b);
  friend bool operator==(const CycElem& a, const CycElem& b);
  friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

  CycElem& operator+=(const CycElem& b) { return *this = *this + b; }
  CycElem& operator-=(const CycElem& b) { return *this = *this - b; }
  CycElem& operator*=(const CycElem& b) { return *this = *this * b; }

  CycElem inverse() const;
  CycElem pow(long e) const;
  /// Image under zeta |-> conj(zeta) = zeta^(n-1).
  CycElem conj() const;
  /// Image under zeta |-> zeta^k; errors: invalid_automorphism unless gcd(k,n)=1.
  CycElem galois(long k) const;
  /// x * conj(x); real and non-negative under every embedding.
  CycElem norm_squared() const { return *this * conj(); }

  /// Explicit coercion into Q(zeta_m); requires conductor | m.
  /// Errors: incompatible_fields.
  CycElem lift_to(const CycField::Ptr& target) const;

  /// Certified enclosure of the chosen complex embedding.
  CInterval embed(mpfr_prec_t precision_bits = 128) const;

  /// Exact sign of a real element under the chosen embedding: symbolic zero
  /// test first, then interval evaluation at doubling precision.
  /// Errors: not_real.
  int real_sign() const;

  /// Exact comparison of real elements: real_sign of (*this - b).
  int compare_real(const CycElem& b) const { return (*this - b).real_sign(); }

  /// Unique key per value; used for hashing matrices and trace sets.
  std::string canonical_key() const;
  /// "Q(zeta_n): [c0, c1, ...]" with exact rational coordinates.
  std::string str() const;
  /// Short human form like "1/2 - 3/2*z^3".
  std::string pretty() const;

private:
  CycField::Ptr f_;
  std::vector<Rational> c_;
};

/// The field automorphism sigma_k : zeta |-> zeta^k of Q(zeta_n).
struct GaloisAut {
  CycField::Ptr field;
  long k = 1;

  GaloisAut(CycField::Ptr f, long kk);
  CycElem operator()(const CycElem& x) const { return x.galois(k); }
  GaloisAut compose(const GaloisAut& inner) const;
  bool is_identity() const { return k % field->conductor() == 1; }
};

/// Smallest common cyclotomic overfield, preserving the embedding of a.
CycField::Ptr common_field(const CycField::Ptr& a, const CycField::Ptr& b);

unsigned euler_phi(unsigned n);

/// Exponents coprime to n, i.e. (Z/nZ)^* as a sorted list.
std::vector<unsigned> coprime_residues(unsigned n);

/// The positive square root of a positive integer, as an element of the
/// smallest convenient cyclotomic field (quadratic Gauss sums per prime).
CycElem sqrt_positive_integer(unsigned m);

} // namespace chl
