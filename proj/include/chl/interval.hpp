#pragma once

#include <mpfr.h>

#include <string>

#include "chl/rational.hpp"

namespace chl {

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
/// Every operation returns an interval that contains the exact result.
class RInterval {
public:
  RInterval() : RInterval(64) {}
  explicit RInterval(mpfr_prec_t prec);
  RInterval(const RInterval& o);
  RInterval(RInterval&& o) noexcept;
  RInterval& operator=(RInterval o);
  ~RInterval();

  static RInterval exact(long v, mpfr_prec_t prec);
  static RInterval from_rational(const Rational& q, mpfr_prec_t prec);
  /// Enclosure of pi.
  static RInterval pi(mpfr_prec_t prec);
  /// Enclosure of cos(2*pi*num/den) resp. sin(2*pi*num/den).
  static RInterval cos2pi(long num, long den, mpfr_prec_t prec);
  static RInterval sin2pi(long num, long den, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }
  bool contains_zero() const;
  /// -1, 0 (only for the exact zero interval), +1; requires the interval to
  /// exclude zero or be [0,0].
  int certain_sign() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }
  mpfr_ptr lo_raw() { return lo_; }
  mpfr_ptr hi_raw() { return hi_; }
  double mid_d() const { return (lo_d() + hi_d()) / 2; }
  double width_d() const;
  std::string str() const;

  friend RInterval operator+(const RInterval& a, const RInterval& b);
  friend RInterval operator-(const RInterval& a, const RInterval& b);
  friend RInterval operator-(const RInterval& a);
  friend RInterval operator*(const RInterval& a, const RInterval& b);

private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;

  friend class CInterval;
};

/// Rectangular complex interval.
class CInterval {
public:
  CInterval() = default;
  CInterval(RInterval re, RInterval im) : re_(std::move(re)), im_(std::move(im)) {}

  static CInterval exact(long re, long im, mpfr_prec_t prec);
  /// Enclosure of exp(2*pi*i*num/den).
  static CInterval root_of_unity(long num, long den, mpfr_prec_t prec);

  const RInterval& re() const { return re_; }
  const RInterval& im() const { return im_; }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  std::string str() const;

  friend CInterval operator+(const CInterval& a, const CInterval& b);
  friend CInterval operator-(const CInterval& a, const CInterval& b);
  friend CInterval operator*(const CInterval& a, const CInterval& b);
  friend CInterval operator*(const RInterval& a, const CInterval& b);

private:
  RInterval re_, im_;
};

} // namespace chl
