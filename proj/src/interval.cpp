#include "chl/interval.hpp"

#include <cassert>
#include <sstream>
#include <utility>

namespace chl {

RInterval::RInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RInterval::RInterval(const RInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInterval::RInterval(RInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RInterval& RInterval::operator=(RInterval o) {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

RInterval::~RInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RInterval RInterval::exact(long v, mpfr_prec_t prec) {
  RInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RInterval RInterval::from_rational(const Rational& q, mpfr_prec_t prec) {
  RInterval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RInterval RInterval::pi(mpfr_prec_t prec) {
  RInterval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

namespace {

// Enclosure of f(2*pi*num/den) for f = cos or sin, via the midpoint value
// plus a |f'| <= 1 error bound for the argument radius and rounding slack.
RInterval trig2pi(long num, long den, mpfr_prec_t prec, bool want_sin) {
  assert(den > 0);
  num %= den;
  if (num < 0) num += den; // argument now in [0, 2*pi)
  mpfr_prec_t work = prec + 16;
  mpfr_t arg_lo, arg_hi, mid, val, rad, slack;
  mpfr_inits2(work, arg_lo, arg_hi, mid, val, rad, slack, mpfr_ptr(nullptr));

  mpfr_const_pi(arg_lo, MPFR_RNDD);
  mpfr_const_pi(arg_hi, MPFR_RNDU);
  mpfr_mul_si(arg_lo, arg_lo, 2 * num, MPFR_RNDD);
  mpfr_mul_si(arg_hi, arg_hi, 2 * num, MPFR_RNDU);
  mpfr_div_si(arg_lo, arg_lo, den, MPFR_RNDD);
  mpfr_div_si(arg_hi, arg_hi, den, MPFR_RNDU);

  // midpoint and radius
  mpfr_add(mid, arg_lo, arg_hi, MPFR_RNDN);
  mpfr_div_si(mid, mid, 2, MPFR_RNDN);
  mpfr_sub(rad, arg_hi, arg_lo, MPFR_RNDU);

  if (want_sin)
    mpfr_sin(val, mid, MPFR_RNDN);
  else
    mpfr_cos(val, mid, MPFR_RNDN);

  // slack: argument radius + 2 ulps for the rounded function value
  mpfr_set_ui_2exp(slack, 4, -static_cast<long>(work) + 2, MPFR_RNDU);
  mpfr_add(rad, rad, slack, MPFR_RNDU);

  RInterval r(prec);
  mpfr_sub(r.lo_raw(), val, rad, MPFR_RNDD);
  mpfr_add(r.hi_raw(), val, rad, MPFR_RNDU);
  mpfr_clears(arg_lo, arg_hi, mid, val, rad, slack, mpfr_ptr(nullptr));
  return r;
}

} // namespace

RInterval RInterval::cos2pi(long num, long den, mpfr_prec_t prec) {
  return trig2pi(num, den, prec, false);
}

RInterval RInterval::sin2pi(long num, long den, mpfr_prec_t prec) {
  return trig2pi(num, den, prec, true);
}

bool RInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int RInterval::certain_sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  assert(false && "certain_sign on an interval straddling zero");
  return 0;
}

double RInterval::width_d() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::string RInterval::str() const {
  char* a = nullptr;
  char* b = nullptr;
  mpfr_asprintf(&a, "%.20Rg", lo_);
  mpfr_asprintf(&b, "%.20Rg", hi_);
  std::string s = std::string("[") + a + ", " + b + "]";
  mpfr_free_str(a);
  mpfr_free_str(b);
  return s;
}

RInterval operator+(const RInterval& a, const RInterval& b) {
  RInterval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RInterval operator-(const RInterval& a, const RInterval& b) {
  RInterval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

RInterval operator-(const RInterval& a) {
  RInterval r(a.prec_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

RInterval operator*(const RInterval& a, const RInterval& b) {
  RInterval r(std::max(a.prec_, b.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // lo: min over endpoint products rounded down; hi: max rounded up.
  bool first = true;
  const mpfr_srcptr as[2] = {a.lo_, a.hi_};
  const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

CInterval CInterval::exact(long re, long im, mpfr_prec_t prec) {
  return CInterval(RInterval::exact(re, prec), RInterval::exact(im, prec));
}

CInterval CInterval::root_of_unity(long num, long den, mpfr_prec_t prec) {
  return CInterval(RInterval::cos2pi(num, den, prec), RInterval::sin2pi(num, den, prec));
}

std::string CInterval::str() const { return re_.str() + " + i*" + im_.str(); }

CInterval operator+(const CInterval& a, const CInterval& b) {
  return CInterval(a.re_ + b.re_, a.im_ + b.im_);
}

CInterval operator-(const CInterval& a, const CInterval& b) {
  return CInterval(a.re_ - b.re_, a.im_ - b.im_);
}

CInterval operator*(const CInterval& a, const CInterval& b) {
  return CInterval(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

CInterval operator*(const RInterval& a, const CInterval& b) {
  return CInterval(a * b.re(), a * b.im());
}

} // namespace chl
