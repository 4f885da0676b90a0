#include "chl/polynomial.hpp"

#include <cassert>

namespace chl {

Poly Poly::from_coeffs(std::vector<CycElem> coeffs) {
  assert(!coeffs.empty());
  Poly p{coeffs[0].field(), std::move(coeffs)};
  p.trim();
  return p;
}

void Poly::trim() {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
}

CycElem Poly::eval(const CycElem& x) const {
  CycElem acc = field->zero();
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

unsigned Poly::root_multiplicity(const CycElem& x0) const {
  unsigned mult = 0;
  Poly p = *this;
  while (p.degree() >= 1 && p.eval(x0).is_zero()) {
    p = p.deflate(x0, 1);
    ++mult;
  }
  return mult;
}

Poly Poly::deflate(const CycElem& x0, unsigned mult) const {
  Poly p = *this;
  for (unsigned k = 0; k < mult; ++k) {
    assert(p.eval(x0).is_zero());
    // synthetic division by (x - x0)
    std::vector<CycElem> q(p.c.size() - 1, field->zero());
    CycElem carry = field->zero();
    for (size_t i = p.c.size(); i-- > 1;) {
      carry = p.c[i] + carry * x0;
      q[i - 1] = carry;
    }
    p.c = std::move(q);
    p.trim();
  }
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<CycElem> c(a.c.size() + b.c.size() - 1, a.field->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      c[i + j] += a.c[i] * b.c[j];
    }
  }
  return Poly::from_coeffs(std::move(c));
}

Poly Poly::x_pow_mod(unsigned long e) const {
  assert(degree() >= 1);
  const CycElem lead_inv = c.back().inverse();
  auto reduce = [&](std::vector<CycElem>& v) {
    while (v.size() > degree()) {
      CycElem top = v.back() * lead_inv;
      size_t off = v.size() - c.size();
      if (!top.is_zero())
        for (size_t j = 0; j < c.size(); ++j) v[off + j] -= top * c[j];
      v.pop_back();
      while (v.size() > degree() && v.back().is_zero()) v.pop_back();
    }
  };
  // binary exponentiation of x modulo *this
  std::vector<CycElem> acc = {field->one()};
  std::vector<CycElem> base = {field->zero(), field->one()};
  if (degree() == 1) {
    // x = -c0/c1 mod (c0 + c1 x)
    base = {-(c[0] / c[1])};
  }
  while (e) {
    if (e & 1) {
      std::vector<CycElem> prod(acc.size() + base.size() - 1, field->zero());
      for (size_t i = 0; i < acc.size(); ++i)
        for (size_t j = 0; j < base.size(); ++j) prod[i + j] += acc[i] * base[j];
      reduce(prod);
      acc = std::move(prod);
    }
    e >>= 1;
    if (!e) break;
    std::vector<CycElem> sq(2 * base.size() - 1, field->zero());
    for (size_t i = 0; i < base.size(); ++i)
      for (size_t j = 0; j < base.size(); ++j) sq[i + j] += base[i] * base[j];
    reduce(sq);
    base = std::move(sq);
  }
  Poly r{field, std::move(acc)};
  r.trim();
  return r;
}

bool Poly::divides_x_pow_minus_1(unsigned long e) const {
  Poly r = x_pow_mod(e);
  return r.degree() == 0 && r.c[0].is_one();
}

Poly Poly::derivative() const {
  if (degree() == 0) return Poly{field, {field->zero()}};
  std::vector<CycElem> d(c.size() - 1, field->zero());
  for (size_t i = 1; i < c.size(); ++i)
    d[i - 1] = c[i] * field->from_rational(Rational(static_cast<long>(i)));
  Poly p{field, std::move(d)};
  p.trim();
  return p;
}

Poly Poly::monic() const {
  Poly p = *this;
  CycElem inv = p.c.back().inverse();
  for (auto& x : p.c) x = x * inv;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  a.trim();
  b.trim();
  while (!(b.degree() == 0 && b.c[0].is_zero())) {
    // a mod b
    Poly r = a;
    CycElem lead_inv = b.c.back().inverse();
    while (r.c.size() >= b.c.size() && !(r.degree() == 0 && r.c[0].is_zero())) {
      CycElem q = r.c.back() * lead_inv;
      size_t off = r.c.size() - b.c.size();
      for (size_t j = 0; j < b.c.size(); ++j) r.c[off + j] -= q * b.c[j];
      r.trim();
      if (r.c.size() < b.c.size()) break;
      if (r.c.size() == 1 && r.c[0].is_zero()) break;
    }
    a = std::move(b);
    b = std::move(r);
  }
  if (a.degree() == 0) return Poly{a.field, {a.field->one()}};
  return a.monic();
}

} // namespace chl
