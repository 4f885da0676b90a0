#include "chl/classify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

#include "chl/polynomial.hpp"

namespace chl {

std::string isometry_type_name(IsometryType t) {
  switch (t) {
    case IsometryType::elliptic_finite: return "elliptic_finite";
    case IsometryType::elliptic_infinite: return "elliptic_infinite";
    case IsometryType::parabolic: return "parabolic";
    case IsometryType::loxodromic: return "loxodromic";
  }
  return "?";
}

namespace {

// All roots of unity lying in Q(zeta_n): +/- zeta^j (the sign is redundant
// for even n; duplicates are filtered by canonical key).
std::vector<CycElem> roots_of_unity_in_field(const CycField::Ptr& f) {
  std::vector<CycElem> out;
  std::map<std::string, bool> seen;
  for (unsigned j = 0; j < f->conductor(); ++j) {
    for (int sign = 0; sign < 2; ++sign) {
      CycElem u = f->zeta_pow(j);
      if (sign) u = -u;
      if (seen.emplace(u.canonical_key(), true).second) out.push_back(u);
    }
  }
  return out;
}

unsigned order_of_unit(const CycElem& u) {
  CycElem acc = u;
  unsigned k = 1;
  const unsigned bound = 2 * u.field()->conductor() + 2;
  while (!acc.is_one()) {
    acc = acc * u;
    ++k;
    if (k > bound) fail(errc::inconclusive, "unit has unexpectedly large order");
  }
  return k;
}

// Candidate orders m for roots of unity of degree <= d over Q(zeta_n):
// phi(m) must divide d * phi(n); listing all m with phi(m) <= d*phi(n).
std::vector<unsigned long> candidate_orders(unsigned d, const CycField::Ptr& f) {
  unsigned long limit_phi = static_cast<unsigned long>(d) * f->degree();
  // phi(m) >= sqrt(m/2), so m <= 2*(limit_phi)^2 + 2
  unsigned long m_max = 2 * limit_phi * limit_phi + 2;
  std::vector<unsigned long> out;
  for (unsigned long m = 1; m <= m_max; ++m)
    if (euler_phi(static_cast<unsigned>(m)) <= limit_phi) out.push_back(m);
  return out;
}

struct DeflationResult {
  std::vector<std::pair<CycElem, unsigned>> field_roots; // root-of-unity roots with multiplicity
  Poly remainder;
};

DeflationResult deflate_unit_roots(const Poly& p) {
  DeflationResult res{{}, p};
  for (const CycElem& u : roots_of_unity_in_field(p.field)) {
    unsigned m = res.remainder.root_multiplicity(u);
    if (m > 0) {
      res.field_roots.emplace_back(u, m);
      res.remainder = res.remainder.deflate(u, m);
    }
  }
  return res;
}

// Durand-Kerner on the numeric embedding; used only to steer the exact
// certificate, never as a verdict by itself.
std::vector<std::complex<double>> numeric_roots(const Poly& g) {
  const unsigned d = g.degree();
  std::vector<std::complex<double>> coeff(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    CInterval b = g.c[i].embed(96);
    coeff[i] = {b.re().mid_d(), b.im().mid_d()};
  }
  for (unsigned i = 0; i <= d; ++i) coeff[i] /= coeff[d];
  std::vector<std::complex<double>> roots(d);
  for (unsigned i = 0; i < d; ++i) roots[i] = std::pow(std::complex<double>(0.4, 0.9), i + 1);
  for (int iter = 0; iter < 400; ++iter) {
    double moved = 0;
    for (unsigned i = 0; i < d; ++i) {
      std::complex<double> val = coeff[d];
      for (unsigned k = d; k-- > 0;) val = val * roots[i] + coeff[k];
      std::complex<double> den = 1;
      for (unsigned j = 0; j < d; ++j)
        if (j != i) den *= roots[i] - roots[j];
      if (std::abs(den) < 1e-300) continue;
      std::complex<double> delta = val / den;
      roots[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return roots;
}

// Certified: does g have a root of modulus > 1? Takes the numeric root of
// largest modulus x0 and uses the inclusion bound min_i |x0 - r_i| <=
// |g(x0)/lc|^(1/d); everything on the bound side is interval arithmetic.
bool certified_root_outside_unit_circle(const Poly& g) {
  const unsigned d = g.degree();
  if (d == 0) return false;
  auto roots = numeric_roots(g);
  std::complex<double> x0{0, 0};
  for (auto& r : roots)
    if (std::abs(r) > std::abs(x0)) x0 = r;
  if (std::abs(x0) < 1.0 + 1e-9) return false; // no hope of certifying
  // rationalize x0 exactly (dyadic) and evaluate g there with intervals
  const long scale = 1L << 40;
  Rational re(static_cast<long>(std::ldexp(x0.real(), 40)), scale);
  Rational im(static_cast<long>(std::ldexp(x0.imag(), 40)), scale);
  re.canonicalize();
  im.canonicalize();
  mpfr_prec_t prec = 192;
  CInterval x(RInterval::from_rational(re, prec), RInterval::from_rational(im, prec));
  CInterval val = CInterval::exact(0, 0, prec);
  for (size_t i = g.c.size(); i-- > 0;) val = val * x + g.c[i].embed(prec);
  CInterval lead = g.c.back().embed(prec);
  // |g(x0)| / |lc| upper bound in doubles (conservative via interval hulls)
  double num_hi = std::hypot(std::max(std::abs(val.re().lo_d()), std::abs(val.re().hi_d())),
                             std::max(std::abs(val.im().lo_d()), std::abs(val.im().hi_d())));
  double den_lo = std::hypot(std::min(std::abs(lead.re().lo_d()), std::abs(lead.re().hi_d())),
                             std::min(std::abs(lead.im().lo_d()), std::abs(lead.im().hi_d())));
  if (lead.re().contains_zero() && lead.im().contains_zero()) return false;
  if (den_lo == 0.0) {
    // one of the components straddles zero; fall back to the hull norm
    den_lo = 1e-30;
  }
  double radius = std::pow(num_hi / den_lo, 1.0 / d) * (1.0 + 1e-9);
  double x0_abs_lo = std::hypot(re.get_d(), im.get_d()) - 1e-12;
  return x0_abs_lo - radius > 1.0;
}

struct QuadraticStatus {
  bool self_inversive = false;
  int circle = 0; // +1 both roots on circle (distinct), -1 off-circle pair, 0 double root
  CycElem double_root;
};

QuadraticStatus analyze_quadratic(const Poly& g) {
  QuadraticStatus st;
  const auto& f = g.field;
  CycElem b = g.c[1] / g.c[2];
  CycElem c = g.c[0] / g.c[2];
  // conj-reciprocal proportional to g iff |c| = 1 and conj(b) = conj(c) b
  st.self_inversive = ((c * c.conj()) == f->one()) && (b.conj() == c.conj() * b);
  if (!st.self_inversive) return st;
  CycElem disc = b * b.conj() - f->from_rational(Rational(4));
  int s = disc.real_sign();
  if (s > 0)
    st.circle = -1; // |b| > 2: pair lambda, 1/conj(lambda) off the circle
  else if (s < 0)
    st.circle = 1; // |b| < 2: two distinct unit-modulus roots
  else {
    st.circle = 0;
    st.double_root = -(b / f->from_rational(Rational(2)));
  }
  return st;
}

} // namespace

ElementClass classify_element(const MatC& a, const HermForm& h) {
  const auto& f = a.field();
  if (!a.is_square() || a.rows() != h.dim()) fail(errc::dimension_mismatch, "classify_element");
  if (a.star() * h.mat() * a != h.mat())
    fail(errc::form_mismatch, "matrix does not preserve the form");
  {
    Signature s = h.signature();
    if (s.neg != 1 || s.zero != 0)
      fail(errc::form_mismatch, "classification requires a signature (n,1) form");
  }
  const unsigned n = a.rows();

  Poly p = Poly::from_coeffs(char_poly(a));
  DeflationResult defl = deflate_unit_roots(p);
  Poly& g = defl.remainder;

  bool remainder_is_unit_roots = false;
  unsigned long remainder_order = 1;
  bool remainder_circle_non_unit = false; // proven on circle but not roots of unity
  bool remainder_repeated = false;
  bool unresolved = false;

  if (g.degree() >= 1) {
    // repeated non-field roots?
    Poly sqf_gcd = poly_gcd(g, g.derivative());
    remainder_repeated = sqf_gcd.degree() >= 1;
    Poly core = g; // squarefree part candidate for divisibility tests
    if (remainder_repeated) {
      // divide out the gcd to get the squarefree part
      // (simple repeated-division; degrees are tiny)
      // core = g / sqf_gcd
      Poly q{g.field, std::vector<CycElem>(g.degree() - sqf_gcd.degree() + 1, f->zero())};
      Poly r = g;
      CycElem lead_inv = sqf_gcd.c.back().inverse();
      while (r.c.size() >= sqf_gcd.c.size() && !(r.degree() == 0 && r.c[0].is_zero())) {
        CycElem qc = r.c.back() * lead_inv;
        size_t off = r.c.size() - sqf_gcd.c.size();
        q.c[off] = qc;
        for (size_t j = 0; j < sqf_gcd.c.size(); ++j) r.c[off + j] -= qc * sqf_gcd.c[j];
        r.trim();
        if (r.c.size() == 1 && r.c[0].is_zero()) break;
      }
      q.trim();
      core = q;
    }
    for (unsigned long m : candidate_orders(g.degree(), f)) {
      if (core.divides_x_pow_minus_1(m)) {
        remainder_is_unit_roots = true;
        remainder_order = m;
        break;
      }
    }
    if (!remainder_is_unit_roots) {
      if (g.degree() == 2) {
        QuadraticStatus st = analyze_quadratic(g);
        if (st.self_inversive && st.circle < 0)
          return {IsometryType::loxodromic, 0, "off-circle eigenvalue pair (exact)"};
        if (st.self_inversive && st.circle > 0)
          remainder_circle_non_unit = true;
        else if (st.self_inversive && st.circle == 0) {
          // double root is a field element after all
          defl.field_roots.emplace_back(st.double_root, 2);
          g = Poly{f, {f->one()}};
        } else
          unresolved = true;
      } else {
        if (certified_root_outside_unit_circle(g))
          return {IsometryType::loxodromic, 0, "certified eigenvalue modulus > 1"};
        unresolved = true;
      }
    }
  }

  // multiplicity gaps at exactly-known eigenvalues
  bool gap = false;
  for (const auto& [u, mult] : defl.field_roots) {
    if (mult < 2) continue;
    MatC shifted = a;
    for (unsigned i = 0; i < n; ++i) shifted.at(i, i) -= u;
    unsigned geom = n - shifted.rank();
    if (geom < mult) gap = true;
  }

  if (!unresolved && !remainder_repeated) {
    // all eigenvalues certified on the unit circle
    if (gap) return {IsometryType::parabolic, 0, "algebraic multiplicity exceeds geometric"};
    if (remainder_circle_non_unit)
      return {IsometryType::elliptic_infinite, 0, "unit-modulus eigenvalue is not a root of unity"};
    // all eigenvalues are roots of unity and the matrix is diagonalizable
    unsigned long k = remainder_is_unit_roots ? remainder_order : 1;
    bool nonunit_field_root = false;
    for (const auto& [u, mult] : defl.field_roots) {
      if ((u * u.conj()) != f->one()) {
        nonunit_field_root = true;
        continue;
      }
      k = std::lcm(k, static_cast<unsigned long>(order_of_unit(u)));
    }
    if (nonunit_field_root)
      return {IsometryType::loxodromic, 0, "field eigenvalue off the unit circle (exact)"};
    // minimal order: smallest divisor d of k with a^d = 1
    std::vector<unsigned long> divs;
    for (unsigned long d2 = 1; d2 * d2 <= k; ++d2)
      if (k % d2 == 0) {
        divs.push_back(d2);
        if (d2 != k / d2) divs.push_back(k / d2);
      }
    std::sort(divs.begin(), divs.end());
    for (unsigned long d2 : divs)
      if (a.pow(static_cast<long>(d2)).is_identity())
        return {IsometryType::elliptic_finite, static_cast<unsigned>(d2), ""};
    fail(errc::inconclusive, "diagonalizable root-of-unity spectrum but no power is the identity");
  }

  if (unresolved && gap)
    fail(errc::inconclusive,
         "multiplicity gap with eigenvalues outside the working field; cannot certify");

  // Galois fallback: if some conjugate matrix is certifiably loxodromic, the
  // eigenvalues are not roots of unity, so finite order is excluded; with a
  // fixed vector of negative square norm the element is elliptic.
  if (unresolved) {
    bool conjugate_loxodromic = false;
    for (unsigned k : coprime_residues(f->conductor())) {
      if (k == 1) continue;
      MatC ak = a.galois(static_cast<long>(k));
      Poly pk = Poly::from_coeffs(char_poly(ak));
      DeflationResult dk = deflate_unit_roots(pk);
      if (dk.remainder.degree() == 2) {
        QuadraticStatus st = analyze_quadratic(dk.remainder);
        if (st.self_inversive && st.circle < 0) {
          conjugate_loxodromic = true;
          break;
        }
      }
      if (dk.remainder.degree() >= 3 && certified_root_outside_unit_circle(dk.remainder)) {
        conjugate_loxodromic = true;
        break;
      }
    }
    if (conjugate_loxodromic) {
      // elliptic certificate: a fixed vector (in the field) of negative norm
      for (const auto& [u, mult] : defl.field_roots) {
        MatC shifted = a;
        for (unsigned i = 0; i < n; ++i) shifted.at(i, i) -= u;
        for (const auto& v : shifted.kernel()) {
          CycElem nv = h.norm(v);
          if (!nv.is_zero() && nv.real_sign() < 0)
            return {IsometryType::elliptic_infinite, 0,
                    "negative fixed vector; a Galois conjugate is loxodromic"};
        }
      }
      fail(errc::inconclusive, "Galois conjugate is loxodromic but ellipticity is uncertified");
    }
  }

  fail(errc::inconclusive, "spectrum could not be certified with the available tests");
}

} // namespace chl
