#include "chl/cyclotomic.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chl {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<unsigned> coprime_residues(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) out.push_back(k % n == 0 ? n : k);
  if (n == 1) out = {1};
  return out;
}

namespace {

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

// Exact division of integer polynomials, quotient known to be integral.
std::vector<Int> poly_div_exact(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> rem = a;
  std::vector<Int> q(a.size() - b.size() + 1, Int(0));
  assert(b.back() == 1); // divisors here are monic
  for (size_t i = q.size(); i-- > 0;) {
    Int c = rem[i + b.size() - 1];
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
  }
  for (const auto& r : rem) assert(r == 0);
  return q;
}

std::vector<Int> cyclotomic_poly(unsigned n, std::map<unsigned, std::vector<Int>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d : divisors(n)) {
    if (d == n) continue;
    num = poly_div_exact(num, cyclotomic_poly(d, cache));
  }
  cache[n] = num;
  return num;
}

std::map<unsigned, std::vector<Int>>& phi_cache() {
  static std::map<unsigned, std::vector<Int>> c;
  return c;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

} // namespace

CycField::CycField(unsigned n, unsigned k) : n_(n), dim_(euler_phi(n)), k_(k) {
  phi_ = cyclotomic_poly(n, phi_cache());
  assert(phi_.size() == dim_ + 1);
  // zeta^m in the power basis: repeated reduction x^m <- x^(m-1) * x
  pow_table_.assign(n_, std::vector<Rational>(dim_, Rational(0)));
  pow_table_[0][0] = 1;
  for (unsigned m = 1; m < n_; ++m) {
    const auto& prev = pow_table_[m - 1];
    std::vector<Rational> cur(dim_, Rational(0));
    // multiply by x
    Rational top = prev[dim_ - 1];
    for (unsigned j = dim_ - 1; j >= 1; --j) cur[j] = prev[j - 1];
    cur[0] = 0;
    if (top != 0) {
      // x^dim = -(phi_0 + phi_1 x + ... + phi_{dim-1} x^(dim-1))
      for (unsigned j = 0; j < dim_; ++j) cur[j] -= top * Rational(phi_[j]);
    }
    pow_table_[m] = std::move(cur);
  }
}

CycField::Ptr CycField::get(unsigned n, unsigned embedding_k) {
  if (n < 1) fail(errc::bad_catalog, "conductor must be >= 1");
  embedding_k %= n;
  if (n == 1) embedding_k = 1;
  if (embedding_k == 0 || std::gcd(embedding_k, n) != 1)
    fail(errc::invalid_automorphism, "embedding exponent must be coprime to the conductor");
  std::lock_guard<std::mutex> lock(registry_mutex());
  static std::map<std::pair<unsigned, unsigned>, Ptr> registry;
  auto key = std::make_pair(n, embedding_k);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  Ptr f(new CycField(n, embedding_k));
  registry[key] = f;
  return f;
}

CycElem CycField::zero() const {
  return CycElem(shared_from_this(), std::vector<Rational>(dim_, Rational(0)));
}

CycElem CycField::one() const { return from_rational(Rational(1)); }

CycElem CycField::from_rational(const Rational& q) const {
  std::vector<Rational> c(dim_, Rational(0));
  c[0] = q;
  return CycElem(shared_from_this(), std::move(c));
}

CycElem CycField::zeta_pow(long e) const {
  long m = e % static_cast<long>(n_);
  if (m < 0) m += n_;
  return CycElem(shared_from_this(), pow_table_[static_cast<size_t>(m)]);
}

CycElem CycField::subfield_root(unsigned m, long e) const {
  if (m == 0 || n_ % m != 0)
    fail(errc::incompatible_fields, "zeta_m does not lie in this field");
  return zeta_pow(e * static_cast<long>(n_ / m));
}

CycElem CycField::from_coeffs(std::vector<Rational> c) const {
  if (c.size() != dim_) fail(errc::incompatible_fields, "coefficient count != degree");
  for (auto& q : c) q.canonicalize();
  return CycElem(shared_from_this(), std::move(c));
}

CycElem::CycElem(CycField::Ptr f, std::vector<Rational> c) : f_(std::move(f)), c_(std::move(c)) {
  assert(c_.size() == f_->degree());
}

bool CycElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool CycElem::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

bool CycElem::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

Rational CycElem::rational_value() const {
  assert(is_rational());
  return c_[0];
}

bool CycElem::is_real() const { return conj() == *this; }

CycElem CycElem::operator-() const {
  std::vector<Rational> c(c_);
  for (auto& q : c) q = -q;
  return CycElem(f_, std::move(c));
}

namespace {

void require_same_field(const CycElem& a, const CycElem& b) {
  if (!a.field()->same_field(*b.field()))
    fail(errc::incompatible_fields,
         "operands live in different fields; coerce explicitly with lift_to");
}

} // namespace

CycElem operator+(const CycElem& a, const CycElem& b) {
  require_same_field(a, b);
  std::vector<Rational> c(a.coeffs());
  for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
  return CycElem(a.field(), std::move(c));
}

CycElem operator-(const CycElem& a, const CycElem& b) {
  require_same_field(a, b);
  std::vector<Rational> c(a.coeffs());
  for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs()[i];
  return CycElem(a.field(), std::move(c));
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  require_same_field(a, b);
  const unsigned d = a.field()->degree();
  const unsigned n = a.field()->conductor();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (unsigned i = 0; i < d; ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (b.coeffs()[j] == 0) continue;
      prod[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  std::vector<Rational> c(prod.begin(), prod.begin() + d);
  // fold the overflow degrees back with the power table (deg < 2d-1 <= 2n)
  for (unsigned m = d; m < 2 * d - 1; ++m) {
    if (prod[m] == 0) continue;
    // m may exceed n; zeta^m = zeta^(m mod n)
    const CycElem zm = a.field()->zeta_pow(static_cast<long>(m % n));
    for (unsigned j = 0; j < d; ++j) c[j] += prod[m] * zm.coeffs()[j];
  }
  return CycElem(a.field(), std::move(c));
}

CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }

bool operator==(const CycElem& a, const CycElem& b) {
  if (!a.field()->same_field(*b.field())) return false;
  return a.coeffs() == b.coeffs();
}

namespace {

using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// a mod b (b nonzero), plain long division over Q
Poly poly_mod(Poly a, const Poly& b) {
  poly_trim(a);
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
    poly_trim(a);
  }
  return a;
}

} // namespace

CycElem CycElem::inverse() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  // extended Euclid for gcd(elem, Phi_n) = 1 in Q[x]
  const auto& phi_int = f_->modulus();
  Poly r0(phi_int.size());
  for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
  Poly r1(c_);
  poly_trim(r1);
  Poly s0 = {};       // coefficient of elem for r0
  Poly s1 = {Rational(1)};
  while (true) {
    poly_trim(r1);
    assert(!r1.empty());
    if (r1.size() == 1) break; // unit remainder: Phi_n is irreducible over Q
    // quotient of r0 by r1
    Poly q;
    Poly rem = r0;
    poly_trim(rem);
    q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rational(0));
    while (rem.size() >= r1.size()) {
      Rational c = rem.back() / r1.back();
      size_t off = rem.size() - r1.size();
      q[off] += c;
      for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= c * r1[j];
      poly_trim(rem);
    }
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
    Poly qs1(q.size() + s1.size(), Rational(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
    poly_trim(qs1);
    Poly s2 = s0;
    s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
    for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // elem * s1 = r1 (a nonzero constant) mod Phi, so inverse = s1 / r1[0]
  Rational unit = r1[0];
  Poly inv = poly_mod(std::move(s1), [&] {
    Poly p(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) p[i] = Rational(phi_int[i]);
    return p;
  }());
  std::vector<Rational> c(f_->degree(), Rational(0));
  for (size_t i = 0; i < inv.size(); ++i) c[i] = inv[i] / unit;
  return CycElem(f_, std::move(c));
}

CycElem CycElem::pow(long e) const {
  if (e == 0) return f_->one();
  if (e < 0) return inverse().pow(-e);
  CycElem base = *this;
  CycElem acc = f_->one();
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) acc = acc * base;
    base = base * base;
    u >>= 1;
  }
  return acc;
}

CycElem CycElem::conj() const {
  return galois(static_cast<long>(f_->conductor()) - 1 + (f_->conductor() == 1 ? 1 : 0));
}

CycElem CycElem::galois(long k) const {
  const long n = static_cast<long>(f_->conductor());
  long kk = k % n;
  if (kk < 0) kk += n;
  if (n == 1) kk = 1;
  if (kk == 0 || std::gcd(kk, n) != 1)
    fail(errc::invalid_automorphism, "galois exponent must be coprime to the conductor");
  std::vector<Rational> c(f_->degree(), Rational(0));
  for (unsigned j = 0; j < f_->degree(); ++j) {
    if (c_[j] == 0) continue;
    const CycElem zm = f_->zeta_pow((static_cast<long>(j) * kk) % n);
    for (unsigned t = 0; t < f_->degree(); ++t) c[t] += c_[j] * zm.coeffs()[t];
  }
  return CycElem(f_, std::move(c));
}

CycElem CycElem::lift_to(const CycField::Ptr& target) const {
  const unsigned m = f_->conductor();
  const unsigned n = target->conductor();
  if (n % m != 0)
    fail(errc::incompatible_fields, "target conductor is not a multiple of the source");
  const long step = static_cast<long>(n / m);
  CycElem out = target->zero();
  for (unsigned j = 0; j < f_->degree(); ++j) {
    if (c_[j] == 0) continue;
    out += target->from_rational(c_[j]) * target->zeta_pow(step * static_cast<long>(j));
  }
  return out;
}

CInterval CycElem::embed(mpfr_prec_t precision_bits) const {
  const long n = static_cast<long>(f_->conductor());
  const long k = static_cast<long>(f_->embedding_k());
  CInterval acc = CInterval::exact(0, 0, precision_bits);
  for (unsigned j = 0; j < f_->degree(); ++j) {
    if (c_[j] == 0) continue;
    CInterval term = CInterval::root_of_unity((static_cast<long>(j) * k) % n, n, precision_bits);
    acc = acc + RInterval::from_rational(c_[j], precision_bits) * term;
  }
  return acc;
}

int CycElem::real_sign() const {
  if (is_zero()) return 0;
  if (!is_real()) fail(errc::not_real, "real_sign of a non-real element");
  // nonzero real algebraic number: interval evaluation terminates
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    CInterval box = embed(prec);
    if (!box.re().contains_zero()) return box.re().certain_sign();
    assert(prec < (mpfr_prec_t(1) << 24) && "sign certification runaway");
  }
}

std::string CycElem::canonical_key() const {
  std::string s;
  for (const auto& q : c_) {
    s += rat_to_string(q);
    s += ',';
  }
  return s;
}

std::string CycElem::str() const {
  std::string s = "Q(zeta_" + std::to_string(f_->conductor()) + "): [";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(c_[i]);
  }
  s += "]";
  return s;
}

std::string CycElem::pretty() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational q = c_[i];
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    Rational a = abs(q);
    if (i == 0) {
      os << rat_to_string(a);
    } else {
      if (a != 1) os << rat_to_string(a) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

GaloisAut::GaloisAut(CycField::Ptr f, long kk) : field(std::move(f)) {
  const long n = static_cast<long>(field->conductor());
  k = kk % n;
  if (k < 0) k += n;
  if (n == 1) k = 1;
  if (k == 0 || std::gcd(k, n) != 1)
    fail(errc::invalid_automorphism, "galois exponent must be coprime to the conductor");
}

GaloisAut GaloisAut::compose(const GaloisAut& inner) const {
  return GaloisAut(field, (k * inner.k) % static_cast<long>(field->conductor()));
}

CycElem sqrt_positive_integer(unsigned m) {
  if (m == 0) fail(errc::bad_catalog, "sqrt of zero is trivial but unsupported here");
  unsigned square_free = 1, square_part = 1;
  for (unsigned p = 2; p * p <= m; ++p)
    while (m % (p * p) == 0) {
      m /= p * p;
      square_part *= p;
    }
  square_free = m;

  // conductor: 8 for the factor sqrt(2), p for p = 1 mod 4, 4p otherwise
  unsigned conductor = 1;
  for (unsigned p = 2, rest = square_free; rest > 1; ++p) {
    if (rest % p) continue;
    rest /= p;
    if (p == 2)
      conductor = std::lcm(conductor, 8u);
    else if (p % 4 == 1)
      conductor = std::lcm(conductor, p);
    else
      conductor = std::lcm(conductor, 4 * p);
  }
  auto f = CycField::get(conductor);
  CycElem acc = f->from_rational(Rational(static_cast<long>(square_part)));
  for (unsigned p = 2, rest = square_free; rest > 1; ++p) {
    if (rest % p) continue;
    rest /= p;
    if (p == 2) {
      acc = acc * (f->subfield_root(8, 1) + f->subfield_root(8, 7));
      continue;
    }
    // quadratic Gauss sum over the p-th roots: sqrt(p) or i*sqrt(p)
    CycElem gauss = f->zero();
    for (unsigned j = 1; j < p; ++j) {
      // Legendre symbol via Euler's criterion
      unsigned sym = 1, base = j % p, e = (p - 1) / 2;
      unsigned long acc_pow = 1, b = base;
      while (e) {
        if (e & 1) acc_pow = (acc_pow * b) % p;
        b = (b * b) % p;
        e >>= 1;
      }
      sym = static_cast<unsigned>(acc_pow);
      CycElem term = f->subfield_root(p, static_cast<long>(j));
      gauss = (sym == 1) ? gauss + term : gauss - term;
    }
    if (p % 4 == 1)
      acc = acc * gauss;
    else
      acc = acc * (gauss / f->subfield_root(4, 1)); // Gauss sum is i*sqrt(p)
  }
  assert((acc * acc).is_rational());
  assert(acc.real_sign() > 0);
  return acc;
}

CycField::Ptr common_field(const CycField::Ptr& a, const CycField::Ptr& b) {
  unsigned l = std::lcm(a->conductor(), b->conductor());
  if (l == a->conductor()) return a;
  if (l == b->conductor() && a->embedding_k() == 1) return b;
  return CycField::get(l, 1);
}

} // namespace chl
