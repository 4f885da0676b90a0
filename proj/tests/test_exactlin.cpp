#include <random>

#include "chl/hermitian.hpp"
#include "chl/matrix.hpp"
#include "chl/numeric_oracle.hpp"
#include "chl/polynomial.hpp"
#include "doctest.h"

using namespace chl;

namespace {

CycElem relem(const CycField::Ptr& f, std::mt19937& rng, int span = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::vector<Rational> c(f->degree());
  for (auto& q : c) q = Rational(num(rng));
  return f->from_coeffs(std::move(c));
}

MatC rmat(const CycField::Ptr& f, unsigned n, std::mt19937& rng, int span = 2) {
  MatC m(f, n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) m.at(i, j) = relem(f, rng, span);
  return m;
}

MatC random_invertible(const CycField::Ptr& f, unsigned n, std::mt19937& rng) {
  for (;;) {
    MatC m = rmat(f, n, rng, 1);
    if (!m.det().is_zero()) return m;
  }
}

} // namespace

TEST_CASE("matrix inverse and multiplication") {
  auto f = CycField::get(12);
  std::mt19937 rng(3);
  for (int t = 0; t < 15; ++t) {
    MatC a = random_invertible(f, 4, rng);
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
  }
  MatC sing(f, 2, 2);
  sing.at(0, 0) = f->one();
  CHECK_THROWS_AS((void)sing.inverse(), error);
}

TEST_CASE("determinant against cofactor expansion on 3x3") {
  auto f = CycField::get(7);
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    MatC a = rmat(f, 3, rng);
    CycElem cof =
        a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
        a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
        a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
    CHECK(a.det() == cof);
  }
}

TEST_CASE("det multiplicativity and star") {
  auto f = CycField::get(8);
  std::mt19937 rng(17);
  MatC a = rmat(f, 4, rng, 1), b = rmat(f, 4, rng, 1);
  CHECK((a * b).det() == a.det() * b.det());
  CHECK(a.star().star() == a);
  CHECK((a * b).star() == b.star() * a.star());
}

TEST_CASE("rank basics") {
  auto f = CycField::get(4);
  MatC z(f, 3, 3);
  CHECK(z.rank() == 0);
  CHECK(MatC::identity(f, 5).rank() == 5);
  MatC m(f, 3, 3);
  for (unsigned j = 0; j < 3; ++j) {
    m.at(0, j) = f->from_rational(Rational(static_cast<long>(j) + 1));
    m.at(1, j) = f->from_rational(Rational(2 * (static_cast<long>(j) + 1)));
    m.at(2, j) = f->zeta_pow(1) * f->from_rational(Rational(static_cast<long>(j) + 1));
  }
  CHECK(m.rank() == 1);
}

TEST_CASE("char_poly of identity and Cayley-Hamilton") {
  auto f = CycField::get(12);
  MatC id = MatC::identity(f, 4);
  auto cp = char_poly(id); // (x-1)^4 = 1 - 4x + 6x^2 - 4x^3 + x^4
  CHECK(cp[0] == f->one());
  CHECK(cp[1] == f->from_rational(Rational(-4)));
  CHECK(cp[2] == f->from_rational(Rational(6)));
  CHECK(cp[3] == f->from_rational(Rational(-4)));
  CHECK(cp[4] == f->one());

  std::mt19937 rng(29);
  for (int t = 0; t < 10; ++t) {
    MatC a = rmat(f, 4, rng, 1);
    CHECK(poly_eval(char_poly(a), a).is_zero());
  }
}

TEST_CASE("char_poly det and trace coefficients") {
  auto f = CycField::get(5);
  std::mt19937 rng(31);
  MatC a = rmat(f, 4, rng, 2);
  auto cp = char_poly(a);
  // det = (-1)^n c0, tr = -c_{n-1}
  CHECK(a.det() == cp[0]);
  CHECK(a.tr() == -cp[3]);
}

TEST_CASE("gram pairing conjugate symmetry") {
  auto f = CycField::get(12);
  MatC h(f, 3, 3);
  h.at(0, 0) = f->from_rational(Rational(2));
  h.at(1, 1) = f->from_rational(Rational(-1));
  h.at(2, 2) = f->from_rational(Rational(1));
  h.at(0, 1) = f->zeta_pow(1);
  h.at(1, 0) = f->zeta_pow(1).conj();
  HermForm form(h);
  std::mt19937 rng(37);
  for (int t = 0; t < 25; ++t) {
    std::vector<CycElem> x, y;
    for (int i = 0; i < 3; ++i) {
      x.push_back(relem(f, rng));
      y.push_back(relem(f, rng));
    }
    CHECK(form.pairing(x, y) == form.pairing(y, x).conj());
  }
}

TEST_CASE("non-Hermitian matrix is rejected") {
  auto f = CycField::get(4);
  MatC h(f, 2, 2);
  h.at(0, 1) = f->zeta_pow(1);
  CHECK_THROWS_AS(HermForm{h}, error);
}

TEST_CASE("signature of diagonal and identity forms") {
  auto f = CycField::get(12);
  CHECK(HermForm(MatC::identity(f, 5)).signature() == Signature{5, 0, 0});
  MatC d(f, 4, 4);
  d.at(0, 0) = f->from_rational(Rational(3));
  d.at(1, 1) = f->from_rational(Rational(-2));
  d.at(2, 2) = f->zero();
  d.at(3, 3) = f->zeta_pow(1) - f->zeta_pow(5); // sqrt3 > 0
  CHECK(HermForm(d).signature() == Signature{2, 1, 1});
}

TEST_CASE("signature handles zero-diagonal hyperbolic blocks") {
  auto f = CycField::get(4);
  // [[0, a], [conj(a), 0]] has signature (1,1)
  MatC h(f, 2, 2);
  h.at(0, 1) = f->zeta_pow(1) + f->one();
  h.at(1, 0) = h.at(0, 1).conj();
  CHECK(HermForm(h).signature() == Signature{1, 1, 0});
  // padding with zero rows adds zeros
  MatC h4(f, 4, 4);
  h4.at(0, 1) = f->zeta_pow(1);
  h4.at(1, 0) = f->zeta_pow(1).conj();
  CHECK(HermForm(h4).signature() == Signature{1, 1, 2});
}

TEST_CASE("Sylvester invariance on random congruences") {
  auto f = CycField::get(12);
  std::mt19937 rng(41);
  MatC h(f, 4, 4);
  h.at(0, 0) = f->from_rational(Rational(1));
  h.at(1, 1) = f->from_rational(Rational(1));
  h.at(2, 2) = f->from_rational(Rational(1));
  h.at(3, 3) = f->from_rational(Rational(-1));
  h.at(0, 1) = f->zeta_pow(1) * f->from_rational(Rational(1, 2));
  h.at(1, 0) = h.at(0, 1).conj();
  HermForm form(h);
  Signature s0 = form.signature();
  for (int t = 0; t < 10; ++t) {
    MatC p = random_invertible(f, 4, rng);
    HermForm congruent(p.star() * h * p);
    CHECK(congruent.signature() == s0);
  }
}

TEST_CASE("degenerate iff zero determinant") {
  auto f = CycField::get(3);
  std::mt19937 rng(43);
  for (int t = 0; t < 10; ++t) {
    MatC a = rmat(f, 3, rng, 1);
    MatC h = a.star() * a; // PSD, degenerate iff a singular
    Signature s = HermForm(h).signature();
    CHECK((s.zero > 0) == h.det().is_zero());
    CHECK(s.neg == 0);
  }
}

TEST_CASE("numeric oracle agrees with exact signature") {
  auto f = CycField::get(12);
  std::mt19937 rng(47);
  for (int t = 0; t < 8; ++t) {
    MatC a = rmat(f, 4, rng, 1);
    MatC h = a + a.star(); // Hermitian
    HermForm form(h);
    CHECK(numeric_signature(h, 128) == form.signature());
  }
  // degenerate case
  MatC d(f, 3, 3);
  d.at(0, 0) = f->one();
  d.at(1, 1) = -f->one();
  CHECK(numeric_signature(d, 128) == Signature{1, 1, 1});
}

TEST_CASE("polynomial deflation and root multiplicity") {
  auto f = CycField::get(4);
  CycElem one = f->one(), i = f->zeta_pow(1);
  // (x - 1)^2 (x - i)
  Poly p = Poly::from_coeffs({one, -one}) * Poly::from_coeffs({one, -one}) *
           Poly::from_coeffs({-i, one});
  // normalized coefficient order: from_coeffs({c0, c1}) = c0 + c1 x
  Poly lin1 = Poly::from_coeffs({-one, one});
  Poly lin2 = Poly::from_coeffs({-i, one});
  Poly q = lin1 * lin1 * lin2;
  CHECK(q.root_multiplicity(one) == 2);
  CHECK(q.root_multiplicity(i) == 1);
  CHECK(q.root_multiplicity(f->zero()) == 0);
  Poly rest = q.deflate(one, 2);
  CHECK(rest.degree() == 1);
  CHECK(rest.eval(i).is_zero());
  (void)p;
}

TEST_CASE("x^e mod g detects roots of unity") {
  auto f = CycField::get(3);
  CycElem one = f->one(), w = f->zeta_pow(1);
  // g = (x - w)(x - conj(w)) = x^2 + x + 1 divides x^3 - 1
  Poly g = Poly::from_coeffs({-w, one}) * Poly::from_coeffs({-w.conj(), one});
  CHECK(g.divides_x_pow_minus_1(3));
  CHECK(!g.divides_x_pow_minus_1(2));
  CHECK(g.divides_x_pow_minus_1(6));
  // x - 2 does not divide any x^e - 1
  Poly h = Poly::from_coeffs({f->from_rational(Rational(-2)), one});
  CHECK(!h.divides_x_pow_minus_1(12));
}
