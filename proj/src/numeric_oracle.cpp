#include "chl/numeric_oracle.hpp"

#include <cassert>
#include <vector>

namespace chl {

namespace {

// Thin RAII wrapper over mpfr_t so we can hold matrices in std::vector.
class R {
public:
  explicit R(mpfr_prec_t p) {
    mpfr_init2(v_, p);
    mpfr_set_zero(v_, 1);
  }
  R(const R& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  R& operator=(const R& o) {
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  ~R() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

} // namespace

Signature numeric_signature(const MatC& h, mpfr_prec_t prec) {
  assert(h.is_square());
  const unsigned n = h.rows();
  const unsigned m = 2 * n; // real symmetric embedding [[Re, -Im], [Im, Re]]

  std::vector<R> a(m * m, R(prec));
  auto A = [&](unsigned i, unsigned j) -> mpfr_ptr { return a[i * m + j].get(); };

  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      CInterval v = h.at(i, j).embed(prec);
      mpfr_t re, im;
      mpfr_inits2(prec, re, im, mpfr_ptr(nullptr));
      mpfr_add(re, v.re().lo_raw(), v.re().hi_raw(), MPFR_RNDN);
      mpfr_div_ui(re, re, 2, MPFR_RNDN);
      mpfr_add(im, v.im().lo_raw(), v.im().hi_raw(), MPFR_RNDN);
      mpfr_div_ui(im, im, 2, MPFR_RNDN);
      mpfr_set(A(i, j), re, MPFR_RNDN);
      mpfr_set(A(n + i, n + j), re, MPFR_RNDN);
      mpfr_neg(A(i, n + j), im, MPFR_RNDN);
      mpfr_set(A(n + i, j), im, MPFR_RNDN);
      mpfr_clears(re, im, mpfr_ptr(nullptr));
    }

  mpfr_t theta, t, c, s, tmp, tmp2, off, thresh, bp, bq;
  mpfr_inits2(prec, theta, t, c, s, tmp, tmp2, off, thresh, bp, bq, mpfr_ptr(nullptr));
  mpfr_set_ui(thresh, 1, MPFR_RNDN);
  mpfr_mul_2si(thresh, thresh, -static_cast<long>(prec) + 16, MPFR_RNDN);

  for (int sweep = 0; sweep < 400; ++sweep) {
    mpfr_set_zero(off, 1);
    for (unsigned p = 0; p < m; ++p)
      for (unsigned q = p + 1; q < m; ++q) {
        mpfr_abs(tmp, A(p, q), MPFR_RNDN);
        if (mpfr_cmp(tmp, off) > 0) mpfr_set(off, tmp, MPFR_RNDN);
      }
    if (mpfr_cmp(off, thresh) < 0) break;

    for (unsigned p = 0; p < m; ++p)
      for (unsigned q = p + 1; q < m; ++q) {
        if (mpfr_zero_p(A(p, q))) continue;
        mpfr_abs(tmp, A(p, q), MPFR_RNDN);
        if (mpfr_cmp(tmp, thresh) < 0) continue;
        // classical Jacobi rotation angle
        mpfr_sub(theta, A(q, q), A(p, p), MPFR_RNDN);
        mpfr_div(theta, theta, A(p, q), MPFR_RNDN);
        mpfr_div_ui(theta, theta, 2, MPFR_RNDN);
        mpfr_sqr(tmp, theta, MPFR_RNDN);
        mpfr_add_ui(tmp, tmp, 1, MPFR_RNDN);
        mpfr_sqrt(tmp, tmp, MPFR_RNDN);
        mpfr_abs(tmp2, theta, MPFR_RNDN);
        mpfr_add(tmp, tmp, tmp2, MPFR_RNDN);
        mpfr_ui_div(t, 1, tmp, MPFR_RNDN);
        if (mpfr_sgn(theta) < 0) mpfr_neg(t, t, MPFR_RNDN);
        mpfr_sqr(tmp, t, MPFR_RNDN);
        mpfr_add_ui(tmp, tmp, 1, MPFR_RNDN);
        mpfr_sqrt(tmp, tmp, MPFR_RNDN);
        mpfr_ui_div(c, 1, tmp, MPFR_RNDN);
        mpfr_mul(s, t, c, MPFR_RNDN);

        // full similarity: columns p,q then rows p,q
        for (unsigned i = 0; i < m; ++i) {
          mpfr_mul(bp, c, A(i, p), MPFR_RNDN);
          mpfr_mul(tmp, s, A(i, q), MPFR_RNDN);
          mpfr_sub(bp, bp, tmp, MPFR_RNDN);
          mpfr_mul(bq, s, A(i, p), MPFR_RNDN);
          mpfr_mul(tmp, c, A(i, q), MPFR_RNDN);
          mpfr_add(bq, bq, tmp, MPFR_RNDN);
          mpfr_set(A(i, p), bp, MPFR_RNDN);
          mpfr_set(A(i, q), bq, MPFR_RNDN);
        }
        for (unsigned j = 0; j < m; ++j) {
          mpfr_mul(bp, c, A(p, j), MPFR_RNDN);
          mpfr_mul(tmp, s, A(q, j), MPFR_RNDN);
          mpfr_sub(bp, bp, tmp, MPFR_RNDN);
          mpfr_mul(bq, s, A(p, j), MPFR_RNDN);
          mpfr_mul(tmp, c, A(q, j), MPFR_RNDN);
          mpfr_add(bq, bq, tmp, MPFR_RNDN);
          mpfr_set(A(p, j), bp, MPFR_RNDN);
          mpfr_set(A(q, j), bq, MPFR_RNDN);
        }
      }
  }

  // Each eigenvalue of h appears twice on the diagonal; zero threshold sits
  // halfway (in exponent) between convergence noise and honest eigenvalues.
  mpfr_t tol;
  mpfr_init2(tol, prec);
  mpfr_set_ui(tol, 1, MPFR_RNDN);
  mpfr_mul_2si(tol, tol, -static_cast<long>(prec) / 2, MPFR_RNDN);
  unsigned pos = 0, neg = 0, zero = 0;
  for (unsigned i = 0; i < m; ++i) {
    mpfr_abs(tmp, A(i, i), MPFR_RNDN);
    if (mpfr_cmp(tmp, tol) < 0)
      ++zero;
    else if (mpfr_sgn(A(i, i)) > 0)
      ++pos;
    else
      ++neg;
  }
  mpfr_clear(tol);
  mpfr_clears(theta, t, c, s, tmp, tmp2, off, thresh, bp, bq, mpfr_ptr(nullptr));
  assert(pos % 2 == 0 && neg % 2 == 0 && zero % 2 == 0);
  return Signature{pos / 2, neg / 2, zero / 2};
}

} // namespace chl
