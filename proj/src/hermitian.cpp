#include "chl/hermitian.hpp"

#include <cassert>

namespace chl {

HermForm::HermForm(MatC mat) : mat_(std::move(mat)) {
  if (!mat_.is_square()) fail(errc::dimension_mismatch, "Hermitian form must be square");
  if (mat_.star() != mat_) fail(errc::form_mismatch, "matrix is not Hermitian");
}

CycElem HermForm::pairing(const std::vector<CycElem>& x, const std::vector<CycElem>& y) const {
  if (x.size() != dim() || y.size() != dim()) fail(errc::dimension_mismatch, "pairing");
  CycElem acc = field()->zero();
  for (unsigned i = 0; i < dim(); ++i) {
    if (y[i].is_zero()) continue;
    CycElem row = field()->zero();
    for (unsigned j = 0; j < dim(); ++j)
      if (!mat_.at(i, j).is_zero() && !x[j].is_zero()) row += mat_.at(i, j) * x[j];
    acc += y[i].conj() * row;
  }
  return acc;
}

namespace {

// Recursive pivoted LDL*: diagonal pivots contribute their certified sign;
// an all-zero diagonal with a nonzero off-diagonal entry contributes one +1
// and one -1 via the standard hyperbolic-pair step; a zero block is all
// zeros of the signature.
void signature_rec(MatC h, Signature& sig) {
  const unsigned n = h.rows();
  if (n == 0) return;

  unsigned piv = n;
  for (unsigned i = 0; i < n; ++i)
    if (!h.at(i, i).is_zero()) {
      piv = i;
      break;
    }

  std::vector<unsigned> rest;
  if (piv < n) {
    const CycElem d = h.at(piv, piv);
    int s = d.real_sign();
    assert(s != 0);
    if (s > 0)
      ++sig.pos;
    else
      ++sig.neg;
    for (unsigned i = 0; i < n; ++i)
      if (i != piv) rest.push_back(i);
    MatC next(h.field(), n - 1, n - 1);
    for (unsigned a = 0; a < rest.size(); ++a)
      for (unsigned b = 0; b < rest.size(); ++b)
        next.at(a, b) = h.at(rest[a], rest[b]) - h.at(rest[a], piv) * h.at(piv, rest[b]) / d;
    signature_rec(std::move(next), sig);
    return;
  }

  // all diagonal entries vanish; look for a nonzero off-diagonal pair
  unsigned pj = n, pk = n;
  for (unsigned j = 0; j < n && pj == n; ++j)
    for (unsigned k = j + 1; k < n; ++k)
      if (!h.at(j, k).is_zero()) {
        pj = j;
        pk = k;
        break;
      }
  if (pj == n) {
    sig.zero += n; // zero block
    return;
  }
  ++sig.pos;
  ++sig.neg;
  const CycElem a = h.at(pj, pk); // h(pk, pj) = conj(a)
  for (unsigned i = 0; i < n; ++i)
    if (i != pj && i != pk) rest.push_back(i);
  MatC next(h.field(), n - 2, n - 2);
  for (unsigned x = 0; x < rest.size(); ++x)
    for (unsigned y = 0; y < rest.size(); ++y) {
      // Schur complement against the 2x2 block [[0, a], [conj(a), 0]]
      CycElem corr = h.at(rest[x], pk) * h.at(pj, rest[y]) / a +
                     h.at(rest[x], pj) * h.at(pk, rest[y]) / a.conj();
      next.at(x, y) = h.at(rest[x], rest[y]) - corr;
    }
  signature_rec(std::move(next), sig);
}

} // namespace

Signature hermitian_signature(const MatC& h) {
  Signature sig;
  signature_rec(h, sig);
  return sig;
}

Signature HermForm::signature() const {
  if (!signature_cache_) signature_cache_ = hermitian_signature(mat_);
  return *signature_cache_;
}

HermForm HermForm::galois(long k) const { return HermForm(mat_.galois(k)); }

HermForm HermForm::lift_to(const CycField::Ptr& target) const {
  return HermForm(mat_.lift_to(target));
}

HermForm HermForm::with_embedding(unsigned k) const {
  return lift_to(field()->with_embedding(k));
}

HermForm HermForm::subform(const std::vector<unsigned>& idx) const {
  return HermForm(mat_.submatrix(idx, idx));
}

} // namespace chl
