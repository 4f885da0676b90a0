#pragma once

#include <optional>

#include "chl/matrix.hpp"

namespace chl {

/// Inertia of a Hermitian form: counts of positive, negative and zero
/// eigenvalues under the field's chosen embedding.
struct Signature {
  unsigned pos = 0, neg = 0, zero = 0;

  unsigned dim() const { return pos + neg + zero; }
  bool is_definite() const { return zero == 0 && (pos == 0 || neg == 0); }
  bool is_degenerate() const { return zero > 0; }
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.pos == b.pos && a.neg == b.neg && a.zero == b.zero;
  }
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
  std::string str() const {
    return "(" + std::to_string(pos) + "," + std::to_string(neg) + "," + std::to_string(zero) +
           ")";
  }
};

/// A Hermitian matrix together with its ambient field; construction checks
/// H = H* exactly.
class HermForm {
public:
  explicit HermForm(MatC mat);

  const MatC& mat() const { return mat_; }
  unsigned dim() const { return mat_.rows(); }
  const CycField::Ptr& field() const { return mat_.field(); }

  /// <x, y> = y* H x  (linear in x, antilinear in y).
  CycElem pairing(const std::vector<CycElem>& x, const std::vector<CycElem>& y) const;
  CycElem norm(const std::vector<CycElem>& x) const { return pairing(x, x); }

  /// Exact inertia by recursive pivoted LDL* with certified pivot signs;
  /// cached after the first call.
  Signature signature() const;

  /// Entrywise Galois image (again Hermitian when k is odd w.r.t. conj;
  /// in general sigma_k maps Hermitian to Hermitian since conj commutes
  /// with every sigma_k up to relabeling).
  HermForm galois(long k) const;
  HermForm lift_to(const CycField::Ptr& target) const;
  /// Same matrix, different chosen embedding.
  HermForm with_embedding(unsigned k) const;

  /// Principal sub-form on the given index set.
  HermForm subform(const std::vector<unsigned>& idx) const;

private:
  MatC mat_;
  mutable std::optional<Signature> signature_cache_;
};

/// Signature of an explicit Hermitian matrix (no caching).
Signature hermitian_signature(const MatC& h);

} // namespace chl
