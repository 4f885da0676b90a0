#pragma once

#include <unordered_map>

#include "chl/reflection.hpp"

namespace chl {

/// Finite closure of a matrix-generated group, built by breadth-first
/// multiplication with canonical-form hashing. Witness words are one valid
/// expression per element in the generators (not canonical: a different
/// search order may find different witnesses of the same element).
class FiniteGroupClosure {
public:
  unsigned order() const { return static_cast<unsigned>(elements_.size()); }
  const std::vector<MatC>& elements() const { return elements_; }
  const Word& witness(size_t i) const { return witness_[i]; }

  /// Witness word when a lies in the closure, else nullopt.
  std::optional<Word> member(const MatC& a) const;

  /// Elements commuting with every generator used to build the closure.
  FiniteGroupClosure center() const;

  /// Errors: order_exceeds_bound when the closure would outgrow max_order.
  static FiniteGroupClosure build(const std::vector<MatC>& gens, unsigned max_order = 10000);

private:
  std::vector<MatC> elements_; // elements_[0] is the identity
  std::vector<Word> witness_;
  std::vector<MatC> gens_;
  std::unordered_map<std::string, size_t> index_;

  void insert(MatC m, Word w);
};

} // namespace chl
