#pragma once

#include "chl/catalog.hpp"
#include "chl/classify.hpp"

namespace chl {

/// Result of sampling tr Ad gamma = |tr gamma|^2 over short words.
struct TraceFieldResult {
  /// Exponents k with sigma_k fixing every sampled value; a subgroup of
  /// (Z/nZ)^* containing +/-1. The adjoint trace field is its fixed field.
  std::vector<unsigned> fixing_exponents;
  /// "Q", "Q(sqrt2)", "Q(sqrt3)", "Q(sqrt5)", or a generic description.
  std::string descriptor;
  /// (word, |tr|^2) pairs: the family's designated witnesses first, then one
  /// witness per non-fixing exponent certifying the lower bound.
  std::vector<std::pair<Word, CycElem>> witnesses;
  unsigned word_len = 0;
  unsigned conductor = 1;

  bool is_rational() const { return descriptor == "Q"; }
};

/// Samples words of length <= word_len in the generators and returns the
/// subgroup of Galois exponents fixing all |tr|^2 values, with witnesses.
TraceFieldResult adjoint_trace_field(const GroupInstance& g, unsigned word_len = 4);

struct ArithmeticityVerdict {
  bool arithmetic = true;
  /// signature(H^sigma_k) for every k acting nontrivially on the trace field
  /// (both members of each {k, n-k} pair are listed).
  std::map<unsigned, Signature> conjugate_signatures;
  /// Some k whose conjugate form is indefinite, when not arithmetic.
  std::optional<unsigned> nonarithmeticity_witness;
  TraceFieldResult trace_field;
};

/// Galois-conjugate definiteness test over the instance's entry field.
/// Errors: integrality_not_established when generator entries are not
/// algebraic integers.
ArithmeticityVerdict arithmeticity(const GroupInstance& g, unsigned word_len = 4);

} // namespace chl
