#pragma once

#include <optional>
#include <string>
#include <variant>

#include "chl/hermitian.hpp"

namespace chl {

/// A complex reflection R(x) = x + (z - 1) <x,v>/<v,v> v for a polar vector
/// v with <v,v> != 0 and a unit multiplier z. Preserves the form exactly.
struct Reflection {
  MatC matrix;
  std::vector<CycElem> polar;
  CycElem multiplier;

  /// Errors: isotropic_polar_vector, non_unit_multiplier.
  static Reflection build(const HermForm& h, const std::vector<CycElem>& v, const CycElem& z);
};

/// (AB)^(k/2) = (BA)^(k/2), alternating products of k factors for odd k.
bool braid_holds(const MatC& a, const MatC& b, unsigned k);

/// Smallest k in [2, k_max] with braid_holds(a, b, k), or nullopt.
std::optional<unsigned> braid_length(const MatC& a, const MatC& b, unsigned k_max);

/// Word in group generators: nonzero indices, negative for inverses,
/// 1-based ("1 2 -3" = g1 g2 g3^-1).
using Word = std::vector<int>;

Word parse_word(const std::string& text); // errors: malformed_word
std::string word_to_string(const Word& w);

MatC eval_word(const std::vector<MatC>& gens, const Word& w);

struct BraidRel {
  Word a, b;
  unsigned k = 3;
};
struct PowerRel {
  Word w;
  unsigned m = 1;
};
struct EqualRel {
  Word lhs, rhs;
};
using Relation = std::variant<BraidRel, PowerRel, EqualRel>;

std::string relation_to_string(const Relation& r);

/// Text format, one relation per line:
///   "br k: i j"           braid relation between two generators
///   "br k: w1 | w2"       braid relation between two words
///   "pow m: w"            w^m = identity
///   "eq: w1 = w2"
/// Errors: malformed_word.
Relation parse_relation(const std::string& line);
std::vector<Relation> parse_presentation(const std::string& text);

struct RelationCheck {
  Relation relation;
  bool pass = false;
  /// Exact difference of the two sides for the first failure.
  std::optional<MatC> diff;
};

struct PresentationReport {
  std::vector<RelationCheck> checks;
  bool all_pass = true;
  /// Index into checks of the first failing relation.
  std::optional<size_t> first_failure;
};

/// Checks every relation against the generator matrices; deterministic
/// order, optionally parallel across relations.
PresentationReport verify_presentation(const std::vector<MatC>& gens,
                                       const std::vector<Relation>& relations);

} // namespace chl
