#include "chl/arithmetic.hpp"

#include <algorithm>

#include "chl/wordgen.hpp"

namespace chl {

namespace {

CycElem trace_norm(const MatC& m) {
  CycElem t = m.tr();
  return t * t.conj();
}

// named quadratic generators, when they lie in the field
std::vector<std::pair<std::string, CycElem>> quadratic_generators(const CycField::Ptr& f) {
  std::vector<std::pair<std::string, CycElem>> out;
  unsigned n = f->conductor();
  if (n % 8 == 0) out.emplace_back("Q(sqrt2)", f->subfield_root(8, 1) + f->subfield_root(8, 7));
  if (n % 12 == 0) out.emplace_back("Q(sqrt3)", f->subfield_root(12, 1) + f->subfield_root(12, 11));
  if (n % 5 == 0)
    out.emplace_back("Q(sqrt5)", f->subfield_root(5, 1) - f->subfield_root(5, 2) -
                                     f->subfield_root(5, 3) + f->subfield_root(5, 4));
  return out;
}

} // namespace

TraceFieldResult adjoint_trace_field(const GroupInstance& g, unsigned word_len) {
  if (word_len < 1) fail(errc::malformed_word, "word_len must be >= 1");
  const auto& f = g.field;
  TraceFieldResult res;
  res.word_len = word_len;
  res.conductor = f->conductor();

  std::vector<MatC> gens = g.generator_matrices();
  std::vector<words::WordMat> sample = words::enumerate(gens, word_len, /*with_inverses=*/false);

  // distinct |tr|^2 values with one witness word each, in enumeration order
  std::vector<std::pair<Word, CycElem>> values;
  {
    std::map<std::string, size_t> seen;
    for (const auto& wm : sample) {
      CycElem v = trace_norm(wm.mat);
      if (seen.emplace(v.canonical_key(), values.size()).second) values.emplace_back(wm.word, v);
    }
  }

  for (unsigned k : coprime_residues(f->conductor())) {
    bool fixes = true;
    for (const auto& [w, v] : values)
      if (v.galois(static_cast<long>(k)) != v) {
        fixes = false;
        break;
      }
    if (fixes) res.fixing_exponents.push_back(k);
  }

  const unsigned group_order = euler_phi(f->conductor());
  const unsigned fix_count = static_cast<unsigned>(res.fixing_exponents.size());
  if (group_order % fix_count != 0)
    fail(errc::inconclusive, "fixing exponents do not form a subgroup");
  const unsigned degree = group_order / fix_count;

  if (degree == 1) {
    res.descriptor = "Q";
  } else {
    res.descriptor = "fixed field of degree " + std::to_string(degree);
    if (degree == 2) {
      for (const auto& [name, elem] : quadratic_generators(f)) {
        bool fixed = true;
        for (unsigned k : res.fixing_exponents)
          if (elem.galois(static_cast<long>(k)) != elem) {
            fixed = false;
            break;
          }
        if (fixed) {
          res.descriptor = name;
          break;
        }
      }
    }
  }

  // designated witnesses first
  const FamilySpec& fam = *g.spec;
  for (const auto& w : fam.trace_witnesses) {
    MatC m = eval_word(gens, w);
    res.witnesses.emplace_back(w, trace_norm(m));
  }
  // one witness per moved exponent
  for (unsigned k : coprime_residues(f->conductor())) {
    if (std::find(res.fixing_exponents.begin(), res.fixing_exponents.end(), k) !=
        res.fixing_exponents.end())
      continue;
    for (const auto& [w, v] : values) {
      if (v.galois(static_cast<long>(k)) != v) {
        if (std::none_of(res.witnesses.begin(), res.witnesses.end(),
                         [&](const auto& entry) { return entry.first == w; }))
          res.witnesses.emplace_back(w, v);
        break;
      }
    }
  }
  return res;
}

ArithmeticityVerdict arithmeticity(const GroupInstance& g, unsigned word_len) {
  if (!g.generators_integral())
    fail(errc::integrality_not_established,
         g.label() + ": generator entries are not algebraic integers");

  ArithmeticityVerdict verdict;
  verdict.trace_field = adjoint_trace_field(g, word_len);

  const unsigned n = g.field->conductor();
  const auto& fixing = verdict.trace_field.fixing_exponents;
  auto fixes_trace_field = [&](unsigned k) {
    return std::find(fixing.begin(), fixing.end(), k) != fixing.end();
  };

  std::map<unsigned, Signature> computed; // representative k -> signature
  for (unsigned k : coprime_residues(n)) {
    if (k == 1 || fixes_trace_field(k)) continue;
    unsigned rep = std::min(k, n - k); // sigma_{n-k} gives the same signature
    if (!computed.count(rep)) {
      HermForm conj = g.hermitian().galois(static_cast<long>(rep));
      computed.emplace(rep, conj.signature());
    }
    verdict.conjugate_signatures[k] = computed[rep];
    if (!computed[rep].is_definite()) {
      verdict.arithmetic = false;
      if (!verdict.nonarithmeticity_witness) verdict.nonarithmeticity_witness = k;
    }
  }
  return verdict;
}

} // namespace chl
