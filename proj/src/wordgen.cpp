#include "chl/wordgen.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chl {
namespace words {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

namespace {

// Letters 0..g-1 are the generators, g..2g-1 their inverses.
int letter_to_gen(unsigned letter, unsigned g) {
  return letter < g ? static_cast<int>(letter) + 1 : -(static_cast<int>(letter - g) + 1);
}

bool cancels(int a, int b) { return a == -b; }

void dfs(const std::vector<MatC>& alphabet, unsigned g, unsigned len, Word& word,
         const MatC& prefix, std::vector<WordMat>& out) {
  for (unsigned letter = 0; letter < alphabet.size(); ++letter) {
    int gen = letter_to_gen(letter, g);
    if (!word.empty() && cancels(word.back(), gen)) continue;
    MatC m = prefix * alphabet[letter];
    word.push_back(gen);
    out.push_back(WordMat{word, m});
    if (word.size() < len) dfs(alphabet, g, len, word, m, out);
    word.pop_back();
  }
}

std::vector<MatC> build_alphabet(const std::vector<MatC>& gens, bool with_inverses) {
  std::vector<MatC> alphabet = gens;
  if (with_inverses)
    for (const auto& m : gens) alphabet.push_back(m.inverse());
  return alphabet;
}

} // namespace

std::vector<WordMat> enumerate_serial(const std::vector<MatC>& gens, unsigned len,
                                      bool with_inverses) {
  std::vector<WordMat> out;
  if (gens.empty() || len == 0) return out;
  std::vector<MatC> alphabet = build_alphabet(gens, with_inverses);
  Word word;
  MatC id = MatC::identity(gens[0].field(), gens[0].rows());
  dfs(alphabet, static_cast<unsigned>(gens.size()), len, word, id, out);
  return out;
}

std::vector<WordMat> enumerate(const std::vector<MatC>& gens, unsigned len, bool with_inverses) {
  if (gens.empty() || len == 0) return {};
#ifndef _OPENMP
  return enumerate_serial(gens, len, with_inverses);
#else
  std::vector<MatC> alphabet = build_alphabet(gens, with_inverses);
  const unsigned g = static_cast<unsigned>(gens.size());
  std::vector<std::vector<WordMat>> buckets(alphabet.size());
#pragma omp parallel for schedule(dynamic)
  for (long letter = 0; letter < static_cast<long>(alphabet.size()); ++letter) {
    int gen = letter_to_gen(static_cast<unsigned>(letter), g);
    Word word{gen};
    auto& out = buckets[letter];
    out.push_back(WordMat{word, alphabet[letter]});
    if (len > 1) dfs(alphabet, g, len, word, alphabet[letter], out);
  }
  std::vector<WordMat> out;
  for (auto& b : buckets)
    for (auto& wm : b) out.push_back(std::move(wm));
  return out;
#endif
}

namespace {

void trace_dfs(const std::vector<MatC>& gens, unsigned len, const MatC& prefix,
               std::map<std::string, CycElem>& seen) {
  for (const auto& gmat : gens) {
    MatC m = prefix * gmat;
    CycElem t = m.tr();
    CycElem n2 = t * t.conj();
    seen.emplace(n2.canonical_key(), n2);
    if (prefix.rows() && len > 1) trace_dfs(gens, len - 1, m, seen);
  }
}

} // namespace

std::vector<CycElem> adjoint_trace_set_serial(const std::vector<MatC>& gens, unsigned len) {
  std::map<std::string, CycElem> seen;
  if (!gens.empty() && len > 0) {
    MatC id = MatC::identity(gens[0].field(), gens[0].rows());
    trace_dfs(gens, len, id, seen);
  }
  std::vector<CycElem> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

std::vector<CycElem> adjoint_trace_set(const std::vector<MatC>& gens, unsigned len) {
#ifndef _OPENMP
  return adjoint_trace_set_serial(gens, len);
#else
  if (gens.empty() || len == 0) return {};
  std::vector<std::map<std::string, CycElem>> partial(gens.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(gens.size()); ++i) {
    const MatC& head = gens[i];
    CycElem t = head.tr();
    CycElem n2 = t * t.conj();
    partial[i].emplace(n2.canonical_key(), n2);
    if (len > 1) trace_dfs(gens, len - 1, head, partial[i]);
  }
  std::map<std::string, CycElem> seen;
  for (auto& p : partial) seen.merge(p);
  std::vector<CycElem> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
#endif
}

} // namespace words
} // namespace chl
