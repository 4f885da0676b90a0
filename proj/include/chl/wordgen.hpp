#pragma once

#include "chl/reflection.hpp"

namespace chl {
namespace words {

struct WordMat {
  Word word;
  MatC mat;
};

/// All freely reduced words of length 1..len over the generators (inverses
/// included on request), in lexicographic letter order. Serial reference
/// implementation; the parallel variant must produce the identical vector.
std::vector<WordMat> enumerate_serial(const std::vector<MatC>& gens, unsigned len,
                                      bool with_inverses);

/// OpenMP variant of enumerate_serial, parallel over the leading letter;
/// falls back to the serial path without OpenMP. Output order is identical.
std::vector<WordMat> enumerate(const std::vector<MatC>& gens, unsigned len, bool with_inverses);

/// Distinct |tr(w)|^2 = tr(w) * conj(tr(w)) over all words of length 1..len
/// in the generators (positive letters only), sorted by canonical key.
std::vector<CycElem> adjoint_trace_set_serial(const std::vector<MatC>& gens, unsigned len);
std::vector<CycElem> adjoint_trace_set(const std::vector<MatC>& gens, unsigned len);

/// Thread count used by the parallel kernels (1 without OpenMP).
int max_threads();
void set_threads(int jobs);

} // namespace words
} // namespace chl
