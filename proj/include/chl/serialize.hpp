#pragma once

#include <string>

#include "chl/arithmetic.hpp"
#include "chl/heisenberg.hpp"

namespace chl {

/// JSON encodings used by the CLI and tests. Matrix and element encodings
/// round-trip bit-exactly (rational coordinate strings).

std::string elem_to_json(const CycElem& x);
CycElem elem_from_json(const std::string& text);

/// {"field": n, "rows": r, "cols": c, "entries": [[coeff strings], ...]}
/// entries row-major, one array of rational strings per entry.
std::string matrix_to_json(const MatC& m);
MatC matrix_from_json(const std::string& text);

std::string signature_to_json(const Signature& s);

/// {"family":…, "params":…, "trace_field":…, "arithmetic":…,
///  "conjugate_signatures": {k: [p,q,z]}, "witnesses": […]}
std::string verdict_to_json(const GroupInstance& g, const ArithmeticityVerdict& v);

/// {"linear_part_order":…, "vertical_generator":…, "horizontal_norms":[…],
///  "translations":[{word, w, t}]}
std::string cusp_profile_to_json(const CuspProfile& p);

/// GroupInstance summary for the CLI.
std::string instance_to_json(const GroupInstance& g);

/// 15-significant-digit numeric rendering of the chosen embedding.
std::string approx_string(const CycElem& x, mpfr_prec_t precision_bits = 128);

} // namespace chl
