#pragma once

#include "chl/hermitian.hpp"

namespace chl {

/// Floating-point check of an exact signature: embeds the Hermitian matrix
/// numerically at the given precision and counts eigenvalue signs with a
/// cyclic complex Jacobi iteration. Entirely independent of the exact
/// LDL* path; used as a cross-check, never as a source of truth.
Signature numeric_signature(const MatC& h, mpfr_prec_t precision_bits = 128);

} // namespace chl
