#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "chl/errors.hpp"

namespace chl {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" with optional sign; rejects anything else.
std::optional<Rational> rat_from_string(const std::string& s);

/// Canonical "p" or "p/q" rendering (q > 0, gcd(p,q) = 1).
std::string rat_to_string(const Rational& q);

inline int rat_sign(const Rational& q) { return sgn(q); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace chl
