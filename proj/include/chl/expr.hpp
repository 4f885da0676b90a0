#pragma once

#include <map>

#include "chl/cyclotomic.hpp"

namespace chl {

/// Environment for the catalog's entry expressions: named field elements.
using ExprEnv = std::map<std::string, CycElem>;

/// Evaluates arithmetic expressions over a cyclotomic field:
///   integers, rationals (via /), named symbols, + - * /, ^ with integer
///   exponents, parentheses, conj(expr) and zetaN(m) for m dividing the
///   conductor. Whitespace-insensitive. Errors: bad_catalog on syntax or
///   unknown symbols.
CycElem eval_expr(const std::string& text, const CycField::Ptr& field, const ExprEnv& env);

} // namespace chl
