#pragma once

#include <string>
#include <variant>

#include "lehmer/bi_poly.hpp"
#include "lehmer/int_poly.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/rat_func.hpp"

namespace lehmer {

/// Result of parsing: a polynomial in x, an element of Q(T) (also for constants),
/// or a polynomial in x over Z[T].
using Expression = std::variant<IntPoly, RatFunc, BiPoly>;

/// Grammar: integer literals, variables T and x, + - * / ^, parentheses, unary
/// minus. ^ binds tightest and takes an integer exponent; a literal followed by
/// a variable or parenthesis multiplies implicitly (2x, 3(T+1)). Division must
/// be exact unless the divisor involves T alone. Throws ParseError with the
/// character position.
Expression parse_expression(const std::string& text);

/// Same grammar with the additional variables y and z. The variables present are
/// assigned, in the order T, x, y, z, to the `nvars` slots of the result.
MultiPoly parse_multivariate(const std::string& text, int nvars);

std::string render(const Expression& e);

/// Conversions used by the command line. Each throws DomainError when the value
/// does not have the requested shape.
IntPoly as_univariate(const Expression& e);   // one variable (x or T), integer coefficients
RatFunc as_ratfunc(const Expression& e);      // element of Q(T)
BiPoly as_bipoly(const Expression& e);        // element of Z[T][x]

}  // namespace lehmer
