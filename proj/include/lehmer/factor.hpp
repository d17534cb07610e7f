#pragma once

#include <utility>
#include <vector>

#include "lehmer/bi_poly.hpp"
#include "lehmer/int_poly.hpp"

namespace lehmer {

inline constexpr int kDefaultFactorDegreeCap = 64;

/// unit * integer_content * prod factor^multiplicity == input, with every factor
/// primitive, irreducible over Q and with positive leading coefficient.
struct Factorization {
  int unit = 1;
  BigInt integer_content = 1;
  std::vector<std::pair<IntPoly, int>> factors;

  IntPoly reconstruct() const;
};

/// Complete factorization over Z. Squarefree decomposition, prime screening,
/// Cantor-Zassenhaus modulo p, Hensel lifting and factor recombination.
/// Factors are sorted by compare(). Throws CapacityError above `degree_cap`.
Factorization factor(const IntPoly& f, int degree_cap = kDefaultFactorDegreeCap);

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient: f = prod s_i^i, s_i squarefree and pairwise coprime. Only the
/// nonconstant s_i are returned, paired with i.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

/// True when f has no repeated factor of positive degree. A modular check
/// settles most inputs; the rest go through the exact decomposition.
bool is_squarefree(const IntPoly& f);

/// Primitive, degree >= 1 and irreducible over Q (up to the sign of the input).
bool is_irreducible(const IntPoly& f, int degree_cap = kDefaultFactorDegreeCap);

/// Irreducibility over Q(T) of a polynomial in x with coefficients in Z[T]
/// (x-degree >= 1, primitive in Z[T][x]).
bool is_irreducible_over_qt(const BiPoly& f, int degree_cap = kDefaultFactorDegreeCap);

/// Minimal polynomial (primitive, positive leading coefficient) of alpha^n for
/// any root alpha of the irreducible primitive f.
IntPoly power_minpoly(const IntPoly& f, unsigned n);

}  // namespace lehmer
