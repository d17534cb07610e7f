#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lehmer/int_poly.hpp"

namespace lehmer {

/// Element of Z[T][x]: coefficient i is the coefficient of x^i, itself a polynomial in T.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<IntPoly> x_coeffs);

  /// Polynomial in x with constant (T-free) coefficients.
  static BiPoly from_x(const IntPoly& f);
  /// Polynomial in T only (x-degree 0).
  static BiPoly from_t(const IntPoly& f);

  bool is_zero() const noexcept { return c_.empty(); }
  int x_degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  int t_degree() const;
  const std::vector<IntPoly>& x_coeffs() const noexcept { return c_; }
  const IntPoly& coeff(std::size_t i) const { return c_[i]; }
  const IntPoly& lead_x() const { return c_.back(); }
  /// Coefficient of x^0.
  IntPoly constant_term() const { return c_.empty() ? IntPoly{} : c_.front(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_constant_in_t() const;
  /// The x-polynomial when no coefficient involves T; throws DomainError otherwise.
  IntPoly as_x_poly() const;

  /// gcd of all integer coefficients.
  BigInt integer_content() const;
  /// gcd of the x-coefficients in Z[T], with the integer content folded in and a
  /// positive leading coefficient.
  IntPoly t_content() const;
  /// Content 1 in Z[T]: no non-unit factor of Z[T] divides every x-coefficient.
  bool is_primitive() const;
  /// Divides out t_content() and makes the leading x-coefficient's leading coefficient positive.
  BiPoly primitive() const;

  BiPoly operator-() const;
  friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend BiPoly operator*(const BiPoly& a, const IntPoly& t_poly);
  bool operator==(const BiPoly& o) const { return c_ == o.c_; }

  /// Exchanges the roles of T and x.
  BiPoly swap_variables() const;
  /// f(x^N, x) as a univariate polynomial (Kronecker substitution); N > x_degree.
  IntPoly kronecker(int n) const;
  static BiPoly from_kronecker(const IntPoly& g, int n);

  /// Specialization T = t.
  IntPoly specialize_t(const BigInt& t) const;
  /// Specialization T = z (complex), returning coefficients of x lowest first.
  std::vector<std::complex<double>> specialize_t(std::complex<double> z) const;

  /// Multiplies by T^a x^b.
  BiPoly shift(std::size_t t_shift, std::size_t x_shift) const;
  /// Lowest T-exponent over all terms and lowest x-exponent.
  std::size_t t_low_order() const;
  std::size_t x_low_order() const;

  /// Number of nonzero terms T^j x^i.
  std::size_t term_count() const;

 private:
  void trim();
  std::vector<IntPoly> c_;
};

/// Exact division in Z[T][x]; nullopt when b does not divide a.
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);

/// Resultant with respect to x, an element of Z[T].
IntPoly resultant_x(const BiPoly& f, const BiPoly& g);

/// Canonical text, e.g. "x^2-(T+3)". Variable names are T and x.
std::string render(const BiPoly& f);

}  // namespace lehmer
