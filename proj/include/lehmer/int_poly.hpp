#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lehmer {

using BigInt = mpz_class;
/// Elements of Q. mpq_class keeps numerator and denominator coprime with a
/// positive denominator after canonicalize().
using Rational = mpq_class;

/// Dense univariate polynomial with integer coefficients, lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  /// Coefficients listed from the constant term upwards: {c0, c1, c2, ...}.
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, std::size_t k);
  /// The polynomial x (or T).
  static IntPoly variable() { return monomial(1, 1); }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  std::size_t size() const noexcept { return c_.size(); }

  const std::vector<BigInt>& coeffs() const noexcept { return c_; }
  const BigInt& operator[](std::size_t k) const { return c_[k]; }
  BigInt coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigInt(0); }
  const BigInt& lead() const { return c_.back(); }
  /// Index of the lowest nonzero coefficient (the multiplicity of the root 0).
  std::size_t low_order() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& s);
  IntPoly operator-() const;

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const BigInt& s) { return a *= s; }
  friend IntPoly operator*(const BigInt& s, IntPoly a) { return a *= s; }

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly derivative() const;
  BigInt eval(const BigInt& x) const;
  /// x^deg f(1/x).
  IntPoly reversed() const;
  /// f(x^k).
  IntPoly compose_power(unsigned k) const;
  /// f(-x).
  IntPoly negate_variable() const;
  /// f(x) / x^k; requires the k lowest coefficients to vanish.
  IntPoly shift_down(std::size_t k) const;
  /// f(x) * x^k.
  IntPoly shift_up(std::size_t k) const;
  /// Divides every coefficient by s; requires exact divisibility.
  IntPoly divide_scalar_exact(const BigInt& s) const;

  IntPoly pow(unsigned e) const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Total order used for deterministic sorting: degree first, then coefficients
/// from the leading term downwards.
std::strong_ordering compare(const IntPoly& a, const IntPoly& b);

/// gcd of the absolute values of the coefficients. Throws DomainError for zero.
BigInt content(const IntPoly& f);
/// f / (sign(lead) * content); positive leading coefficient. Throws DomainError for zero.
IntPoly primitive_part(const IntPoly& f);

/// Exact division in Z[x]; std::nullopt if g does not divide f with an integral quotient.
std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g);
/// Pseudo-division: lead(g)^(deg f - deg g + 1) f = q g + r.
std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& f, const IntPoly& g);

/// Primitive gcd in Q[x] with positive leading coefficient.
IntPoly gcd_q(const IntPoly& f, const IntPoly& g);

/// Sylvester resultant Res(f, g).
BigInt resultant(const IntPoly& f, const IntPoly& g);

/// Canonical text, e.g. "x^2-3*x+1". The zero polynomial renders as "0".
std::string render(const IntPoly& f, char var = 'x');

}  // namespace lehmer
