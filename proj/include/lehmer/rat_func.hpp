#pragma once

#include <complex>
#include <string>

#include "lehmer/int_poly.hpp"

namespace lehmer {

/// Element of Q(T) in the canonical form scalar * numerator / denominator, where
/// numerator and denominator are primitive, have positive leading coefficients and
/// are coprime in Q[T]. Zero is stored as scalar 0 over 1/1.
class RatFunc {
 public:
  RatFunc();
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(const IntPoly& p);   // NOLINT(google-explicit-constructor)
  RatFunc(const IntPoly& num, const IntPoly& den);
  RatFunc(Rational scalar, const IntPoly& num, const IntPoly& den);

  const Rational& scalar() const noexcept { return scalar_; }
  const IntPoly& numerator() const noexcept { return num_; }
  const IntPoly& denominator() const noexcept { return den_; }

  bool is_zero() const { return scalar_ == 0; }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return is_zero() || (num_.is_one() && den_.is_one()); }

  /// Integer polynomials N, D with this = N / D and D having positive leading coefficient.
  IntPoly integer_numerator() const;
  IntPoly integer_denominator() const;
  /// Throws DomainError unless this lies in Z[T].
  IntPoly to_int_poly() const;

  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  bool operator==(const RatFunc& o) const {
    return scalar_ == o.scalar_ && num_ == o.num_ && den_ == o.den_;
  }

  /// Value at a complex point; throws PoleError when the denominator vanishes there.
  std::complex<double> eval(std::complex<double> z) const;

 private:
  Rational scalar_;
  IntPoly num_;
  IntPoly den_;
};

/// Multiplicity of the irreducible primitive polynomial `x` in the numerator minus
/// its multiplicity in the denominator. Throws DomainError for phi = 0.
int ord(const RatFunc& phi, const IntPoly& x);
/// Multiplicity of x in a nonzero integer polynomial.
int multiplicity(const IntPoly& f, const IntPoly& x);

/// p-adic valuation of a nonzero rational.
long p_adic_valuation(const Rational& q, const BigInt& p);
long p_adic_valuation(const BigInt& n, const BigInt& p);

/// "num/den" form in T; parses back to the same value.
std::string render(const RatFunc& f, char var = 'T');

}  // namespace lehmer
