#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lehmer/bi_poly.hpp"
#include "lehmer/int_poly.hpp"
#include "lehmer/mahler.hpp"

namespace lehmer {

/// The n-th cyclotomic polynomial (cached; safe to call concurrently).
const IntPoly& cyclotomic(int n);
/// Euler's totient.
int euler_phi(int n);

enum class TorsionStatus { torsion, not_torsion, inconclusive };
std::string to_string(TorsionStatus s);

/// Phi_n(sign * T^t_exp * x^x_exp) with negative powers of T cleared, raised to
/// `multiplicity`. Univariate certificates use t_exp = 0, x_exp = 1, sign = +1.
struct CosetFactor {
  int n = 1;
  int t_exp = 0;
  int x_exp = 1;
  int sign = 1;
  int multiplicity = 1;

  BiPoly cleared() const;
};

struct TorsionCertificate {
  int unit = 1;
  int monomial_t = 0;
  int monomial_x = 0;
  std::vector<CosetFactor> factors;

  /// unit * T^monomial_t * x^monomial_x * prod cleared()^multiplicity.
  BiPoly reconstruct() const;
};

struct TorsionVerdict {
  TorsionStatus status = TorsionStatus::inconclusive;
  std::optional<TorsionCertificate> certificate;
  std::optional<MeasureResult> numeric_measure;
};

/// Exact test for f = +-x^k * prod Phi_{n_i}: Graeffe root-squaring iterated to a
/// fixed point (cap 2 deg + 8), then the certificate by trial division.
/// The numeric measure is attached when `with_measure` is set.
TorsionVerdict is_cyclotomic_product(const IntPoly& f, bool with_measure = false,
                                     const PrecisionConfig& cfg = {});

/// One root-squaring step: the polynomial (positive leading coefficient) whose
/// roots are the squares of the roots of f.
IntPoly graeffe(const IntPoly& f);

/// n with f = +-Phi_n, for irreducible primitive f; DomainError on reducible input.
std::optional<int> root_of_unity_order(const IntPoly& f);

/// Three-valued torsion-coset test for f in Z[T][x]: exact structural search over
/// Phi_n(+-T^a x^b) with |a|, |b| <= 8 and n <= 120, else the numeric measure
/// decides not_torsion when it exceeds three times its error bound. The numeric
/// measure is attached only when no certificate was found.
TorsionVerdict bivariate_torsion_test(const BiPoly& f, const TorusQuadratureConfig& cfg = default_torus_config(2));

}  // namespace lehmer
