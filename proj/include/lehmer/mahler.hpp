#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lehmer/bi_poly.hpp"
#include "lehmer/int_poly.hpp"
#include "lehmer/roots.hpp"

namespace lehmer {

enum class MeasureMethod { roots, quadrature };

std::string to_string(MeasureMethod m);

struct MeasureResult {
  double value = 0;
  double error_bound = 0;
  MeasureMethod method = MeasureMethod::roots;
  long evaluations = 0;  // integrand evaluations (quadrature) or root clusters (roots)
  int depth = 0;         // deepest panel subdivision
  bool warning = false;  // quadrature target not reached; error_bound is the honest estimate
};

struct TorusQuadratureConfig {
  double target_abs_error = 1e-10;
  int max_depth = 50;
  int base_points = 8;
  bool singularity_split = true;
};

/// Default tolerances by number of variables: 1e-10, 1e-6, 1e-4.
TorusQuadratureConfig default_torus_config(int nvars);

/// How the zero polynomial is treated. `strict` raises DomainError; `lenient`
/// applies the convention m(0) = 0.
enum class ZeroConvention { strict, lenient };

/// Sparse integer polynomial in up to three variables. Exponent vectors have
/// length nvars; the last variable is the innermost one for quadrature.
struct MultiPoly {
  int nvars = 1;
  std::map<std::vector<int>, BigInt> terms;

  bool is_zero() const { return terms.empty(); }
  static MultiPoly from_int_poly(const IntPoly& f);
  /// Variables (T, x): T outer, x inner.
  static MultiPoly from_bipoly(const BiPoly& f);
  /// Coefficients (lowest first) of the last variable at the given point of the
  /// other variables.
  std::vector<std::complex<double>> inner_coefficients(const std::vector<std::complex<double>>& outer) const;
  void add_term(std::vector<int> exponents, const BigInt& c);
};

/// m(f) = log|a| + sum log max(1, |alpha_i|) from certified roots.
MeasureResult mahler_roots(const IntPoly& f, const PrecisionConfig& cfg = {},
                           ZeroConvention zero = ZeroConvention::strict);

/// Jensen measure of a polynomial with complex double coefficients (roots found
/// at double precision). Used as the innermost integrand on the torus.
MeasureResult jensen_measure(std::vector<std::complex<double>> coeffs);

/// Iterated adaptive quadrature over the torus, parameterized by t in [0,1)^n.
MeasureResult mahler_quadrature(const MultiPoly& f, const TorusQuadratureConfig& cfg,
                                ZeroConvention zero = ZeroConvention::strict);
MeasureResult mahler_quadrature(const IntPoly& f, const TorusQuadratureConfig& cfg = default_torus_config(1),
                                ZeroConvention zero = ZeroConvention::strict);

/// Integral over t in [0,1) of sum_i w_i log|p_i(e^{2 pi i t})|, with break points at
/// the circle roots of every p_i.
MeasureResult circle_log_integral(const std::vector<std::pair<IntPoly, double>>& terms,
                                  const TorusQuadratureConfig& cfg = default_torus_config(1));

/// h(alpha) = m(f)/d for the primitive irreducible minimal polynomial f of degree d.
double height_from_minpoly(const IntPoly& f, int d);

}  // namespace lehmer
