#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lehmer/bi_poly.hpp"
#include "lehmer/cyclotomic.hpp"
#include "lehmer/int_poly.hpp"
#include "lehmer/mahler.hpp"
#include "lehmer/rat_func.hpp"
#include "lehmer/roots.hpp"

namespace lehmer {

// Places of Q(T): closed points of the affine line, primes (Gauss norms) and
// points of the unit circle.
struct ClosedPoint {
  IntPoly f;  // primitive, irreducible, positive leading coefficient
};
struct PrimePlace {
  BigInt p;
};
struct CirclePlace {
  double t = 0;  // in [0, 1)
};
using Place = std::variant<ClosedPoint, PrimePlace, CirclePlace>;

/// Validating constructors (DomainError on invalid data).
Place closed_point(const IntPoly& f);
Place prime_place(const BigInt& p);
Place circle_place(double t);
std::string render(const Place& w);

struct LogAbsValue {
  ExtReal value = 0;
  double error_bound = 0;
};

/// log|phi|_w.
LogAbsValue abs_value_log(const RatFunc& phi, const Place& w, const PrecisionConfig& cfg = {});

/// H(x) = exp m(F_x) for an irreducible primitive F_x; value is H, error bound absolute.
MeasureResult H_of_closed_point(const IntPoly& f, const PrecisionConfig& cfg = {});

struct ProductFormulaReport {
  MeasureResult total;    // closed_points + primes + circle
  double closed_points = 0;
  double primes = 0;
  double circle = 0;
};

/// Place-by-place evaluation of the integral of log|phi| over all places.
ProductFormulaReport product_formula(const RatFunc& phi, const TorusQuadratureConfig& cfg = default_torus_config(1));
MeasureResult product_formula_defect(const RatFunc& phi, const TorusQuadratureConfig& cfg = default_torus_config(1));

struct ProjectivePointQT {
  std::vector<RatFunc> coords;
};

/// Integral coordinates, coprime in Q[T] with coprime contents; the first
/// nonzero coordinate has a positive leading coefficient.
std::vector<IntPoly> canonicalize_pn(const std::vector<RatFunc>& coords);
std::pair<IntPoly, IntPoly> canonicalize_p1(const RatFunc& phi, const RatFunc& psi);

MeasureResult height_pn(const ProjectivePointQT& point, const TorusQuadratureConfig& cfg = default_torus_config(1));
MeasureResult height_p1(const ProjectivePointQT& point, const TorusQuadratureConfig& cfg = default_torus_config(1));

/// Element of an algebraic closure of Q(T) given by its minimal polynomial in x,
/// primitive in Z[T][x] and irreducible over Q(T).
class AlgebraicQT {
 public:
  explicit AlgebraicQT(BiPoly minpoly);
  const BiPoly& minpoly() const noexcept { return f_; }
  int degree() const noexcept { return f_.x_degree(); }

 private:
  BiPoly f_;
};

/// h_S(alpha) = m(f) / deg_x f with the two-variable measure of f.
MeasureResult height_algebraic(const AlgebraicQT& alpha, const TorusQuadratureConfig& cfg = default_torus_config(2));

struct NormalizationData {
  IntPoly f_d;  // constant term of phi's monic equation
  IntPoly g_e;  // constant term of psi's monic equation
  int d = 1;
  int e = 1;
  BigInt c = 1;
  IntPoly F{1};
};

/// Data for two elements given by monic integral equations in x over Z[T].
NormalizationData normalization_data(const BiPoly& phi_eq, const BiPoly& psi_eq);
/// Exact check that at every closed point dividing f_d g_e and every prime
/// dividing the contents, the larger of the two normalized log absolute values is 0.
bool finite_place_normalization_check(const NormalizationData& data);

/// One side of the pair handed to key2_defect: an element of Q(T) or an algebraic
/// element of degree at most 2.
using Key2Element = std::variant<RatFunc, AlgebraicQT>;

struct Key2Report {
  MeasureResult defect;   // rhs - lhs
  double lhs = 0;
  double rhs = 0;
  int extension_degree = 1;
  NormalizationData data;
};

/// RHS - LHS of the norm inequality. Supported: both elements in Q(T), or one in
/// Q(T) and the other of degree 2. Other shapes raise CapacityError.
Key2Report key2(const Key2Element& phi, const Key2Element& psi, const TorusQuadratureConfig& cfg = default_torus_config(2));
MeasureResult key2_defect(const Key2Element& phi, const Key2Element& psi,
                          const TorusQuadratureConfig& cfg = default_torus_config(2));

enum class KernelKind { root_of_unity, torsion_coset, positive_height, inconclusive };
std::string to_string(KernelKind k);

struct KernelClassification {
  KernelKind kind = KernelKind::inconclusive;
  int order = 0;                 // for root_of_unity
  MeasureResult height;          // computed h_S
  bool low_confidence = false;   // positive height reported from an inconclusive torsion test
  bool kernel_discrepancy = false;  // h_S = 0 for an element that is not a root of unity
  TorsionVerdict torsion;
};

KernelClassification kernel_classify(const Key2Element& alpha, const TorusQuadratureConfig& cfg = default_torus_config(2));

}  // namespace lehmer
