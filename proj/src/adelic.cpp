#include "lehmer/adelic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"
#include "lehmer/quadrature.hpp"

namespace lehmer {

namespace {

ExtReal big_to_ext(const BigInt& b) { return ExtReal(b.get_str()); }

ExtReal rational_to_ext(const Rational& q) {
  return big_to_ext(q.get_num()) / big_to_ext(q.get_den());
}

double log_abs(const BigInt& b) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, b.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

// Prime factorization by trial division up to 10^6; a leftover cofactor must be
// a probable prime, otherwise CapacityError.
std::vector<std::pair<BigInt, int>> factor_integer(BigInt n) {
  std::vector<std::pair<BigInt, int>> out;
  n = abs(n);
  if (n == 0) throw DomainError("factorization of zero");
  for (unsigned long p = 2; p <= 1000000 && BigInt(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    int k = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      ++k;
    }
    out.emplace_back(BigInt(p), k);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) throw CapacityError("integer too large to factor: " + n.get_str());
    out.emplace_back(n, 1);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Polynomial in long double evaluated at e^{2 pi i t}.
class CircleEval {
 public:
  explicit CircleEval(const IntPoly& f) {
    for (const auto& c : f.coeffs()) c_.push_back(static_cast<long double>(c.get_d()));
  }
  long double abs_at(double t) const {
    const long double a = 2 * static_cast<long double>(M_PI) * t;
    std::complex<long double> z(std::cos(a), std::sin(a)), acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return std::abs(acc);
  }

 private:
  std::vector<long double> c_;
};

// z^n A(z) A(1/z) with n = deg A + pad; a polynomial with real coefficients equal
// to z^n |A(z)|^2 on the unit circle.
IntPoly circle_norm(const IntPoly& a, int n) {
  IntPoly r = a.reversed().shift_up(static_cast<std::size_t>(n - a.degree()));
  return a * r;
}

TorusQuadratureConfig one_dim(const TorusQuadratureConfig& cfg) {
  TorusQuadratureConfig c = default_torus_config(1);
  c.target_abs_error = std::min(cfg.target_abs_error, c.target_abs_error);
  c.max_depth = std::max(cfg.max_depth, c.max_depth);
  return c;
}

BiPoly linear_equation(const IntPoly& a) { return BiPoly(std::vector<IntPoly>{-a, IntPoly{1}}); }

Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// Distinct irreducible factors of a nonzero polynomial, sorted.
std::vector<IntPoly> irreducible_factors(const IntPoly& f) {
  std::vector<IntPoly> out;
  if (f.degree() < 1) return out;
  for (const auto& [g, e] : factor(f).factors) out.push_back(g);
  return out;
}

}  // namespace

Place closed_point(const IntPoly& f) {
  if (!is_irreducible(f)) throw DomainError("closed point polynomial must be primitive and irreducible");
  return ClosedPoint{f.lead() < 0 ? -f : f};
}

Place prime_place(const BigInt& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError("not a prime: " + p.get_str());
  return PrimePlace{p};
}

Place circle_place(double t) {
  if (!(t >= 0 && t < 1)) throw DomainError("circle parameter must lie in [0, 1)");
  return CirclePlace{t};
}

std::string render(const Place& w) {
  if (auto c = std::get_if<ClosedPoint>(&w)) return "closed:" + render(c->f, 'T');
  if (auto p = std::get_if<PrimePlace>(&w)) return "prime:" + p->p.get_str();
  std::ostringstream os;
  os.precision(17);
  os << "circle:" << std::get<CirclePlace>(w).t;
  return os.str();
}

LogAbsValue abs_value_log(const RatFunc& phi, const Place& w, const PrecisionConfig& cfg) {
  if (phi.is_zero()) throw DomainError("log absolute value of zero");
  LogAbsValue out;
  if (auto c = std::get_if<ClosedPoint>(&w)) {
    int k = ord(phi, c->f);
    if (k == 0) return out;
    MeasureResult m = mahler_roots(c->f, cfg);
    out.value = -k * ExtReal(m.value);
    out.error_bound = std::abs(k) * m.error_bound;
    return out;
  }
  if (auto p = std::get_if<PrimePlace>(&w)) {
    // Primitive numerator and denominator have Gauss norm 1.
    long v = p_adic_valuation(phi.scalar(), p->p);
    out.value = -v * log(big_to_ext(p->p));
    return out;
  }
  const double t = std::get<CirclePlace>(w).t;
  const ExtReal angle = 2 * boost::math::constants::pi<ExtReal>() * ExtReal(t);
  const ExtReal zr = cos(angle), zi = sin(angle);
  auto eval = [&](const IntPoly& f, ExtReal& scale) {
    ExtReal re = 0, im = 0;
    scale = 0;
    for (int k = f.degree(); k >= 0; --k) {
      ExtReal c = big_to_ext(f[static_cast<std::size_t>(k)]);
      ExtReal nr = re * zr - im * zi + c;
      im = re * zi + im * zr;
      re = nr;
      scale += abs(c);
    }
    return sqrt(re * re + im * im);
  };
  ExtReal sn = 0, sd = 0;
  ExtReal n = eval(phi.numerator(), sn);
  ExtReal d = eval(phi.denominator(), sd);
  const ExtReal eps = ldexp(ExtReal(1), -120);
  if (d <= eps * sd * (phi.denominator().degree() + 2)) throw PoleError("evaluation at a pole on the unit circle");
  if (n <= eps * sn * (phi.numerator().degree() + 2))
    throw DomainError("log absolute value at a zero on the unit circle");
  out.value = log(abs(rational_to_ext(phi.scalar()))) + log(n) - log(d);
  out.error_bound = static_cast<double>(eps * (phi.numerator().degree() + 2) * (sn / n + sd / d) + eps);
  return out;
}

MeasureResult H_of_closed_point(const IntPoly& f, const PrecisionConfig& cfg) {
  if (!is_irreducible(f)) throw DomainError("closed point polynomial must be primitive and irreducible");
  MeasureResult m = mahler_roots(f, cfg);
  MeasureResult h = m;
  h.value = std::exp(m.value);
  h.error_bound = h.value * std::expm1(m.error_bound) + 2.3e-16 * h.value;
  return h;
}

ProductFormulaReport product_formula(const RatFunc& phi, const TorusQuadratureConfig& cfg) {
  if (phi.is_zero()) throw DomainError("product formula of zero");
  ProductFormulaReport r;
  double err = 0;

  for (int side : {1, -1}) {
    const IntPoly& p = side > 0 ? phi.numerator() : phi.denominator();
    if (p.degree() < 1) continue;
    for (const auto& [g, e] : factor(p).factors) {
      MeasureResult m = mahler_roots(g);
      r.closed_points -= side * e * m.value;
      err += e * m.error_bound;
    }
  }

  const Rational& s = phi.scalar();
  for (int side : {1, -1}) {
    const BigInt n = side > 0 ? BigInt(s.get_num()) : BigInt(s.get_den());
    for (const auto& [p, k] : factor_integer(n)) r.primes -= side * k * log_abs(p);
  }
  err += 2.3e-16 * std::abs(r.primes) * 4;

  MeasureResult c = circle_log_integral({{phi.numerator(), 1.0}, {phi.denominator(), -1.0}}, one_dim(cfg));
  r.circle = c.value + log_abs(s.get_num()) - log_abs(s.get_den());
  err += c.error_bound;

  r.total = c;
  r.total.value = r.closed_points + r.primes + r.circle;
  r.total.error_bound = err + 2.3e-16 * (std::abs(r.closed_points) + std::abs(r.primes) + std::abs(r.circle)) * 4;
  return r;
}

MeasureResult product_formula_defect(const RatFunc& phi, const TorusQuadratureConfig& cfg) {
  return product_formula(phi, cfg).total;
}

std::vector<IntPoly> canonicalize_pn(const std::vector<RatFunc>& coords) {
  bool any = false;
  for (const auto& c : coords) any = any || !c.is_zero();
  if (!any) throw DomainError("projective point with all coordinates zero");

  std::vector<IntPoly> out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].is_zero()) continue;
    IntPoly a = coords[i].integer_numerator();
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (j != i && !coords[j].is_zero()) a *= coords[j].integer_denominator();
    out[i] = std::move(a);
  }
  IntPoly g;
  BigInt cont = 0;
  for (const auto& a : out) {
    if (a.is_zero()) continue;
    g = g.is_zero() ? primitive_part(a) : gcd_q(g, a);
  }
  for (auto& a : out) {
    if (a.is_zero()) continue;
    a = *divide_exact(a, g);
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), content(a).get_mpz_t());
  }
  bool flip = false;
  for (const auto& a : out)
    if (!a.is_zero()) {
      flip = a.lead() < 0;
      break;
    }
  for (auto& a : out) {
    if (a.is_zero()) continue;
    a = a.divide_scalar_exact(cont);
    if (flip) a = -a;
  }
  return out;
}

std::pair<IntPoly, IntPoly> canonicalize_p1(const RatFunc& phi, const RatFunc& psi) {
  auto v = canonicalize_pn({phi, psi});
  return {v[0], v[1]};
}

MeasureResult height_pn(const ProjectivePointQT& point, const TorusQuadratureConfig& cfg) {
  std::vector<IntPoly> a = canonicalize_pn(point.coords);
  std::vector<IntPoly> nz;
  for (auto& p : a)
    if (!p.is_zero()) nz.push_back(p);

  // Finite places: after canonicalization every closed point and every prime
  // sees coordinates without a common factor, so the contributions vanish exactly.
  IntPoly g = primitive_part(nz[0]);
  BigInt cont = content(nz[0]);
  for (const auto& p : nz) {
    g = gcd_q(g, p);
    mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), content(p).get_mpz_t());
  }
  if (g.degree() != 0 || cont != 1) throw Error("canonicalization left a common factor");

  MeasureResult res;
  res.method = MeasureMethod::quadrature;
  if (nz.size() == 1) return res;  // the point [..:1:..] has height 0

  std::vector<double> breaks;
  int n = 0;
  for (const auto& p : nz) n = std::max(n, p.degree());
  std::vector<IntPoly> norms;
  for (const auto& p : nz) norms.push_back(circle_norm(p, n));
  for (std::size_t i = 0; i < nz.size(); ++i)
    for (std::size_t j = i + 1; j < nz.size(); ++j) {
      IntPoly diff = norms[i] - norms[j];
      if (diff.is_zero()) continue;
      diff = diff.shift_down(diff.low_order());
      if (diff.degree() < 1) continue;
      auto t = circle_root_parameters(diff, 1e-3);
      breaks.insert(breaks.end(), t.begin(), t.end());
    }

  std::vector<CircleEval> ev;
  for (const auto& p : nz) ev.emplace_back(p);
  TorusQuadratureConfig c1 = one_dim(cfg);
  AdaptiveOptions opt;
  opt.target = c1.target_abs_error;
  opt.max_depth = c1.max_depth;
  opt.base_points = c1.base_points;
  auto q = integrate_unit_interval(
      [&ev](double t) {
        long double m = 0;
        for (const auto& e : ev) m = std::max(m, e.abs_at(t));
        return static_cast<double>(std::log(m));
      },
      breaks, opt);
  res.value = q.value;
  res.error_bound = q.error;
  res.evaluations = q.evaluations;
  res.depth = q.max_depth;
  res.warning = q.warning;
  return res;
}

MeasureResult height_p1(const ProjectivePointQT& point, const TorusQuadratureConfig& cfg) {
  if (point.coords.size() != 2) throw DomainError("height_p1 needs exactly two coordinates");
  return height_pn(point, cfg);
}

AlgebraicQT::AlgebraicQT(BiPoly minpoly) {
  if (minpoly.is_zero() || minpoly.x_degree() < 1) throw DomainError("minimal polynomial must have x-degree >= 1");
  if (!minpoly.is_primitive()) throw DomainError("minimal polynomial must be primitive in Z[T][x]");
  if (!is_irreducible_over_qt(minpoly)) throw DomainError("minimal polynomial is reducible over Q(T)");
  f_ = minpoly.primitive();
}

MeasureResult height_algebraic(const AlgebraicQT& alpha, const TorusQuadratureConfig& cfg) {
  MeasureResult m = mahler_quadrature(MultiPoly::from_bipoly(alpha.minpoly()), cfg);
  const int d = alpha.degree();
  m.value /= d;
  m.error_bound /= d;
  return m;
}

NormalizationData normalization_data(const BiPoly& phi_eq, const BiPoly& psi_eq) {
  if (!phi_eq.is_monic() || !psi_eq.is_monic() || phi_eq.x_degree() < 1 || psi_eq.x_degree() < 1)
    throw DomainError("normalization needs monic integral equations of positive degree");
  NormalizationData n;
  n.d = phi_eq.x_degree();
  n.e = psi_eq.x_degree();
  n.f_d = phi_eq.constant_term();
  n.g_e = psi_eq.constant_term();
  if (n.f_d.is_zero() || n.g_e.is_zero())
    throw DomainError("degenerate presentation: zero constant term");
  BigInt a, b;
  mpz_pow_ui(a.get_mpz_t(), content(n.f_d).get_mpz_t(), static_cast<unsigned long>(n.e));
  mpz_pow_ui(b.get_mpz_t(), content(n.g_e).get_mpz_t(), static_cast<unsigned long>(n.d));
  mpz_gcd(n.c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  n.F = IntPoly{1};
  IntPoly g = gcd_q(n.f_d, n.g_e);
  for (const auto& fx : irreducible_factors(g)) {
    int k = std::min(n.e * multiplicity(n.f_d, fx), n.d * multiplicity(n.g_e, fx));
    n.F *= fx.pow(static_cast<unsigned>(k));
  }
  return n;
}

bool finite_place_normalization_check(const NormalizationData& n) {
  const Rational de(n.d * n.e);
  auto both_ok = [](const Rational& a, const Rational& b) { return std::max(a, b) == 0; };

  std::vector<IntPoly> points;
  for (const IntPoly* p : {&n.f_d, &n.g_e, &n.F})
    for (auto& f : irreducible_factors(*p))
      if (std::find(points.begin(), points.end(), f) == points.end()) points.push_back(f);
  for (const auto& fx : points) {
    Rational k(multiplicity(n.F, fx));
    Rational a = frac(-multiplicity(n.f_d, fx), n.d) + k / de;
    Rational b = frac(-multiplicity(n.g_e, fx), n.e) + k / de;
    if (!both_ok(a, b)) return false;
  }

  if (content(n.F) != 1) return false;
  std::vector<BigInt> primes;
  for (const BigInt& v : {content(n.f_d), content(n.g_e), n.c})
    for (const auto& [p, k] : factor_integer(v))
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  for (const auto& p : primes) {
    Rational vc(p_adic_valuation(n.c, p));
    Rational a = frac(-p_adic_valuation(content(n.f_d), p), n.d) + vc / de;
    Rational b = frac(-p_adic_valuation(content(n.g_e), p), n.e) + vc / de;
    if (!both_ok(a, b)) return false;
  }
  return true;
}

namespace {

// An element of degree 1 over Q(T) given as AlgebraicQT, turned into a RatFunc.
std::optional<RatFunc> as_rational(const Key2Element& v) {
  if (auto r = std::get_if<RatFunc>(&v)) return *r;
  const BiPoly& f = std::get<AlgebraicQT>(v).minpoly();
  if (f.x_degree() != 1) return std::nullopt;
  return RatFunc(-f.coeff(0)) / RatFunc(f.coeff(1));
}

}  // namespace

Key2Report key2(const Key2Element& phi_in, const Key2Element& psi_in, const TorusQuadratureConfig& cfg) {
  auto rp = as_rational(phi_in), rq = as_rational(psi_in);
  const TorusQuadratureConfig c1 = one_dim(cfg);
  Key2Report rep;

  auto log_c = [](const BigInt& c) { return log_abs(c); };

  if (rp && rq) {
    if (rp->is_zero() || rq->is_zero()) throw DomainError("key2 needs nonzero coordinates");
    auto [a, b] = canonicalize_p1(*rp, *rq);
    rep.extension_degree = 1;
    rep.data = normalization_data(linear_equation(a), linear_equation(b));
    MeasureResult ia = circle_log_integral({{a, 1.0}, {rep.data.F, -1.0}}, c1);
    MeasureResult ib = circle_log_integral({{b, 1.0}, {rep.data.F, -1.0}}, c1);
    MeasureResult h = height_p1(ProjectivePointQT{{RatFunc(a), RatFunc(b)}}, c1);
    rep.lhs = std::max(ia.value, ib.value) - log_c(rep.data.c);
    rep.rhs = h.value;
    rep.defect = h;
    rep.defect.value = rep.rhs - rep.lhs;
    rep.defect.error_bound = h.error_bound + std::max(ia.error_bound, ib.error_bound) + 1e-15;
    return rep;
  }

  bool swapped = false;
  const Key2Element* alg = &psi_in;
  std::optional<RatFunc> rat = rp;
  if (!rp && rq) {
    swapped = true;
    alg = &phi_in;
    rat = rq;
  }
  if (!rat || std::get<AlgebraicQT>(*alg).degree() != 2)
    throw CapacityError("key2 supports two elements of Q(T), or one of Q(T) and one quadratic element");
  if (rat->is_zero()) throw DomainError("key2 needs nonzero coordinates");

  // [phi : psi] = [a N : a D psi] with beta = a D psi a root of x^2 + b D x + a c D^2.
  const BiPoly& m = std::get<AlgebraicQT>(*alg).minpoly();
  const IntPoly &qa = m.coeff(2), &qb = m.coeff(1), &qc = m.coeff(0);
  const IntPoly num = rat->integer_numerator(), den = rat->integer_denominator();
  IntPoly phi1 = qa * num;
  IntPoly g1 = qb * den, g2 = qa * qc * den * den;
  BiPoly beta_eq(std::vector<IntPoly>{g2, g1, IntPoly{1}});
  rep.extension_degree = 2;
  rep.data = swapped ? normalization_data(beta_eq, linear_equation(phi1)) : normalization_data(linear_equation(phi1), beta_eq);

  // N(phi1) = phi1^2, N(beta) = g2; both divided by c F.
  MeasureResult ia = circle_log_integral({{phi1, 2.0}, {rep.data.F, -1.0}}, c1);
  MeasureResult ib = circle_log_integral({{g2, 1.0}, {rep.data.F, -1.0}}, c1);

  // h_S([phi : psi]) = h_S(psi / phi); psi / phi = D psi / N has minpoly a N^2 y^2 + b N D y + c D^2.
  BiPoly ratio(std::vector<IntPoly>{qc * den * den, qb * num * den, qa * num * num});
  MeasureResult h = height_algebraic(AlgebraicQT(ratio.primitive()), cfg);
  rep.lhs = std::max(ia.value, ib.value) - log_c(rep.data.c);
  rep.rhs = 2 * h.value;
  rep.defect = h;
  rep.defect.value = rep.rhs - rep.lhs;
  rep.defect.error_bound = 2 * h.error_bound + std::max(ia.error_bound, ib.error_bound) + 1e-15;
  return rep;
}

MeasureResult key2_defect(const Key2Element& phi, const Key2Element& psi, const TorusQuadratureConfig& cfg) {
  return key2(phi, psi, cfg).defect;
}

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::root_of_unity: return "root_of_unity";
    case KernelKind::torsion_coset: return "torsion_coset";
    case KernelKind::positive_height: return "positive_height";
    case KernelKind::inconclusive: return "inconclusive";
  }
  return "?";
}

KernelClassification kernel_classify(const Key2Element& alpha, const TorusQuadratureConfig& cfg) {
  KernelClassification out;
  BiPoly f;
  if (auto r = std::get_if<RatFunc>(&alpha)) {
    if (r->is_zero()) throw DomainError("kernel_classify of zero");
    f = BiPoly(std::vector<IntPoly>{-r->integer_numerator(), r->integer_denominator()}).primitive();
    out.height = height_p1(ProjectivePointQT{{RatFunc(Rational(1)), *r}}, one_dim(cfg));
  } else {
    const auto& a = std::get<AlgebraicQT>(alpha);
    f = a.minpoly();
    out.height = height_algebraic(a, cfg);
  }

  if (f.is_constant_in_t()) {
    IntPoly g = f.as_x_poly();
    out.torsion = is_cyclotomic_product(g);
    if (auto n = root_of_unity_order(g)) {
      out.kind = KernelKind::root_of_unity;
      out.order = *n;
    } else {
      out.kind = KernelKind::positive_height;
    }
    return out;
  }

  out.torsion = bivariate_torsion_test(f, cfg);
  switch (out.torsion.status) {
    case TorsionStatus::torsion:
      out.kind = KernelKind::torsion_coset;
      out.kernel_discrepancy = true;
      break;
    case TorsionStatus::not_torsion:
      out.kind = KernelKind::positive_height;
      break;
    case TorsionStatus::inconclusive:
      if (out.height.value > out.height.error_bound + cfg.target_abs_error) {
        out.kind = KernelKind::positive_height;
        out.low_confidence = true;
      } else {
        out.kind = KernelKind::inconclusive;
      }
      break;
  }
  return out;
}

}  // namespace lehmer
