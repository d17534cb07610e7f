#include "lehmer/mahler.hpp"

#include <cmath>

#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"
#include "lehmer/quadrature.hpp"

namespace lehmer {

namespace {

constexpr double kTwoPi = 2 * M_PI;

double log_abs(const BigInt& v) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

struct RootSum {
  double value = 0;
  double error = 0;
  long clusters = 0;
};

RootSum outside_sum(const std::vector<RootCluster>& roots) {
  RootSum s;
  for (const auto& c : roots) {
    const double m = static_cast<double>(c.disk.center_abs());
    const double r = c.disk.radius;
    const double mult = c.multiplicity;
    ++s.clusters;
    if (m + r <= 1) continue;
    double v = m > 1 ? std::log(m) : 0.0;
    s.value += mult * v;
    s.error += mult * (2 * r / std::max(1.0, m - r) + 2.3e-16 * (1 + std::abs(v)));
  }
  return s;
}

MeasureResult zero_measure(ZeroConvention zero, MeasureMethod method) {
  if (zero == ZeroConvention::strict) throw DomainError("Mahler measure of the zero polynomial");
  MeasureResult r;
  r.method = method;
  return r;
}

std::complex<double> unit(double t) { return std::polar(1.0, kTwoPi * t); }

// |p(e^{2 pi i t})| by Horner in extended precision.
class Evaluator {
 public:
  Evaluator(const IntPoly& p, double weight) : weight_(weight) {
    a_.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      a_.push_back(static_cast<long double>(p[k].get_d()));
      lipschitz_ += kTwoPi * static_cast<double>(k) * std::abs(p[k].get_d());
    }
  }

  double abs_at(double t) const {
    const long double ang = 2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>(t);
    const long double zr = std::cos(ang), zi = std::sin(ang);
    long double pr = 0, pi = 0;
    for (std::size_t k = a_.size(); k-- > 0;) {
      long double nr = pr * zr - pi * zi + a_[k];
      pi = pr * zi + pi * zr;
      pr = nr;
    }
    return static_cast<double>(std::sqrt(pr * pr + pi * pi));
  }
  double lipschitz() const { return lipschitz_; }
  double weight() const { return weight_; }

 private:
  std::vector<long double> a_;
  double lipschitz_ = 0;
  double weight_;
};

}  // namespace

std::string to_string(MeasureMethod m) { return m == MeasureMethod::roots ? "roots" : "quadrature"; }

TorusQuadratureConfig default_torus_config(int nvars) {
  TorusQuadratureConfig c;
  c.target_abs_error = nvars <= 1 ? 1e-10 : nvars == 2 ? 1e-6 : 1e-4;
  if (nvars >= 3) c.max_depth = 30;
  return c;
}

void MultiPoly::add_term(std::vector<int> exponents, const BigInt& c) {
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(std::move(exponents), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

MultiPoly MultiPoly::from_int_poly(const IntPoly& f) {
  MultiPoly m;
  m.nvars = 1;
  for (std::size_t k = 0; k < f.size(); ++k) m.add_term({static_cast<int>(k)}, f[k]);
  return m;
}

MultiPoly MultiPoly::from_bipoly(const BiPoly& f) {
  MultiPoly m;
  m.nvars = 2;
  for (std::size_t i = 0; i < f.x_coeffs().size(); ++i)
    for (std::size_t j = 0; j < f.coeff(i).size(); ++j)
      m.add_term({static_cast<int>(j), static_cast<int>(i)}, f.coeff(i)[j]);
  return m;
}

std::vector<std::complex<double>> MultiPoly::inner_coefficients(
    const std::vector<std::complex<double>>& outer) const {
  int top = 0;
  for (const auto& [e, c] : terms) top = std::max(top, e.back());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(top) + 1);
  for (const auto& [e, c] : terms) {
    std::complex<double> v = c.get_d();
    for (std::size_t j = 0; j + 1 < e.size(); ++j) v *= std::pow(outer[j], e[j]);
    out[static_cast<std::size_t>(e.back())] += v;
  }
  return out;
}

MeasureResult mahler_roots(const IntPoly& f, const PrecisionConfig& cfg, ZeroConvention zero) {
  if (f.is_zero()) return zero_measure(zero, MeasureMethod::roots);
  MeasureResult res;
  res.method = MeasureMethod::roots;
  double value = log_abs(content(f));
  double error = 2.3e-16 * std::abs(value);

  IntPoly g = primitive_part(f);
  g = g.shift_down(g.low_order());
  if (g.degree() >= 1) {
    // Repeated factors would show up as clusters; measure each squarefree part once.
    std::vector<std::pair<IntPoly, int>> parts;
    if (is_squarefree(g)) parts.emplace_back(g, 1);
    else parts = squarefree_decomposition(g);
    for (const auto& [s, mult] : parts) {
      RootSum rs = outside_sum(all_roots(s, cfg));
      double lead = log_abs(s.lead());
      value += mult * (lead + rs.value);
      error += mult * (rs.error + 2.3e-16 * lead);
      res.evaluations += rs.clusters;
    }
  } else if (g.degree() == 0) {
    value += log_abs(g[0]);
  }
  res.value = value;
  res.error_bound = error + 2.3e-16 * std::abs(value);
  return res;
}

MeasureResult jensen_measure(std::vector<std::complex<double>> c) {
  MeasureResult res;
  res.method = MeasureMethod::roots;
  while (!c.empty() && c.back() == std::complex<double>(0, 0)) c.pop_back();
  std::size_t low = 0;
  while (low < c.size() && c[low] == std::complex<double>(0, 0)) ++low;
  if (c.empty()) {
    // The slice vanishes identically; log|0| is clamped.
    res.value = std::log(1e-300);
    res.warning = true;
    return res;
  }
  c.erase(c.begin(), c.begin() + static_cast<long>(low));
  // m is invariant under reversal; keep the larger end coefficient leading.
  if (std::abs(c.back()) < std::abs(c.front())) std::reverse(c.begin(), c.end());
  const double lead = std::log(std::abs(c.back()));
  if (c.size() == 1) {
    res.value = lead;
    return res;
  }
  if (c.size() == 2) {
    double m = std::abs(c[0] / c[1]);
    res.value = lead + (m > 1 ? std::log(m) : 0.0);
    res.error_bound = 1e-15 * (1 + std::abs(res.value));
    return res;
  }
  PrecisionConfig cfg;
  cfg.working_bits = 53;
  cfg.target_radius = 1e-9;
  cfg.max_iterations = 100;
  std::vector<RootCluster> roots;
  try {
    roots = all_roots(c, cfg);
  } catch (const RootPrecisionError& e) {
    roots = e.best();
    res.warning = true;
  }
  RootSum rs = outside_sum(roots);
  res.value = lead + rs.value;
  res.error_bound = rs.error + 1e-15 * (1 + std::abs(lead));
  return res;
}

MeasureResult circle_log_integral(const std::vector<std::pair<IntPoly, double>>& terms,
                                  const TorusQuadratureConfig& cfg) {
  if (cfg.target_abs_error <= 0) throw DomainError("target_abs_error must be positive");
  // Split every polynomial into content and squarefree parts so that the
  // integrand never evaluates a polynomial at one of its multiple roots.
  double constant = 0;
  std::vector<Evaluator> parts;
  std::vector<double> breaks;
  for (const auto& [p, w] : terms) {
    if (p.is_zero()) throw DomainError("log of the zero polynomial");
    if (w == 0) continue;
    constant += w * log_abs(content(p));
    IntPoly g = primitive_part(p);
    g = g.shift_down(g.low_order());
    if (g.degree() < 1) continue;
    std::vector<std::pair<IntPoly, int>> sq;
    if (is_squarefree(g)) sq.emplace_back(g, 1);
    else sq = squarefree_decomposition(g);
    for (const auto& [s, e] : sq) {
      parts.emplace_back(s, w * e);
      if (cfg.singularity_split) {
        auto t = circle_root_parameters(s);
        breaks.insert(breaks.end(), t.begin(), t.end());
      }
    }
  }

  MeasureResult res;
  res.method = MeasureMethod::quadrature;
  AdaptiveOptions opt;
  opt.max_depth = cfg.max_depth;
  opt.base_points = cfg.base_points;
  opt.target = cfg.target_abs_error;
  if (cfg.singularity_split)
    opt.may_vanish = [&parts](double lo, double hi) {
      const double mid = 0.5 * (lo + hi);
      for (const auto& e : parts)
        if (e.abs_at(mid) <= e.lipschitz() * 0.5 * (hi - lo)) return true;
      return false;
    };
  auto q = integrate_unit_interval(
      [&parts, constant](double t) {
        double acc = constant;
        for (const auto& e : parts) acc += e.weight() * std::log(std::max(e.abs_at(t), 1e-300));
        return acc;
      },
      breaks, opt);
  res.value = q.value;
  res.error_bound = q.error;
  res.evaluations = q.evaluations;
  res.depth = q.max_depth;
  res.warning = q.warning;
  return res;
}

MeasureResult mahler_quadrature(const IntPoly& f, const TorusQuadratureConfig& cfg, ZeroConvention zero) {
  return mahler_quadrature(MultiPoly::from_int_poly(f), cfg, zero);
}

MeasureResult mahler_quadrature(const MultiPoly& f, const TorusQuadratureConfig& cfg, ZeroConvention zero) {
  if (cfg.target_abs_error <= 0) throw DomainError("target_abs_error must be positive");
  if (f.nvars < 1 || f.nvars > 3) throw CapacityError("torus quadrature supports 1 to 3 variables");
  if (f.is_zero()) return zero_measure(zero, MeasureMethod::quadrature);

  MeasureResult res;
  res.method = MeasureMethod::quadrature;
  AdaptiveOptions opt;
  opt.max_depth = cfg.max_depth;
  opt.base_points = cfg.base_points;

  if (f.nvars == 1) {
    int top = 0;
    for (const auto& [e, c] : f.terms) top = std::max(top, e[0]);
    std::vector<BigInt> v(static_cast<std::size_t>(top) + 1);
    for (const auto& [e, c] : f.terms) v[static_cast<std::size_t>(e[0])] = c;
    return circle_log_integral({{IntPoly(std::move(v)), 1.0}}, cfg);
  }

  double inner_err = 0;
  bool inner_warn = false;
  long inner_evals = 0;
  auto jensen_at = [&](std::vector<std::complex<double>> outer) {
    MeasureResult j = jensen_measure(f.inner_coefficients(outer));
    inner_err = std::max(inner_err, j.error_bound);
    inner_warn = inner_warn || j.warning;
    ++inner_evals;
    return j.value;
  };

  // Break points where the leading or constant coefficient of the innermost
  // variable vanishes on the circle (only meaningful for two variables).
  std::vector<double> breaks;
  if (f.nvars == 2 && cfg.singularity_split) {
    int top = 0;
    for (const auto& [e, c] : f.terms) top = std::max(top, e[1]);
    std::vector<BigInt> lead, low;
    int low_deg = top;
    for (const auto& [e, c] : f.terms) low_deg = std::min(low_deg, e[1]);
    auto put = [](std::vector<BigInt>& dst, int k, const BigInt& c) {
      if (dst.size() <= static_cast<std::size_t>(k)) dst.resize(static_cast<std::size_t>(k) + 1);
      dst[static_cast<std::size_t>(k)] = c;
    };
    for (const auto& [e, c] : f.terms) {
      if (e[1] == top) put(lead, e[0], c);
      if (e[1] == low_deg) put(low, e[0], c);
    }
    for (auto* v : {&lead, &low}) {
      IntPoly p(*v);
      if (p.degree() >= 1) {
        auto t = circle_root_parameters(p.shift_down(p.low_order()), 1e-6);
        breaks.insert(breaks.end(), t.begin(), t.end());
      }
    }
  }

  QuadratureResult q;
  if (f.nvars == 2) {
    opt.target = cfg.target_abs_error;
    q = integrate_unit_interval([&](double t) { return jensen_at({unit(t)}); }, breaks, opt);
  } else {
    AdaptiveOptions inner = opt;
    inner.target = 0.5 * cfg.target_abs_error;
    inner.base_points = std::max(2, opt.base_points / 2);
    double worst_inner = 0;
    bool inner_q_warn = false;
    opt.target = 0.5 * cfg.target_abs_error;
    q = integrate_unit_interval(
        [&](double t1) {
          const std::complex<double> z1 = unit(t1);
          auto r = integrate_unit_interval([&](double t2) { return jensen_at({z1, unit(t2)}); }, {}, inner);
          worst_inner = std::max(worst_inner, r.error);
          inner_q_warn = inner_q_warn || r.warning;
          return r.value;
        },
        {}, opt);
    q.error += worst_inner;
    q.warning = q.warning || inner_q_warn;
  }
  res.value = q.value;
  res.error_bound = q.error + inner_err;
  res.evaluations = inner_evals;
  res.depth = q.max_depth;
  res.warning = q.warning || inner_warn;
  return res;
}

double height_from_minpoly(const IntPoly& f, int d) {
  if (f.is_zero() || f.degree() < 1) throw DomainError("minimal polynomial must have degree >= 1");
  if (d != f.degree()) throw DomainError("degree argument does not match the polynomial");
  if (content(f) != 1 || !is_irreducible(f)) throw DomainError("minimal polynomial must be primitive and irreducible");
  return mahler_roots(f).value / d;
}

}  // namespace lehmer
