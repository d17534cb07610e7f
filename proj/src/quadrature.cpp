#include "lehmer/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "lehmer/roots.hpp"

namespace lehmer {

namespace {

// Kronrod 15-point nodes on [-1, 1] (non-negative half) and weights; the odd
// entries are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0, b = 0;
  double value = 0, error = 0;
  int depth = 0;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel gk15(const std::function<double(double)>& g, double a, double b, int depth, long& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = g(c);
  double k = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    double f1 = g(c - dx), f2 = g(c + dx);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  evals += 15;
  Panel p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  p.value = k * h;
  double err = std::abs((k - gauss) * h);
  // Rounding floor relative to the panel's magnitude.
  err += 50 * 2.2e-16 * std::abs(p.value);
  p.error = std::isfinite(err) ? err : HUGE_VAL;
  return p;
}

}  // namespace

QuadratureResult integrate_unit_interval(const std::function<double(double)>& g, std::vector<double> breaks,
                                         const AdaptiveOptions& opt) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  for (auto& b : breaks) b = std::clamp(b, 0.0, 1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double x, double y) { return y - x < 1e-15; }),
               breaks.end());
  if (breaks.back() < 1.0) breaks.back() = 1.0;

  QuadratureResult res;
  std::vector<std::pair<double, double>> seeds;
  const int base = std::max(1, opt.base_points);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (b <= a) continue;
    for (int k = 0; k < base; ++k) seeds.emplace_back(a + (b - a) * k / base, a + (b - a) * (k + 1) / base);
  }
  if (opt.may_vanish) {
    for (int level = 0; level < opt.pre_depth; ++level) {
      std::vector<std::pair<double, double>> next;
      for (auto [a, b] : seeds) {
        if (opt.may_vanish(a, b)) {
          double m = 0.5 * (a + b);
          next.emplace_back(a, m);
          next.emplace_back(m, b);
        } else {
          next.emplace_back(a, b);
        }
      }
      seeds.swap(next);
    }
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  std::vector<Panel> finished;
  double total_err = 0;
  for (auto [a, b] : seeds) {
    Panel p = gk15(g, a, b, 0, res.evaluations);
    total_err += p.error;
    heap.push(p);
  }
  while (!heap.empty() && total_err > opt.target) {
    if (res.evaluations >= opt.max_evaluations) break;
    Panel p = heap.top();
    heap.pop();
    if (p.depth >= opt.max_depth) {
      finished.push_back(p);
      continue;
    }
    double m = 0.5 * (p.a + p.b);
    Panel l = gk15(g, p.a, m, p.depth + 1, res.evaluations);
    Panel r = gk15(g, m, p.b, p.depth + 1, res.evaluations);
    total_err += l.error + r.error - p.error;
    res.max_depth = std::max(res.max_depth, p.depth + 1);
    heap.push(l);
    heap.push(r);
  }
  while (!heap.empty()) {
    finished.push_back(heap.top());
    heap.pop();
  }
  // Fixed summation order: by position, compensated.
  std::sort(finished.begin(), finished.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double sum = 0, comp = 0, err = 0;
  for (const auto& p : finished) {
    double y = p.value - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    err += p.error;
  }
  res.value = sum;
  res.error = err + 1e-16 * std::abs(sum);
  res.warning = !(err <= opt.target);
  return res;
}

std::vector<double> circle_root_parameters(const IntPoly& f, double band) {
  std::vector<double> ts;
  if (f.degree() < 1) return ts;
  PrecisionConfig cfg;
  cfg.working_bits = 53;
  cfg.target_radius = 1e-6;
  cfg.max_iterations = 200;
  std::vector<RootCluster> roots;
  try {
    roots = all_roots(f, cfg);
  } catch (const RootPrecisionError& e) {
    roots = e.best();
  } catch (const PrecisionError&) {
    return ts;
  }
  for (const auto& r : roots) {
    std::complex<double> c = r.disk.center();
    double m = std::abs(c);
    if (std::abs(m - 1) >= band) continue;
    double t = std::arg(c) / (2 * M_PI);
    if (t < 0) t += 1;
    if (t >= 1) t -= 1;
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace lehmer
