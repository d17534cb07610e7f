// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lehmer/adelic.hpp"
#include "lehmer/cyclotomic.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"
#include "lehmer/harness.hpp"
#include "lehmer/parser.hpp"

#ifndef LEHMERQT_PATH
#define LEHMERQT_PATH "lehmerqt"
#endif

using namespace lehmer;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<BigInt> v(static_cast<std::size_t>(deg) + 1);
  for (auto& x : v) x = c(rng);
  while (v.back() == 0) v.back() = c(rng);
  return IntPoly(std::move(v));
}

TorusQuadratureConfig tol(int nvars, double target) {
  TorusQuadratureConfig c = default_torus_config(nvars);
  c.target_abs_error = target;
  return c;
}

Key2Element element(const std::string& text) {
  if (text.rfind("root(", 0) == 0)
    return AlgebraicQT(as_bipoly(parse_expression(text.substr(5, text.size() - 6))).primitive());
  return as_ratfunc(parse_expression(text));
}

Outcome constant_heights() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> deg(1, 6);
  double worst = 0;
  int cases = 0;
  while (cases < 50) {
    IntPoly f = primitive_part(random_poly(rng, deg(rng), 20));
    if (f.lead() < 0) f = -f;
    if (!is_irreducible(f)) continue;
    ++cases;
    double weil = mahler_roots(f).value / f.degree();
    MeasureResult hs = height_algebraic(AlgebraicQT(BiPoly::from_x(f)), tol(2, 1e-11));
    worst = std::max(worst, std::fabs(hs.value - weil));
  }
  return {worst <= 1e-9, "50 polynomials, max |h_S - m/d| = " + sci(worst) + " (limit 1e-9)"};
}

Outcome properness() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> deg(0, 8);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    RatFunc phi(random_poly(rng, deg(rng), 50), random_poly(rng, deg(rng), 50));
    worst = std::max(worst, std::fabs(product_formula_defect(phi, tol(1, 1e-8)).value));
  }
  return {worst <= 1e-6, "100 elements of Q(T), max |defect| = " + sci(worst) + " (limit 1e-6)"};
}

Outcome kronecker_suite() {
  // Exact certificate for every product of at most three Phi_n (n <= 100) with a
  // sign and a power of x cycled across the products. The numeric measure of
  // each product is the sum of directly computed m(Phi_n); a seeded sample of
  // whole products is also measured directly.
  PrecisionConfig fast = precision_for_bits(53);
  std::vector<double> m(101);
  double worst = 0;
  for (int n = 1; n <= 100; ++n) {
    m[n] = mahler_roots(cyclotomic(n), fast).value;
    worst = std::max(worst, m[n]);
  }
  long products = 0, certified = 0;
  std::vector<std::vector<int>> all{{}};
  for (int a = 1; a <= 100; ++a) {
    all.push_back({a});
    for (int b = a; b <= 100; ++b) {
      all.push_back({a, b});
      for (int c = b; c <= 100; ++c) all.push_back({a, b, c});
    }
  }
  for (const auto& idx : all) {
    IntPoly f = IntPoly::monomial(products % 2 ? -1 : 1, static_cast<std::size_t>(products % 4));
    double sum = 0;
    for (int n : idx) {
      f = f * cyclotomic(n);
      sum += m[n];
    }
    ++products;
    TorsionVerdict v = is_cyclotomic_product(f);
    if (v.status == TorsionStatus::torsion && v.certificate && v.certificate->reconstruct() == BiPoly::from_x(f))
      ++certified;
    worst = std::max(worst, sum);
  }
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  double sampled = 0;
  for (int i = 0; i < 200; ++i) {
    IntPoly f{1};
    for (int n : all[pick(rng)]) f = f * cyclotomic(n);
    TorsionVerdict v = is_cyclotomic_product(f, true, fast);
    sampled = std::max(sampled, v.numeric_measure->value);
  }
  double zeta = 0;
  for (int n = 1; n <= 50; ++n)
    zeta = std::max(zeta, std::fabs(height_algebraic(AlgebraicQT(BiPoly::from_x(cyclotomic(n))), tol(2, 1e-11)).value));
  bool ok = certified == products && worst <= 1e-10 && sampled <= 1e-10 && zeta <= 1e-10;
  return {ok, std::to_string(certified) + "/" + std::to_string(products) + " certified, max numeric m = " +
                  sci(worst) + " (sampled whole products " + sci(sampled) + "), max |h_S(zeta_n)| = " + sci(zeta) +
                  " (limit 1e-10)"};
}

Outcome lehmer_record() {
  IntPoly L{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  auto eval = [&](long double x) {
    long double acc = 0;
    for (int k = L.degree(); k >= 0; --k) acc = acc * x + L[static_cast<std::size_t>(k)].get_d();
    return acc;
  };
  long double lo = 1.1L, hi = 1.3L;
  bool bracket = (eval(lo) < 0) != (eval(hi) < 0);
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    if ((eval(mid) < 0) == (eval(lo) < 0)) lo = mid;
    else hi = mid;
  }
  double oracle = static_cast<double>(std::log((lo + hi) / 2));
  double m = mahler_roots(L).value;
  double diff = std::fabs(m - oracle);
  bool ok = bracket && diff <= 1e-9 && std::fabs(m - 0.1623576120) <= 1e-9;
  return {ok, "m = " + format_real(m) + ", bisection log(root) = " + format_real(oracle) + ", diff " + sci(diff) +
                  " (limit 1e-9)"};
}

Outcome grid_cross_check() {
  const int n = 2000;
  const double tau = 2 * M_PI;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> y = std::polar(1.0, tau * (i + 0.5) / n);
    for (int j = 0; j < n; ++j) {
      std::complex<double> z = std::polar(1.0, tau * (j + 0.5) / n);
      sum += std::log(std::abs(1.0 + y + y * z));
    }
  }
  double grid = sum / (double(n) * n);
  ProjectivePointQT p{{RatFunc(IntPoly{1}), RatFunc(IntPoly{1, 1})}};
  double h = height_p1(p).value;
  double diff = std::fabs(h - grid);
  return {diff <= 1e-5, "h_S([1:T+1]) = " + format_real(h) + ", 2000x2000 grid " + format_real(grid) + ", diff " +
                            sci(diff) + " (limit 1e-5)"};
}

Outcome normalization() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> xdeg(1, 3), tdeg(0, 4);
  int passed = 0;
  for (int i = 0; i < 25; ++i) {
    std::vector<BiPoly> eqs;
    for (int k = 0; k < 2; ++k) {
      int d = xdeg(rng);
      std::vector<IntPoly> c;
      for (int j = 0; j < d; ++j) {
        IntPoly t = random_poly(rng, tdeg(rng), 9);
        if (j == 0 && t.is_zero()) t = IntPoly{1};
        c.push_back(t);
      }
      c.push_back(IntPoly{1});
      eqs.emplace_back(std::move(c));
    }
    if (finite_place_normalization_check(normalization_data(eqs[0], eqs[1]))) ++passed;
  }
  return {passed == 25, std::to_string(passed) + "/25 random monic pairs satisfy the exact check"};
}

Outcome key2_suite() {
  struct Case {
    std::string phi, psi;
    bool equality;
  };
  const std::vector<Case> cases = {
      {"2", "T", true},
      {"1", "root(x^2-(T+3))", true},
      {"1", "T", true},
      {"3", "T+1", true},
      {"1", "root(x^2-(T+5))", true},
      {"T^2", "7", true},
      {"T", "T+1", false},
      {"T+2", "T-3", false},
      {"T^2+T+1", "2T-1", false},
      {"1/(T+1)", "T", false},
      {"T+1", "root(x^2-T)", false},
      {"T", "root(x^2-T-1)", false},
      {"root(2x^2-T)", "T+1", false},
      {"T^3-2", "5T+1", false},
      {"(T-1)/(T+2)", "3", false},
      {"T^2-T-1", "T+1", false},
      {"root(x^2-T^3-1)", "T", false},
      {"2/3", "T^2+1", false},
      {"root(x^2-x-T)", "1", false},
      {"T+3", "root(x^2+T*x+1)", false},
  };
  int ok = 0;
  double worst_eq = 0, most_negative = 0;
  std::string failures;
  for (const auto& c : cases) {
    try {
      MeasureResult d = key2_defect(element(c.phi), element(c.psi));
      bool pass = d.value >= -d.error_bound;
      most_negative = std::min(most_negative, d.value + d.error_bound);
      if (c.equality) {
        worst_eq = std::max(worst_eq, std::fabs(d.value));
        pass = pass && std::fabs(d.value) <= 1e-6;
      }
      if (pass) ++ok;
      else failures += " [" + c.phi + ";" + c.psi + " defect " + sci(d.value) + "]";
    } catch (const std::exception& e) {
      failures += " [" + c.phi + ";" + c.psi + " " + e.what() + "]";
    }
  }
  return {ok == static_cast<int>(cases.size()),
          std::to_string(ok) + "/" + std::to_string(cases.size()) + " cases, max |defect| on equality cases " +
              sci(worst_eq) + " (limit 1e-6)" + failures};
}

Outcome dobrowolski_sweep() {
  HarnessConfig cfg;
  cfg.deg_max = 12;
  cfg.coeff_bound = 1;
  auto start = std::chrono::steady_clock::now();
  auto rows = scan(CorpusSpec{}, cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ScanSummary s = summarize(rows, cfg);
  bool ok = s.violations == 0 && s.errors == 0 && s.min_scaled >= 0.25 && secs <= 600;
  return {ok, std::to_string(s.rows) + " irreducible classes (" + std::to_string(s.rows - s.torsion_rows) +
                  " non-cyclotomic), min d h (log 3d/log log 3d)^3 = " + format_real(s.min_scaled) + " at " +
                  s.argmin + ", violations " + std::to_string(s.violations) + ", scan " + sci(secs) +
                  " s (limit 600 s)"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> deg(1, 12);
  int agree = 0;
  double worst_ratio = 0;
  for (int i = 0; i < 100; ++i) {
    IntPoly f = random_poly(rng, deg(rng), 10);
    MeasureResult r = mahler_roots(f), q = mahler_quadrature(f);
    double diff = std::fabs(r.value - q.value), allowed = r.error_bound + q.error_bound;
    if (diff <= allowed) ++agree;
    if (allowed > 0) worst_ratio = std::max(worst_ratio, diff / allowed);
  }
  return {agree == 100, std::to_string(agree) + "/100 agree within combined bounds, max diff/bound " + sci(worst_ratio)};
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(LEHMERQT_PATH) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  status = pclose(p);
  return out;
}

Outcome determinism() {
  const std::vector<std::string> configs = {
      "dobrowolski-scan --deg-max 8 --coeff-bound 1",
      "dobrowolski-scan --corpus random --count 60 --deg-max 10 --coeff-bound 4 --seed 11 --format csv",
  };
  int identical = 0;
  std::size_t bytes = 0;
  for (const auto& c : configs) {
    int s1 = 0, s2 = 0;
    std::string a = run_cli(c, s1), b = run_cli(c, s2);
    if (s1 == 0 && s2 == 0 && !a.empty() && a == b) ++identical;
    bytes += a.size();
  }
  return {identical == static_cast<int>(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " configurations byte-identical (" +
              std::to_string(bytes) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"height of constants matches the Weil height", constant_heights},
      {"properness of Q(T)", properness},
      {"Kronecker suite", kronecker_suite},
      {"Lehmer record", lehmer_record},
      {"[1:T+1] against a tensor grid", grid_cross_check},
      {"finite-place normalization", normalization},
      {"norm inequality", key2_suite},
      {"Dobrowolski sweep", dobrowolski_sweep},
      {"roots against quadrature", oracle_equivalence},
      {"determinism of dobrowolski-scan", determinism},
  };
  const std::map<int, double> limits = {{1, 30}, {2, 60}, {8, 600}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (auto it = limits.find(id); it != limits.end() && secs > it->second) {
      o.pass = false;
      o.detail += "; runtime over " + std::to_string(static_cast<int>(it->second)) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
