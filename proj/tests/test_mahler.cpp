#include <cmath>
#include <random>

#include "doctest.h"
#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"
#include "lehmer/mahler.hpp"

using namespace lehmer;

namespace {

const IntPoly kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<BigInt> v(static_cast<std::size_t>(deg) + 1);
  for (auto& x : v) x = c(rng);
  if (v.back() == 0) v.back() = 1;
  return IntPoly(std::move(v));
}

// Midpoint tensor grid on [0,1)^2 for log|f(e^{2 pi i s}, e^{2 pi i t})|.
template <class F>
double grid_measure_2d(F f, int n) {
  double sum = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::complex<double> x = std::polar(1.0, 2 * M_PI * (i + 0.5) / n);
      std::complex<double> y = std::polar(1.0, 2 * M_PI * (j + 0.5) / n);
      sum += std::log(std::abs(f(x, y)));
    }
  return sum / (static_cast<double>(n) * n);
}

}  // namespace

TEST_CASE("mahler_roots examples") {
  auto a = mahler_roots(IntPoly{0, 5});
  CHECK(a.value == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  auto b = mahler_roots(IntPoly{1, 0, -1, 0, 1});
  CHECK(std::abs(b.value) <= b.error_bound + 1e-15);
  auto g = mahler_roots(IntPoly{-1, -1, 1});
  CHECK(std::abs(g.value - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-15);
  auto l = mahler_roots(kLehmer);
  CHECK(std::abs(l.value - 0.16235761200773814) < 1e-12);
  CHECK(l.error_bound < 1e-14);
  CHECK_THROWS_AS(mahler_roots(IntPoly{}), DomainError);
  CHECK(mahler_roots(IntPoly{}, {}, ZeroConvention::lenient).value == 0);
}

TEST_CASE("mahler_quadrature examples") {
  MultiPoly mono;
  mono.nvars = 2;
  mono.add_term({1, 3}, 1);
  auto m = mahler_quadrature(mono, default_torus_config(2));
  CHECK(std::abs(m.value) < 1e-12);

  MultiPoly f;
  f.nvars = 2;
  f.add_term({0, 0}, 1);
  f.add_term({1, 0}, 1);
  f.add_term({0, 1}, 1);
  auto q = mahler_quadrature(f, default_torus_config(2));
  double grid = grid_measure_2d([](auto x, auto y) { return 1.0 + x + y; }, 800);
  CHECK(std::abs(q.value - grid) <= q.error_bound + 2e-9);
  CHECK(std::abs(q.value - 0.3230659472194505) < 1e-6);

  auto r = mahler_quadrature(IntPoly{-2, 0, 1});
  auto s = mahler_roots(IntPoly{-2, 0, 1});
  CHECK(std::abs(r.value - std::log(2.0)) <= r.error_bound + s.error_bound);
  CHECK(r.error_bound <= 1e-10);
}

TEST_CASE("three-variable measure of 1 + x + y + z") {
  MultiPoly f;
  f.nvars = 3;
  f.add_term({0, 0, 0}, 1);
  f.add_term({1, 0, 0}, 1);
  f.add_term({0, 1, 0}, 1);
  f.add_term({0, 0, 1}, 1);
  auto q = mahler_quadrature(f, default_torus_config(3));
  // Smyth: 7 zeta(3) / (2 pi^2).
  CHECK(std::abs(q.value - 7 * 1.2020569031595942 / (2 * M_PI * M_PI)) <= 1e-4 + q.error_bound);
}

TEST_CASE("height_from_minpoly examples") {
  CHECK(height_from_minpoly(IntPoly{-2, 0, 1}, 2) == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(std::abs(height_from_minpoly(IntPoly{1, 1, 1, 1, 1, 1, 1}, 6)) < 1e-14);
  CHECK(std::abs(height_from_minpoly(kLehmer, 10) - 0.016235761200773814) < 1e-12);
  CHECK_THROWS_AS(height_from_minpoly(IntPoly{-1, 0, 1}, 2), DomainError);
}

TEST_CASE("multiplicativity, power substitution and nonnegativity") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    IntPoly f = random_poly(rng, 1 + i % 6, 9), g = random_poly(rng, 1 + i % 5, 9);
    if (f[0] == 0) f += IntPoly{1};
    auto mf = mahler_roots(f), mg = mahler_roots(g), mfg = mahler_roots(f * g);
    CHECK(std::abs(mfg.value - mf.value - mg.value) <= mf.error_bound + mg.error_bound + mfg.error_bound);
    CHECK(mf.value >= -mf.error_bound);
    for (unsigned k : {2U, 3U}) {
      auto mk = mahler_roots(f.compose_power(k));
      CHECK(std::abs(mk.value - mf.value) <= mk.error_bound + mf.error_bound);
    }
  }
}

TEST_CASE("roots and quadrature agree on random polynomials") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    IntPoly f = random_poly(rng, 1 + i % 12, 9);
    auto r = mahler_roots(f);
    auto q = mahler_quadrature(f);
    INFO(render(f), " roots=", r.value, " quad=", q.value, " qerr=", q.error_bound, " evals=", q.evaluations, " depth=", q.depth);
    CHECK(std::abs(r.value - q.value) <= r.error_bound + q.error_bound);
  }
}

TEST_CASE("height power rule") {
  std::mt19937_64 rng(33);
  int checked = 0;
  while (checked < 30) {
    IntPoly f = primitive_part(random_poly(rng, 1 + checked % 4, 7));
    if (f.degree() < 1 || !is_irreducible(f)) continue;
    for (unsigned n : {2U, 3U}) {
      IntPoly g = power_minpoly(f, n);
      double lhs = height_from_minpoly(g, g.degree());
      double rhs = n * height_from_minpoly(f, f.degree());
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + rhs));
    }
    ++checked;
  }
}

TEST_CASE("bivariate measure of x^2 - (T+3) is log 3") {
  BiPoly f(std::vector<IntPoly>{IntPoly{-3, -1}, IntPoly{}, IntPoly{1}});
  auto q = mahler_quadrature(MultiPoly::from_bipoly(f), default_torus_config(2));
  CHECK(std::abs(q.value - std::log(3.0)) <= q.error_bound + 1e-12);
}
