#include <random>

#include "doctest.h"
#include "lehmer/roots.hpp"

using namespace lehmer;

namespace {

const IntPoly kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

// Sign-change bisection for the real root of the Lehmer polynomial in (1, 2),
// carried out in exact rational arithmetic.
mpq_class lehmer_root_bisect(int steps) {
  mpq_class lo = 1, hi = 2;
  auto eval = [](const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t k = kLehmer.size(); k-- > 0;) acc = acc * x + mpq_class(kLehmer[k]);
    return acc;
  };
  // f(1) = -1 < 0 and f(2) > 0.
  for (int i = 0; i < steps; ++i) {
    mpq_class mid = (lo + hi) / 2;
    if (eval(mid) < 0) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

int total_multiplicity(const std::vector<RootCluster>& r) {
  int s = 0;
  for (const auto& c : r) s += c.multiplicity;
  return s;
}

}  // namespace

TEST_CASE("x^2+1 has roots i and -i") {
  auto r = all_roots(IntPoly{1, 0, 1});
  REQUIRE(r.size() == 2);
  for (const auto& c : r) {
    CHECK(c.multiplicity == 1);
    CHECK(c.disk.radius <= 1e-30);
    CHECK(abs(c.disk.center_re) < 1e-30);
    CHECK(abs(abs(c.disk.center_im) - 1) < 1e-30);
  }
}

TEST_CASE("(x-1)^3 is a cluster of multiplicity 3") {
  auto r = all_roots(IntPoly{-1, 3, -3, 1});
  REQUIRE(r.size() == 1);
  CHECK(r[0].multiplicity == 3);
  CHECK(abs(r[0].disk.center_re - 1) <= r[0].disk.radius);
  CHECK(r[0].disk.radius < 1e-6);
}

TEST_CASE("Lehmer polynomial: ten roots and one real root above 1") {
  auto r = all_roots(kLehmer);
  CHECK(total_multiplicity(r) == 10);
  int outside = 0;
  ExtReal real_root;
  for (const auto& c : r) {
    CHECK(c.disk.radius <= 1e-30);
    if (c.disk.center_abs() > 1 + ExtReal(1e-6)) {
      ++outside;
      real_root = c.disk.center_re;
      CHECK(abs(c.disk.center_im) <= c.disk.radius);
    }
  }
  CHECK(outside == 1);
  mpq_class oracle = lehmer_root_bisect(120);
  ExtReal o = ExtReal(oracle.get_num().get_str()) / ExtReal(oracle.get_den().get_str());
  CHECK(abs(real_root - o) < ExtReal(1e-30));
  CHECK(std::abs(static_cast<double>(real_root) - 1.17628081825991) < 1e-13);
}

TEST_CASE("max_modulus examples") {
  PrecisionConfig cfg;
  auto e = max_modulus(IntPoly{-2, 0, 1}, cfg);
  ExtReal sqrt2 = sqrt(ExtReal(2));
  CHECK(e.lo <= sqrt2);
  CHECK(e.hi >= sqrt2);
  CHECK(e.hi - e.lo <= 2 * cfg.target_radius);

  IntPoly phi12{1, 0, -1, 0, 1};
  auto u = max_modulus(phi12, cfg);
  CHECK(u.lo <= 1);
  CHECK(u.hi >= 1);
  CHECK(u.hi - u.lo <= 2 * cfg.target_radius);

  auto g = max_modulus(IntPoly{-1, -1, 1}, cfg);
  ExtReal golden = (1 + sqrt(ExtReal(5))) / 2;
  CHECK(g.lo <= golden);
  CHECK(g.hi >= golden);
}

TEST_CASE("root count, conjugate symmetry and reconstruction on random inputs") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int t = 0; t < 40; ++t) {
    std::vector<BigInt> c(static_cast<std::size_t>(2 + t % 11));
    for (auto& v : c) v = coef(rng);
    if (c.back() == 0) c.back() = 3;
    IntPoly f(c);
    auto r = all_roots(f);
    REQUIRE(total_multiplicity(r) == f.degree());

    for (const auto& a : r) {
      bool matched = false;
      for (const auto& b : r) {
        ExtReal dr = a.disk.center_re - b.disk.center_re;
        ExtReal di = a.disk.center_im + b.disk.center_im;
        if (sqrt(dr * dr + di * di) <= ExtReal(a.disk.radius + b.disk.radius) + ExtReal(1e-25)) matched = true;
      }
      CHECK(matched);
    }

    // Rebuild lead * prod (x - c) in double and compare coefficients.
    std::vector<std::complex<double>> p{f.lead().get_d()};
    for (const auto& a : r)
      for (int m = 0; m < a.multiplicity; ++m) {
        std::vector<std::complex<double>> q(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
          q[i + 1] += p[i];
          q[i] -= p[i] * a.disk.center();
        }
        p = q;
      }
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(p[i] - f[i].get_d()) < 1e-8 * (1 + std::abs(f.lead().get_d())) * 1e3);
  }
}

TEST_CASE("double and extended coefficient entry points") {
  auto a = all_roots(std::vector<std::complex<double>>{{-2, 0}, {0, 0}, {1, 0}});
  REQUIRE(a.size() == 2);
  std::vector<ExtComplex> e{{ExtReal(-3), ExtReal(0)}, {ExtReal(0), ExtReal(0)}, {ExtReal(1), ExtReal(0)}};
  auto b = all_roots(e);
  REQUIRE(b.size() == 2);
  CHECK(abs(abs(b[1].disk.center_re) - sqrt(ExtReal(3))) <= ExtReal(b[1].disk.radius));
  PrecisionConfig fast;
  fast.working_bits = 53;
  fast.target_radius = 1e-10;
  auto c = all_roots(IntPoly{1, 1, 1, 1, 1}, fast);
  CHECK(c.size() == 4);
  CHECK(all_roots(IntPoly{0, 0, 1, 1}).size() == 2);
}
