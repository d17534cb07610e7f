#include <random>

#include "doctest.h"
#include "lehmer/errors.hpp"
#include "lehmer/parser.hpp"

using namespace lehmer;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> c(-bound, bound);
  std::vector<BigInt> v(static_cast<std::size_t>(deg) + 1);
  for (auto& x : v) x = c(rng);
  if (v.back() == 0) v.back() = 1;
  return IntPoly(std::move(v));
}

std::size_t error_position(const std::string& s) {
  try {
    parse_expression(s);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("parser examples") {
  auto a = parse_expression("x^2-(T+3)");
  REQUIRE(std::holds_alternative<BiPoly>(a));
  const BiPoly& b = std::get<BiPoly>(a);
  CHECK(b.x_degree() == 2);
  CHECK(b.coeff(2) == IntPoly{1});
  CHECK(b.coeff(0) == IntPoly{-3, -1});

  auto r = parse_expression("(T^2-1)/(T-1)");
  REQUIRE(std::holds_alternative<RatFunc>(r));
  CHECK(std::get<RatFunc>(r) == RatFunc(IntPoly{1, 1}));

  auto l = parse_expression("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
  REQUIRE(std::holds_alternative<IntPoly>(l));
  CHECK(std::get<IntPoly>(l) == IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});

  CHECK(std::get<IntPoly>(parse_expression("-x^2")) == IntPoly{0, 0, -1});
  CHECK(std::get<IntPoly>(parse_expression("2x(x+1)")) == IntPoly{0, 2, 2});
  CHECK(std::get<IntPoly>(parse_expression("(x^2-1)/(x-1)")) == IntPoly{1, 1});
  CHECK(std::get<IntPoly>(parse_expression("(4x+2)/2")) == IntPoly{1, 2});
  CHECK(std::get<RatFunc>(parse_expression("T^-1")) == RatFunc(IntPoly{1}, IntPoly{0, 1}));
  CHECK(std::get<RatFunc>(parse_expression("1/2")) == RatFunc(Rational(1, 2)));
  CHECK(std::get<BiPoly>(parse_expression("(x^2-T^2)/(x-T)")) == BiPoly(std::vector<IntPoly>{IntPoly{0, 1}, IntPoly{1}}));
  CHECK(std::get<IntPoly>(parse_expression("x*(T+1)/(T+1)")) == IntPoly{0, 1});
}

TEST_CASE("parser errors carry positions") {
  CHECK(error_position("x^2+") == 4);
  CHECK(error_position("x + # 1") == 4);
  CHECK(error_position("(x+1") == 4);
  CHECK(error_position("x/(x+1)") == 1);
  CHECK(error_position("x^2^3") == 3);
  CHECK(error_position("1/0") == 1);
  CHECK(error_position("x/2") == 0);
  CHECK(error_position("x+y") == 2);
  CHECK(error_position("x^T") == 2);
  CHECK(error_position("") == 0);
}

TEST_CASE("multivariate parsing") {
  MultiPoly m = parse_multivariate("1+x+y", 2);
  CHECK(m.nvars == 2);
  CHECK(m.terms.size() == 3);
  CHECK(parse_multivariate("1+x+y+z", 3).terms.size() == 4);
  CHECK_THROWS_AS(parse_multivariate("1+x+y+z", 2), ParseError);
  CHECK(parse_multivariate("x^2-2", 1).terms.size() == 2);
}

TEST_CASE("render then parse round-trips") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 200; ++i) {
    IntPoly f = random_poly(rng, i % 9, 30);
    Expression e = f.degree() >= 1 ? Expression(f) : Expression(RatFunc(f));
    CHECK(parse_expression(render(e)) == e);

    IntPoly n = random_poly(rng, i % 5, 20), d = random_poly(rng, i % 4, 20);
    Expression r = RatFunc(Rational(1 + i % 3, 1 + i % 5), n, d);
    std::string s = render(r);
    INFO(s);
    CHECK(parse_expression(s) == r);

    std::vector<IntPoly> xc;
    for (int k = 0; k <= 1 + i % 3; ++k) xc.push_back(random_poly(rng, i % 3, 9));
    xc.back() = xc.back().is_zero() ? IntPoly{1} : xc.back();
    BiPoly b(xc);
    Expression be = b.is_constant_in_t() ? Expression(b.as_x_poly()) : Expression(b);
    INFO(render(be));
    CHECK(parse_expression(render(be)) == be);
  }
}
