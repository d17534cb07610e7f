#include "lehmer/parser.hpp"

#include <array>
#include <cctype>
#include <map>
#include <optional>

#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

constexpr int kVars = 4;  // T, x, y, z
constexpr char kNames[kVars] = {'T', 'x', 'y', 'z'};
constexpr long kMaxExponent = 10000;

using Mono = std::array<int, kVars>;

// num / den with den a primitive polynomial in T with positive leading coefficient.
struct Value {
  std::map<Mono, Rational> num;
  IntPoly den{1};

  bool uses(int v) const {
    if (v == 0 && den.degree() > 0) return true;
    for (const auto& [m, c] : num)
      if (m[static_cast<std::size_t>(v)] != 0) return true;
    return false;
  }
  bool uses_only_t() const { return !uses(1) && !uses(2) && !uses(3); }
};

void add_term(std::map<Mono, Rational>& m, const Mono& e, const Rational& c) {
  auto [it, inserted] = m.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  } else if (c == 0) {
    m.erase(it);
  }
}

std::map<Mono, Rational> mul_maps(const std::map<Mono, Rational>& a, const std::map<Mono, Rational>& b) {
  std::map<Mono, Rational> r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Mono e;
      for (int i = 0; i < kVars; ++i) e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] + eb[static_cast<std::size_t>(i)];
      add_term(r, e, ca * cb);
    }
  return r;
}

std::map<Mono, Rational> from_t_poly(const IntPoly& p, const Rational& scale = Rational(1)) {
  std::map<Mono, Rational> r;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != 0) add_term(r, Mono{static_cast<int>(k), 0, 0, 0}, Rational(p[k]) * scale);
  return r;
}

Value constant(const Rational& c) {
  Value v;
  if (c != 0) v.num[Mono{0, 0, 0, 0}] = c;
  return v;
}

Value variable(int i) {
  Value v;
  Mono e{0, 0, 0, 0};
  e[static_cast<std::size_t>(i)] = 1;
  v.num[e] = 1;
  return v;
}

// Replaces den by its primitive part with positive leading coefficient.
void normalize_den(Value& v) {
  BigInt c = content(v.den);
  if (v.den.lead() < 0) c = -c;
  if (c != 1) {
    v.den = v.den.divide_scalar_exact(c);
    const Rational inv = Rational(1) / Rational(c);
    for (auto& [e, q] : v.num) q *= inv;
  }
}

Value add(const Value& a, const Value& b) {
  Value r;
  if (a.den == b.den) {
    r.num = a.num;
    for (const auto& [e, c] : b.num) add_term(r.num, e, c);
    r.den = a.den;
    return r;
  }
  r.num = mul_maps(a.num, from_t_poly(b.den));
  for (const auto& [e, c] : mul_maps(b.num, from_t_poly(a.den))) add_term(r.num, e, c);
  r.den = a.den * b.den;
  normalize_den(r);
  return r;
}

Value negate(Value a) {
  for (auto& [e, c] : a.num) c = -c;
  return a;
}

Value mul(const Value& a, const Value& b) {
  Value r;
  r.num = mul_maps(a.num, b.num);
  r.den = a.den * b.den;
  return r;
}

// Least common multiple of the coefficient denominators.
BigInt common_denominator(const std::map<Mono, Rational>& m) {
  BigInt l = 1;
  for (const auto& [e, c] : m) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

IntPoly t_poly_scaled(const std::map<Mono, Rational>& m, const BigInt& l) {
  int top = 0;
  for (const auto& [e, c] : m) top = std::max(top, e[0]);
  std::vector<BigInt> v(static_cast<std::size_t>(top) + 1);
  for (const auto& [e, c] : m) {
    Rational s = c * Rational(l);
    v[static_cast<std::size_t>(e[0])] = s.get_num();
  }
  return IntPoly(std::move(v));
}

// num = A / l with A in Z[T][x]; requires no y, z.
BiPoly bipoly_scaled(const std::map<Mono, Rational>& m, const BigInt& l) {
  int top = 0;
  for (const auto& [e, c] : m) top = std::max(top, e[1]);
  std::vector<IntPoly> xc(static_cast<std::size_t>(top) + 1);
  for (const auto& [e, c] : m) {
    Rational s = c * Rational(l);
    xc[static_cast<std::size_t>(e[1])] += IntPoly::monomial(s.get_num(), static_cast<std::size_t>(e[0]));
  }
  return BiPoly(std::move(xc));
}

std::map<Mono, Rational> from_bipoly(const BiPoly& b, const Rational& scale) {
  std::map<Mono, Rational> r;
  for (std::size_t i = 0; i < b.x_coeffs().size(); ++i) {
    const IntPoly& c = b.coeff(i);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) add_term(r, Mono{static_cast<int>(k), static_cast<int>(i), 0, 0}, Rational(c[k]) * scale);
  }
  return r;
}

Value divide(const Value& a, const Value& b, std::size_t pos) {
  if (b.num.empty()) throw ParseError(pos, "division by zero");
  if (b.uses_only_t()) {
    BigInt l = common_denominator(b.num);
    IntPoly bint = t_poly_scaled(b.num, l);
    Value r;
    r.num = mul_maps(a.num, from_t_poly(b.den, Rational(l)));
    r.den = a.den * bint;
    normalize_den(r);
    return r;
  }
  if (a.uses(2) || a.uses(3) || b.uses(2) || b.uses(3))
    throw ParseError(pos, "division by a polynomial in y or z is not supported");
  BigInt la = common_denominator(a.num), lb = common_denominator(b.num);
  BiPoly A = bipoly_scaled(a.num, la), B = bipoly_scaled(b.num, lb);
  IntPoly tc = B.t_content();
  auto Bp = divide_exact(B, BiPoly::from_t(tc));
  auto Q = divide_exact(A * (b.den * IntPoly::constant(lb)), *Bp);
  if (!Q) throw ParseError(pos, "division does not produce a polynomial");
  Value r;
  r.num = from_bipoly(*Q, Rational(1) / Rational(la));
  r.den = a.den * tc;
  normalize_den(r);
  return r;
}

Value power(const Value& a, long k, std::size_t pos) {
  if (k < 0) {
    if (!a.uses_only_t()) throw ParseError(pos, "negative exponent of a polynomial in x, y or z");
    return power(divide(constant(1), a, pos), -k, pos);
  }
  if (k > kMaxExponent) throw ParseError(pos, "exponent too large");
  Value r = constant(1), base = a;
  for (unsigned long e = static_cast<unsigned long>(k); e > 0; e >>= 1) {
    if (e & 1UL) r = mul(r, base);
    if (e > 1) base = mul(base, base);
  }
  return r;
}

enum class Tok { number, var, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t pos;
  BigInt number;
  int var = 0;
};

class Parser {
 public:
  Parser(const std::string& text, bool allow_yz) : s_(text), allow_yz_(allow_yz) { advance(); }

  Value parse() {
    Value v = expr();
    if (tok_.kind != Tok::end) throw ParseError(tok_.pos, "unexpected trailing input");
    return v;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok_ = Token{Tok::end, i_, 0, 0};
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      tok_.kind = Tok::number;
      tok_.number = BigInt(s_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    for (int v = 0; v < kVars; ++v)
      if (c == kNames[v]) {
        if (v >= 2 && !allow_yz_) throw ParseError(i_, std::string("variable '") + c + "' is only accepted by multivariate commands");
        tok_.kind = Tok::var;
        tok_.var = v;
        ++i_;
        return;
      }
    switch (c) {
      case '+': tok_.kind = Tok::plus; break;
      case '-': tok_.kind = Tok::minus; break;
      case '*': tok_.kind = Tok::star; break;
      case '/': tok_.kind = Tok::slash; break;
      case '^': tok_.kind = Tok::caret; break;
      case '(': tok_.kind = Tok::lparen; break;
      case ')': tok_.kind = Tok::rparen; break;
      default: throw ParseError(i_, std::string("unexpected character '") + c + "'");
    }
    ++i_;
  }

  Value expr() {
    Value v = term();
    while (tok_.kind == Tok::plus || tok_.kind == Tok::minus) {
      bool minus = tok_.kind == Tok::minus;
      advance();
      Value r = term();
      v = add(v, minus ? negate(r) : r);
    }
    return v;
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (tok_.kind == Tok::star) {
        advance();
        v = mul(v, unary());
      } else if (tok_.kind == Tok::slash) {
        std::size_t pos = tok_.pos;
        advance();
        v = divide(v, unary(), pos);
      } else if (tok_.kind == Tok::var || tok_.kind == Tok::lparen || tok_.kind == Tok::number) {
        if (tok_.kind == Tok::number) throw ParseError(tok_.pos, "missing operator before number");
        v = mul(v, power());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (tok_.kind == Tok::minus) {
      advance();
      return negate(unary());
    }
    if (tok_.kind == Tok::plus) {
      advance();
      return unary();
    }
    return power();
  }

  Value power() {
    Value base = primary();
    if (tok_.kind != Tok::caret) return base;
    std::size_t pos = tok_.pos;
    advance();
    long k = exponent();
    if (tok_.kind == Tok::caret) throw ParseError(tok_.pos, "chained exponent; use parentheses");
    return ::lehmer::power(base, k, pos);
  }

  long exponent() {
    bool paren = false, neg = false;
    if (tok_.kind == Tok::lparen) {
      paren = true;
      advance();
    }
    if (tok_.kind == Tok::minus) {
      neg = true;
      advance();
    }
    if (tok_.kind != Tok::number) throw ParseError(tok_.pos, "exponent must be an integer literal");
    if (tok_.number > kMaxExponent) throw ParseError(tok_.pos, "exponent too large");
    long k = tok_.number.get_si();
    advance();
    if (paren) {
      if (tok_.kind != Tok::rparen) throw ParseError(tok_.pos, "expected ')'");
      advance();
    }
    return neg ? -k : k;
  }

  Value primary() {
    switch (tok_.kind) {
      case Tok::number: {
        Value v = constant(Rational(tok_.number));
        advance();
        return v;
      }
      case Tok::var: {
        Value v = variable(tok_.var);
        advance();
        return v;
      }
      case Tok::lparen: {
        advance();
        Value v = expr();
        if (tok_.kind != Tok::rparen) throw ParseError(tok_.pos, "expected ')'");
        advance();
        return v;
      }
      case Tok::end: throw ParseError(tok_.pos, "unexpected end of input");
      default: throw ParseError(tok_.pos, "expected a number, variable or '('");
    }
  }

  const std::string& s_;
  bool allow_yz_;
  std::size_t i_ = 0;
  Token tok_{Tok::end, 0, 0, 0};
};

}  // namespace

Expression parse_expression(const std::string& text) {
  Value v = Parser(text, false).parse();
  if (!v.uses(1)) {
    BigInt l = common_denominator(v.num);
    IntPoly n = t_poly_scaled(v.num, l);
    return RatFunc(Rational(1) / Rational(l), n, v.den);
  }
  BigInt l = common_denominator(v.num);
  BiPoly a = bipoly_scaled(v.num, l);
  if (v.den.degree() > 0) {
    auto q = divide_exact(a, BiPoly::from_t(v.den));
    if (!q) throw ParseError(0, "expression in x is not a polynomial in T");
    a = std::move(*q);
  }
  if (l != 1) {
    BigInt c = a.integer_content();
    if (c % l != 0) throw ParseError(0, "expression in x has non-integral coefficients");
    std::vector<IntPoly> xc;
    for (const auto& p : a.x_coeffs()) xc.push_back(p.is_zero() ? p : p.divide_scalar_exact(l));
    a = BiPoly(std::move(xc));
  }
  if (a.is_constant_in_t()) return a.as_x_poly();
  return a;
}

MultiPoly parse_multivariate(const std::string& text, int nvars) {
  if (nvars < 1 || nvars > 3) throw DomainError("number of variables must be 1, 2 or 3");
  Value v = Parser(text, true).parse();
  if (v.den.degree() > 0) throw ParseError(0, "expression is not a polynomial");
  std::vector<int> present;
  for (int i = 0; i < kVars; ++i)
    if (v.uses(i)) present.push_back(i);
  if (static_cast<int>(present.size()) > nvars)
    throw ParseError(0, "expression has " + std::to_string(present.size()) + " variables, expected at most " + std::to_string(nvars));
  MultiPoly m;
  m.nvars = nvars;
  for (const auto& [e, c] : v.num) {
    if (c.get_den() != 1) throw ParseError(0, "expression has non-integral coefficients");
    std::vector<int> ex(static_cast<std::size_t>(nvars), 0);
    for (std::size_t s = 0; s < present.size(); ++s) ex[s] = e[static_cast<std::size_t>(present[s])];
    m.add_term(ex, c.get_num());
  }
  return m;
}

std::string render(const Expression& e) {
  if (auto p = std::get_if<IntPoly>(&e)) return render(*p, 'x');
  if (auto r = std::get_if<RatFunc>(&e)) return render(*r, 'T');
  return render(std::get<BiPoly>(e));
}

IntPoly as_univariate(const Expression& e) {
  if (auto p = std::get_if<IntPoly>(&e)) return *p;
  if (auto r = std::get_if<RatFunc>(&e)) return r->to_int_poly();
  const BiPoly& b = std::get<BiPoly>(e);
  if (b.x_degree() == 0) return b.constant_term();
  throw DomainError("expected a polynomial in one variable");
}

RatFunc as_ratfunc(const Expression& e) {
  if (auto r = std::get_if<RatFunc>(&e)) return *r;
  if (auto p = std::get_if<IntPoly>(&e)) {
    if (p->is_constant()) return RatFunc(*p);
    throw DomainError("expected an element of Q(T), got a polynomial in x");
  }
  throw DomainError("expected an element of Q(T), got a polynomial in x and T");
}

BiPoly as_bipoly(const Expression& e) {
  if (auto p = std::get_if<IntPoly>(&e)) return BiPoly::from_x(*p);
  if (auto r = std::get_if<RatFunc>(&e)) return BiPoly::from_t(r->to_int_poly());
  return std::get<BiPoly>(e);
}

}  // namespace lehmer
