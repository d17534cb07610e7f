#include "lehmer/rat_func.hpp"

#include "lehmer/errors.hpp"

namespace lehmer {

RatFunc::RatFunc() : scalar_(0), num_(IntPoly::constant(1)), den_(IntPoly::constant(1)) {}

RatFunc::RatFunc(const Rational& c) : scalar_(c), num_(IntPoly::constant(1)), den_(IntPoly::constant(1)) {
  scalar_.canonicalize();
}

RatFunc::RatFunc(const IntPoly& p) : RatFunc(Rational(1), p, IntPoly::constant(1)) {}

RatFunc::RatFunc(const IntPoly& num, const IntPoly& den) : RatFunc(Rational(1), num, den) {}

RatFunc::RatFunc(Rational scalar, const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  scalar.canonicalize();
  if (num.is_zero() || scalar == 0) {
    *this = RatFunc();
    return;
  }
  BigInt cn = content(num);
  if (num.lead() < 0) cn = -cn;
  BigInt cd = content(den);
  if (den.lead() < 0) cd = -cd;
  IntPoly n = num.divide_scalar_exact(cn);
  IntPoly d = den.divide_scalar_exact(cd);
  Rational ratio(cn, cd);
  ratio.canonicalize();  // cd may be negative
  scalar_ = scalar * ratio;
  if (!d.is_constant()) {
    IntPoly g = gcd_q(n, d);
    if (!g.is_constant()) {
      n = *divide_exact(n, g);
      d = *divide_exact(d, g);
    }
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

IntPoly RatFunc::integer_numerator() const {
  return num_ * BigInt(scalar_.get_num());
}

IntPoly RatFunc::integer_denominator() const {
  return den_ * BigInt(scalar_.get_den());
}

IntPoly RatFunc::to_int_poly() const {
  if (is_zero()) return {};
  if (!den_.is_one() || scalar_.get_den() != 1)
    throw DomainError("rational function is not an integer polynomial");
  return integer_numerator();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.scalar_ = -r.scalar_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in Q(T)");
  return RatFunc(1 / scalar_, den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r(Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  IntPoly n = a.integer_numerator() * b.integer_denominator() + b.integer_numerator() * a.integer_denominator();
  IntPoly d = a.integer_denominator() * b.integer_denominator();
  return RatFunc(n, d);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.scalar_ * b.scalar_, a.num_ * b.num_, a.den_ * b.den_);
}

namespace {
std::complex<double> horner(const IntPoly& p, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i].get_d();
  return acc;
}
}  // namespace

std::complex<double> RatFunc::eval(std::complex<double> z) const {
  if (is_zero()) return 0;
  std::complex<double> d = horner(den_, z);
  if (d == 0.0) throw PoleError("evaluation at a pole of a rational function");
  return scalar_.get_d() * horner(num_, z) / d;
}

int multiplicity(const IntPoly& f, const IntPoly& x) {
  if (f.is_zero()) throw DomainError("multiplicity in the zero polynomial");
  if (x.degree() < 1) throw DomainError("multiplicity of a constant");
  int k = 0;
  IntPoly cur = f;
  const IntPoly px = primitive_part(x);
  while (cur.degree() >= px.degree()) {
    auto q = divide_exact(cur, px);
    if (!q) break;
    cur = std::move(*q);
    ++k;
  }
  return k;
}

int ord(const RatFunc& phi, const IntPoly& x) {
  if (phi.is_zero()) throw DomainError("ord of zero is +infinity");
  return multiplicity(phi.numerator(), x) - multiplicity(phi.denominator(), x);
}

long p_adic_valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw DomainError("p-adic valuation of zero");
  if (p < 2) throw DomainError("p-adic valuation needs p >= 2");
  BigInt r;
  return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long p_adic_valuation(const Rational& q, const BigInt& p) {
  if (q == 0) throw DomainError("p-adic valuation of zero");
  return p_adic_valuation(BigInt(q.get_num()), p) - p_adic_valuation(BigInt(q.get_den()), p);
}

namespace {
std::string wrap(const IntPoly& p, char var) {
  std::string s = render(p, var);
  int terms = 0;
  for (const auto& c : p.coeffs()) terms += (c != 0);
  if (terms > 1 || (terms == 1 && p.lead() != 1 && p.degree() > 0)) return "(" + s + ")";
  return s;
}
}  // namespace

std::string render(const RatFunc& f, char var) {
  if (f.is_zero()) return "0";
  IntPoly n = f.integer_numerator();
  IntPoly d = f.integer_denominator();
  if (d.is_one()) return render(n, var);
  return wrap(n, var) + "/" + wrap(d, var);
}

}  // namespace lehmer
