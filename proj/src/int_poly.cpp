#include "lehmer/int_poly.hpp"

#include <algorithm>

#include "bareiss.hpp"
#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

constexpr std::size_t kKroneckerThreshold = 24;

std::size_t max_bits(const std::vector<BigInt>& c) {
  std::size_t bits = 0;
  for (const auto& v : c) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
  return bits;
}

// Evaluates the coefficient vector at 2^slot (signed coefficients are fine).
BigInt pack(const std::vector<BigInt>& c, std::size_t slot) {
  BigInt acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), slot);
    acc += c[i];
  }
  return acc;
}

// Inverse of pack for balanced digits in (-2^(slot-1), 2^(slot-1)].
std::vector<BigInt> unpack(BigInt acc, std::size_t slot, std::size_t count) {
  std::vector<BigInt> out(count);
  BigInt half, digit;
  mpz_setbit(half.get_mpz_t(), slot - 1);
  for (std::size_t i = 0; i < count; ++i) {
    mpz_fdiv_r_2exp(digit.get_mpz_t(), acc.get_mpz_t(), slot);
    if (digit > half) mpz_submul_ui(digit.get_mpz_t(), half.get_mpz_t(), 2);
    acc -= digit;
    mpz_fdiv_q_2exp(acc.get_mpz_t(), acc.get_mpz_t(), slot);
    out[i] = digit;
  }
  return out;
}

std::vector<BigInt> mul_kronecker(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t log_terms = 1;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  const std::size_t slot = max_bits(a) + max_bits(b) + log_terms + 2;
  BigInt pa = pack(a, slot);
  BigInt prod;
  if (&a == &b) {
    prod = pa * pa;
  } else {
    prod = pa * pack(b, slot);
  }
  return unpack(std::move(prod), slot, a.size() + b.size() - 1);
}

std::vector<BigInt> mul_schoolbook(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return r;
}

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t k) {
  std::vector<BigInt> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t IntPoly::low_order() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k] == 0) ++k;
  return k;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (std::min(a.c_.size(), b.c_.size()) >= kKroneckerThreshold)
    return IntPoly(mul_kronecker(a.c_, b.c_));
  return IntPoly(mul_schoolbook(a.c_, b.c_));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const BigInt& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= s;
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

IntPoly IntPoly::reversed() const {
  std::vector<BigInt> r(c_.rbegin(), c_.rend());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_power(unsigned k) const {
  if (k == 0) throw DomainError("compose_power: exponent must be positive");
  if (c_.empty()) return {};
  std::vector<BigInt> r((c_.size() - 1) * k + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::negate_variable() const {
  IntPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

IntPoly IntPoly::shift_down(std::size_t k) const {
  if (k > low_order() && !c_.empty()) throw DomainError("shift_down: x^k does not divide");
  if (c_.empty()) return {};
  return IntPoly(std::vector<BigInt>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

IntPoly IntPoly::shift_up(std::size_t k) const {
  if (c_.empty()) return {};
  std::vector<BigInt> r(k);
  r.insert(r.end(), c_.begin(), c_.end());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::divide_scalar_exact(const BigInt& s) const {
  if (s == 0) throw DomainError("division by zero");
  IntPoly r = *this;
  for (auto& v : r.c_) {
    if (!mpz_divisible_p(v.get_mpz_t(), s.get_mpz_t()))
      throw DomainError("divide_scalar_exact: inexact division");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
  }
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::strong_ordering compare(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = a.size(); i-- > 0;) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

BigInt content(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  BigInt g = 0;
  for (const auto& v : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& f) {
  BigInt c = content(f);
  if (f.lead() < 0) c = -c;
  if (c == 1) return f;
  return f.divide_scalar_exact(c);
}

std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.is_zero()) return IntPoly{};
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<BigInt> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  std::vector<BigInt> q(r.size() - dg);
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt& top = r[i + dg];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), gc[dg].get_mpz_t())) return std::nullopt;
    mpz_divexact(q[i].get_mpz_t(), top.get_mpz_t(), gc[dg].get_mpz_t());
    for (std::size_t j = 0; j <= dg; ++j) mpz_submul(r[i + j].get_mpz_t(), q[i].get_mpz_t(), gc[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < dg; ++i)
    if (r[i] != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DomainError("pseudo-division by the zero polynomial");
  if (f.degree() < g.degree()) return {IntPoly{}, f};
  std::vector<BigInt> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  const BigInt& lc = gc[dg];
  std::vector<BigInt> q(r.size() - dg);
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt top = r[i + dg];
    for (auto& v : q) v *= lc;
    for (std::size_t j = 0; j < i + dg + 1; ++j) r[j] *= lc;
    q[i] += top;
    for (std::size_t j = 0; j <= dg; ++j) mpz_submul(r[i + j].get_mpz_t(), top.get_mpz_t(), gc[j].get_mpz_t());
  }
  r.resize(dg);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly gcd_q(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  IntPoly a = primitive_part(f);
  IntPoly b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntPoly::constant(1);
    IntPoly r = pseudo_divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? IntPoly{} : primitive_part(r);
  }
  return primitive_part(a);
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant with the zero polynomial");
  auto m = detail::sylvester_matrix(f.coeffs(), g.coeffs());
  return detail::bareiss_determinant(
      std::move(m), BigInt(1), [](const BigInt& v) { return v == 0; },
      [](const BigInt& a, const BigInt& b) {
        BigInt q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
      });
}

std::string render(const IntPoly& f, char var) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = f.size(); k-- > 0;) {
    const BigInt& c = f[k];
    if (c == 0) continue;
    if (c < 0) {
      out += '-';
    } else if (!first) {
      out += '+';
    }
    BigInt mag = abs(c);
    if (k == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) {
        out += mag.get_str();
        out += '*';
      }
      out += var;
      if (k > 1) {
        out += '^';
        out += std::to_string(k);
      }
    }
    first = false;
  }
  return out;
}

}  // namespace lehmer
