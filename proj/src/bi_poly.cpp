#include "lehmer/bi_poly.hpp"

#include <algorithm>

#include "bareiss.hpp"
#include "lehmer/errors.hpp"

namespace lehmer {

BiPoly::BiPoly(std::vector<IntPoly> x_coeffs) : c_(std::move(x_coeffs)) { trim(); }

void BiPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::from_x(const IntPoly& f) {
  std::vector<IntPoly> c;
  c.reserve(f.size());
  for (const auto& v : f.coeffs()) c.push_back(v == 0 ? IntPoly{} : IntPoly::constant(v));
  return BiPoly(std::move(c));
}

BiPoly BiPoly::from_t(const IntPoly& f) {
  if (f.is_zero()) return {};
  return BiPoly(std::vector<IntPoly>{f});
}

int BiPoly::t_degree() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.degree());
  return d;
}

bool BiPoly::is_constant_in_t() const {
  return std::all_of(c_.begin(), c_.end(), [](const IntPoly& c) { return c.degree() <= 0; });
}

IntPoly BiPoly::as_x_poly() const {
  if (!is_constant_in_t()) throw DomainError("polynomial involves T");
  std::vector<BigInt> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.coeff(0));
  return IntPoly(std::move(v));
}

BigInt BiPoly::integer_content() const {
  if (is_zero()) throw DomainError("content of the zero polynomial");
  BigInt g = 0;
  for (const auto& c : c_)
    if (!c.is_zero()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), content(c).get_mpz_t());
  return g;
}

IntPoly BiPoly::t_content() const {
  if (is_zero()) throw DomainError("content of the zero polynomial");
  IntPoly g;
  for (const auto& c : c_) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive_part(c) : gcd_q(g, c);
    if (g.is_one()) break;
  }
  return g * integer_content();
}

bool BiPoly::is_primitive() const {
  return !is_zero() && t_content().is_one();
}

BiPoly BiPoly::primitive() const {
  IntPoly g = t_content();
  if (lead_x().lead() < 0) g = -g;
  std::vector<IntPoly> out;
  out.reserve(c_.size());
  for (const auto& c : c_) {
    if (c.is_zero()) {
      out.emplace_back();
      continue;
    }
    auto q = lehmer::divide_exact(c, g);
    if (!q) throw DomainError("internal: content does not divide coefficient");
    out.push_back(std::move(*q));
  }
  return BiPoly(std::move(out));
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  std::vector<IntPoly> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<IntPoly> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return BiPoly(std::move(c));
}

BiPoly operator*(const BiPoly& a, const IntPoly& t_poly) {
  std::vector<IntPoly> c;
  c.reserve(a.c_.size());
  for (const auto& v : a.c_) c.push_back(v * t_poly);
  return BiPoly(std::move(c));
}

BiPoly BiPoly::swap_variables() const {
  int td = t_degree();
  if (td < 0) return {};
  std::vector<std::vector<BigInt>> out(static_cast<std::size_t>(td) + 1, std::vector<BigInt>(c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j) out[j][i] = c_[i][j];
  std::vector<IntPoly> c;
  c.reserve(out.size());
  for (auto& row : out) c.emplace_back(std::move(row));
  return BiPoly(std::move(c));
}

IntPoly BiPoly::kronecker(int n) const {
  if (n <= x_degree()) throw DomainError("Kronecker substitution needs N > deg_x");
  if (is_zero()) return {};
  std::vector<BigInt> v(static_cast<std::size_t>(t_degree()) * static_cast<std::size_t>(n) + c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < c_[i].size(); ++j) v[j * static_cast<std::size_t>(n) + i] = c_[i][j];
  return IntPoly(std::move(v));
}

BiPoly BiPoly::from_kronecker(const IntPoly& g, int n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::vector<BigInt>> rows(un);
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (g[m] == 0) continue;
    auto& row = rows[m % un];
    if (row.size() <= m / un) row.resize(m / un + 1);
    row[m / un] = g[m];
  }
  std::vector<IntPoly> c;
  c.reserve(un);
  for (auto& r : rows) c.emplace_back(std::move(r));
  return BiPoly(std::move(c));
}

IntPoly BiPoly::specialize_t(const BigInt& t) const {
  std::vector<BigInt> v;
  v.reserve(c_.size());
  for (const auto& c : c_) v.push_back(c.eval(t));
  return IntPoly(std::move(v));
}

std::vector<std::complex<double>> BiPoly::specialize_t(std::complex<double> z) const {
  std::vector<std::complex<double>> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::complex<double> acc = 0;
    const auto& p = c_[i];
    for (std::size_t j = p.size(); j-- > 0;) acc = acc * z + p[j].get_d();
    v[i] = acc;
  }
  return v;
}

BiPoly BiPoly::shift(std::size_t t_shift, std::size_t x_shift) const {
  if (is_zero()) return {};
  std::vector<IntPoly> c(x_shift);
  for (const auto& v : c_) c.push_back(v.shift_up(t_shift));
  return BiPoly(std::move(c));
}

std::size_t BiPoly::t_low_order() const {
  std::size_t low = SIZE_MAX;
  for (const auto& c : c_)
    if (!c.is_zero()) low = std::min(low, c.low_order());
  return low == SIZE_MAX ? 0 : low;
}

std::size_t BiPoly::x_low_order() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) ++k;
  return k;
}

std::size_t BiPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& c : c_)
    for (const auto& v : c.coeffs()) n += (v != 0);
  return n;
}

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return BiPoly{};
  if (a.x_degree() < b.x_degree()) return std::nullopt;
  std::vector<IntPoly> r = a.x_coeffs();
  const auto& bc = b.x_coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<IntPoly> q(r.size() - db);
  for (std::size_t i = q.size(); i-- > 0;) {
    const IntPoly& top = r[i + db];
    if (top.is_zero()) continue;
    auto qi = divide_exact(top, bc[db]);
    if (!qi) return std::nullopt;
    for (std::size_t j = 0; j <= db; ++j) r[i + j] -= *qi * bc[j];
    q[i] = std::move(*qi);
  }
  for (std::size_t i = 0; i < db; ++i)
    if (!r[i].is_zero()) return std::nullopt;
  return BiPoly(std::move(q));
}

IntPoly resultant_x(const BiPoly& f, const BiPoly& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant with the zero polynomial");
  auto m = detail::sylvester_matrix(f.x_coeffs(), g.x_coeffs());
  return detail::bareiss_determinant(
      std::move(m), IntPoly::constant(1), [](const IntPoly& v) { return v.is_zero(); },
      [](const IntPoly& a, const IntPoly& b) {
        auto q = divide_exact(a, b);
        if (!q) throw DomainError("internal: inexact Bareiss division");
        return *q;
      });
}

std::string render(const BiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = f.x_coeffs().size(); i-- > 0;) {
    const IntPoly& c = f.coeff(i);
    if (c.is_zero()) continue;
    std::string xpart;
    if (i == 1) xpart = "x";
    if (i > 1) xpart = "x^" + std::to_string(i);
    std::size_t terms = 0;
    for (const auto& v : c.coeffs()) terms += (v != 0);
    if (terms == 1) {
      std::size_t k = c.low_order();
      const BigInt& v = c[k];
      out += v < 0 ? "-" : (first ? "" : "+");
      BigInt mag = abs(v);
      std::string body;
      if (mag != 1 || (k == 0 && i == 0)) body = mag.get_str();
      if (k > 0) {
        if (!body.empty()) body += '*';
        body += k == 1 ? std::string("T") : "T^" + std::to_string(k);
      }
      if (!xpart.empty()) {
        if (!body.empty()) body += '*';
        body += xpart;
      }
      out += body;
    } else {
      bool neg = c.lead() < 0;
      out += neg ? "-" : (first ? "" : "+");
      out += "(" + render(neg ? -c : c, 'T') + ")";
      if (!xpart.empty()) out += "*" + xpart;
    }
    first = false;
  }
  return out;
}

}  // namespace lehmer
