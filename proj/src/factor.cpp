#include "lehmer/factor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lehmer/errors.hpp"
#include "modular.hpp"

namespace lehmer {

namespace {

using detail::ModPoly;
using detail::u64;
using ZPoly = std::vector<BigInt>;  // coefficients reduced into [0, m)

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const BigInt& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

ZPoly zlift(const ModPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  if (a.empty() || b.empty()) return {};
  IntPoly pa{std::vector<BigInt>(a)}, pb{std::vector<BigInt>(b)};
  return zreduce((pa * pb).coeffs(), m);
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zreduce(std::move(r), m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const BigInt& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zreduce(std::move(r), m);
}

// Division by a monic h modulo m.
void zdivmod_monic(const ZPoly& a, const ZPoly& h, const BigInt& m, ZPoly& q, ZPoly& r) {
  r = a;
  if (a.size() < h.size()) {
    q.clear();
    return;
  }
  const std::size_t dh = h.size() - 1;
  q.assign(a.size() - dh, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt c = r[i + dh];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dh; ++j) r[i + j] -= c * h[j];
  }
  r.resize(dh);
  r = zreduce(std::move(r), m);
  ztrim(q);
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
// Afterwards the same relations hold modulo m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const BigInt& m2) {
  ZPoly e = zsub(f, zmul(g, h, m2), m2);
  ZPoly q, r;
  zdivmod_monic(zmul(s, e, m2), h, m2, q, r);
  ZPoly g2 = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
  ZPoly h2 = zadd(h, r, m2);

  ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
  ZPoly c, d;
  zdivmod_monic(zmul(s, b, m2), h2, m2, c, d);
  s = zsub(s, d, m2);
  t = zsub(t, zadd(zmul(t, b, m2), zmul(c, g2, m2), m2), m2);
  g = std::move(g2);
  h = std::move(h2);
}

IntPoly symmetric(const ZPoly& a, const BigInt& m) {
  BigInt half = m / 2;
  std::vector<BigInt> v(a);
  for (auto& c : v) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  return IntPoly(std::move(v));
}

// Lifts the monic modular factorization f = lc(f) * prod u_i (mod p) to modulus m = p^(2^k).
std::vector<ZPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& u, u64 p, const BigInt& m) {
  std::vector<ZPoly> out;
  ZPoly rest = zreduce(f.coeffs(), m);
  const u64 lc = mpz_fdiv_ui(f.lead().get_mpz_t(), p);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    ModPoly gm{lc};
    for (std::size_t j = i + 1; j < u.size(); ++j) gm = detail::mul(gm, u[j], p);
    const ModPoly& hm = u[i];
    ModPoly sm, tm;
    detail::ext_gcd(gm, hm, p, sm, tm);
    sm = detail::rem(sm, hm, p);
    tm = detail::quo(detail::sub(ModPoly{1}, detail::mul(sm, gm, p), p), hm, p);

    ZPoly g = zlift(gm), h = zlift(hm), s = zlift(sm), t = zlift(tm);
    BigInt mod = static_cast<unsigned long>(p);
    while (mod < m) {
      mod *= mod;
      hensel_step(zreduce(rest, mod), g, h, s, t, mod);
    }
    out.push_back(std::move(h));
    rest = std::move(g);
  }
  // rest = lc(f) * u_last (mod m).
  BigInt inv;
  BigInt lead = f.lead();
  mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), m.get_mpz_t());
  ZPoly last(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) last[i] = rest[i] * inv;
  out.push_back(zreduce(std::move(last), m));
  return out;
}

std::vector<char> subset_sums(const std::vector<int>& degrees, int d) {
  std::vector<char> s(static_cast<std::size_t>(d) + 1, 0);
  s[0] = 1;
  for (int k : degrees)
    for (int v = d; v >= k; --v)
      if (s[static_cast<std::size_t>(v - k)]) s[static_cast<std::size_t>(v)] = 1;
  return s;
}

bool only_trivial(const std::vector<char>& s) {
  for (std::size_t v = 1; v + 1 < s.size(); ++v)
    if (s[v]) return false;
  return true;
}

bool good_prime(const IntPoly& f, u64 p, ModPoly& fp) {
  if (mpz_fdiv_ui(f.lead().get_mpz_t(), p) == 0) return false;
  fp = detail::reduce(f, p);
  return detail::is_squarefree(fp, p);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Irreducible factors of a squarefree primitive f with positive leading coefficient.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const int d = f.degree();
  if (d <= 1) return {f};

  std::vector<char> allowed(static_cast<std::size_t>(d) + 1, 1);
  u64 best_p = 0;
  std::size_t best_count = SIZE_MAX;
  int good = 0;
  for (u64 p : detail::small_primes()) {
    ModPoly fp;
    if (!good_prime(f, p, fp)) continue;
    std::vector<int> degrees;
    std::size_t count = 0;
    for (auto& [g, k] : detail::distinct_degree(fp, p)) {
      std::size_t n = static_cast<std::size_t>(detail::deg(g) / k);
      count += n;
      for (std::size_t i = 0; i < n; ++i) degrees.push_back(k);
    }
    if (count == 1) return {f};
    auto sums = subset_sums(degrees, d);
    for (std::size_t v = 0; v < allowed.size(); ++v) allowed[v] = static_cast<char>(allowed[v] && sums[v]);
    if (only_trivial(allowed)) return {f};
    if (count < best_count) {
      best_count = count;
      best_p = p;
    }
    if (++good >= 5) break;
  }
  if (best_p == 0) throw CapacityError("no suitable prime found for factorization");

  const u64 p = best_p;
  std::mt19937_64 rng(0x5eed + p);
  ModPoly fp = detail::reduce(f, p);
  std::vector<ModPoly> u = detail::factor_squarefree(detail::monic(fp, p), p, rng);
  std::sort(u.begin(), u.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });

  // Coefficients of a factor of f, scaled by lc(f), are below |lc| 2^d |f|_2.
  BigInt norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  BigInt norm = sqrt(norm2) + 1;
  BigInt bound = 2 * abs(f.lead()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(d));
  BigInt m = static_cast<unsigned long>(p);
  while (m <= bound) m *= m;

  std::vector<ZPoly> lifted = hensel_lift(f, u, p, m);

  std::vector<IntPoly> found;
  IntPoly rest = f;
  std::vector<std::size_t> active(lifted.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  std::size_t s = 1;
  while (2 * s <= active.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    do {
      int dsum = 0;
      for (std::size_t i : idx) dsum += static_cast<int>(lifted[active[i]].size()) - 1;
      if (!allowed[static_cast<std::size_t>(dsum)]) continue;
      const BigInt& a = rest.lead();
      // Constant term test before the full product.
      BigInt c0 = a;
      for (std::size_t i : idx) c0 = c0 * lifted[active[i]][0] % m;
      IntPoly c0p = symmetric(ZPoly{c0}, m);
      BigInt g0 = c0p.is_zero() ? BigInt(0) : c0p[0];
      BigInt target = a * rest[0];
      if (g0 == 0 || target % g0 != 0) continue;

      ZPoly prod{a};
      for (std::size_t i : idx) prod = zmul(prod, lifted[active[i]], m);
      IntPoly cand = primitive_part(symmetric(prod, m));
      auto q = divide_exact(rest, cand);
      if (!q) continue;
      found.push_back(cand);
      rest = *q;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0, j = 0; i < active.size(); ++i) {
        if (j < idx.size() && idx[j] == i) {
          ++j;
          continue;
        }
        keep.push_back(active[i]);
      }
      active = std::move(keep);
      hit = true;
      break;
    } while (next_combination(idx, active.size()));
    if (!hit) ++s;
  }
  if (rest.degree() >= 1) found.push_back(primitive_part(rest));
  return found;
}

void check_capacity(int degree, int cap) {
  if (degree > cap)
    throw CapacityError("degree " + std::to_string(degree) + " exceeds the factorization cap " +
                        std::to_string(cap));
}

// Squarefreeness over Q follows from squarefreeness modulo a prime not dividing the lead.
bool quick_squarefree(const IntPoly& f) {
  int tries = 0;
  for (u64 p : detail::small_primes()) {
    if (mpz_fdiv_ui(f.lead().get_mpz_t(), p) == 0) continue;
    if (detail::is_squarefree(detail::reduce(f, p), p)) return true;
    if (++tries >= 3) break;
  }
  return false;
}

}  // namespace

IntPoly Factorization::reconstruct() const {
  IntPoly r = IntPoly::constant(integer_content * unit);
  for (const auto& [g, e] : factors) r *= g.pow(static_cast<unsigned>(e));
  return r;
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree decomposition of zero");
  IntPoly g = primitive_part(f);
  std::vector<std::pair<IntPoly, int>> out;
  if (g.degree() < 1) return out;
  if (quick_squarefree(g)) {
    out.emplace_back(g, 1);
    return out;
  }
  IntPoly c = gcd_q(g, g.derivative());
  IntPoly w = primitive_part(*divide_exact(g, c));
  int i = 1;
  while (c.degree() >= 1) {
    IntPoly y = gcd_q(w, c);
    IntPoly z = primitive_part(*divide_exact(w, y));
    if (z.degree() >= 1) out.emplace_back(z, i);
    ++i;
    w = y;
    c = primitive_part(*divide_exact(c, y));
  }
  if (w.degree() >= 1) out.emplace_back(w, i);
  return out;
}

bool is_squarefree(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("squarefreeness of zero");
  if (f.degree() < 2) return true;
  IntPoly g = primitive_part(f);
  if (quick_squarefree(g)) return true;
  auto sq = squarefree_decomposition(g);
  return sq.size() == 1 && sq[0].second == 1;
}

Factorization factor(const IntPoly& f, int degree_cap) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  check_capacity(f.degree(), degree_cap);
  Factorization out;
  out.unit = f.lead() < 0 ? -1 : 1;
  out.integer_content = content(f);
  IntPoly g = primitive_part(f);
  if (std::size_t k = g.low_order(); k > 0) {
    out.factors.emplace_back(IntPoly::variable(), static_cast<int>(k));
    g = g.shift_down(k);
  }
  if (g.degree() >= 1) {
    for (const auto& [s, mult] : squarefree_decomposition(g))
      for (auto& h : zassenhaus(s)) out.factors.emplace_back(std::move(h), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    auto c = compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

bool is_irreducible(const IntPoly& f, int degree_cap) {
  if (f.is_zero() || f.degree() < 1) return false;
  if (content(f) != 1) return false;
  if (f.degree() == 1) return true;
  if (f[0] == 0) return false;
  check_capacity(f.degree(), degree_cap);
  IntPoly g = primitive_part(f);
  if (!quick_squarefree(g)) {
    auto sq = squarefree_decomposition(g);
    if (sq.size() != 1 || sq[0].second != 1) return false;
  }
  return zassenhaus(g).size() == 1;
}

bool is_irreducible_over_qt(const BiPoly& f, int degree_cap) {
  if (f.is_zero() || f.x_degree() < 1) return false;
  BiPoly g = f.primitive();
  const int d = g.x_degree();
  if (d == 1) return true;
  if (g.x_low_order() > 0) return false;
  if (g.is_constant_in_t()) return is_irreducible(primitive_part(g.as_x_poly()), degree_cap);
  check_capacity(d, degree_cap);

  // An irreducible specialization of full degree proves irreducibility.
  static const long kPoints[] = {2, 3, -2, 5, 7, -3, 11, 13, -5, 17};
  for (long t : kPoints) {
    IntPoly s = g.specialize_t(BigInt(t));
    if (s.degree() != d) continue;
    if (is_irreducible(primitive_part(s), degree_cap)) return true;
  }

  // Kronecker substitution: every factor of g maps to a product of factors of g(x^N, x).
  const int n = d + 1;
  IntPoly k = g.kronecker(n);
  check_capacity(k.degree(), degree_cap);
  Factorization fk = factor(k, degree_cap);
  std::vector<IntPoly> pieces;
  for (const auto& [h, e] : fk.factors)
    for (int i = 0; i < e; ++i) pieces.push_back(h);
  if (pieces.size() > 20) throw CapacityError("too many Kronecker factors to recombine");
  const std::size_t r = pieces.size();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << r); ++mask) {
    IntPoly prod = IntPoly::constant(1);
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1U) prod *= pieces[i];
    BiPoly cand = BiPoly::from_kronecker(prod, n);
    if (cand.x_degree() < 1 || cand.x_degree() >= d) continue;
    if (divide_exact(g, cand)) return false;
  }
  return true;
}

IntPoly power_minpoly(const IntPoly& f, unsigned n) {
  if (n == 0) throw DomainError("power_minpoly needs a positive exponent");
  if (!is_irreducible(primitive_part(f))) throw DomainError("power_minpoly needs an irreducible polynomial");
  IntPoly g = primitive_part(f);
  if (n == 1) return g;
  // Res_y(g(y), y^n - x), a polynomial in x (stored in the T slot).
  std::vector<IntPoly> rows(n + 1);
  rows[0] = -IntPoly::variable();
  rows[n] = IntPoly::constant(1);
  IntPoly r = resultant_x(BiPoly::from_x(g), BiPoly(std::move(rows)));
  auto sq = squarefree_decomposition(r);
  IntPoly out = IntPoly::constant(1);
  for (const auto& [s, e] : sq) out *= s;
  return primitive_part(out);
}

}  // namespace lehmer
