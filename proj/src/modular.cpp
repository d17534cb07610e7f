#include "modular.hpp"

#include <algorithm>

#include "lehmer/errors.hpp"

namespace lehmer::detail {

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1U;
  }
  return r;
}

u64 invm(u64 a, u64 p) {
  if (a % p == 0) throw DomainError("modular inverse of zero");
  return powm(a, p - 2, p);
}

ModPoly reduce(const IntPoly& f, u64 p) {
  ModPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
  trim(r);
  return r;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

ModPoly add(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = addm(r[i], b[i], p);
  trim(r);
  return r;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
  trim(r);
  return r;
}

ModPoly scale(const ModPoly& a, u64 s, u64 p) {
  ModPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], s, p);
  trim(r);
  return r;
}

ModPoly monic(const ModPoly& a, u64 p) {
  if (a.empty()) return a;
  return scale(a, invm(a.back(), p), p);
}

ModPoly derivative(const ModPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulm(a[i], i % p, p);
  trim(r);
  return r;
}

void divmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& q, ModPoly& r) {
  if (b.empty()) throw DomainError("polynomial division by zero modulo p");
  r = a;
  if (a.size() < b.size()) {
    q.clear();
    return;
  }
  const std::size_t db = b.size() - 1;
  const u64 inv = invm(b.back(), p);
  q.assign(a.size() - db, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    u64 c = mulm(r[i + db], inv, p);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i + j] = subm(r[i + j], mulm(c, b[j], p), p);
  }
  r.resize(db);
  trim(r);
  trim(q);
}

ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly q, r;
  divmod(a, b, p, q, r);
  return r;
}

ModPoly quo(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly q, r;
  divmod(a, b, p, q, r);
  return q;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

ModPoly ext_gcd(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& s, ModPoly& t) {
  ModPoly r0 = a, r1 = b;
  ModPoly s0{1}, s1{};
  ModPoly t0{}, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    divmod(r0, r1, p, q, r);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = s0;
    t = t0;
    return r0;
  }
  u64 inv = invm(r0.back(), p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
  return scale(r0, inv, p);
}

ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m, u64 p) {
  ModPoly result{1};
  result = rem(result, m, p);
  ModPoly b = rem(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
  }
  return result;
}

bool is_squarefree(const ModPoly& f, u64 p) {
  ModPoly d = derivative(f, p);
  if (d.empty()) return false;
  return deg(gcd(f, d, p)) == 0;
}

std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, int>> out;
  f = monic(f, p);
  const ModPoly x{0, 1};
  ModPoly h = x;
  const BigInt bp = static_cast<unsigned long>(p);
  int k = 0;
  while (deg(f) >= 2 * (k + 1)) {
    ++k;
    h = powmod(h, bp, f, p);
    ModPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      out.emplace_back(g, k);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

std::vector<ModPoly> equal_degree(const ModPoly& g, int k, u64 p, std::mt19937_64& rng) {
  if (deg(g) == k) return {monic(g, p)};
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(k));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = sub(powmod(a, e, g, p), ModPoly{1}, p);
    ModPoly d = gcd(g, b, p);
    if (deg(d) > 0 && deg(d) < deg(g)) {
      auto left = equal_degree(d, k, p, rng);
      auto right = equal_degree(quo(g, d, p), k, p, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<ModPoly> factor_squarefree(const ModPoly& f, u64 p, std::mt19937_64& rng) {
  std::vector<ModPoly> out;
  for (auto& [g, k] : distinct_degree(f, p)) {
    auto parts = equal_degree(g, k, p, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    constexpr u64 limit = 100000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      if (i > 2) out.push_back(i);
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace lehmer::detail
