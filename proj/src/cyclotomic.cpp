#include "lehmer/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"

namespace lehmer {

namespace {

std::mutex g_cyclo_mutex;
std::map<int, std::unique_ptr<IntPoly>> g_cyclo;

IntPoly build_cyclotomic(int n) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
  IntPoly q = IntPoly::monomial(1, static_cast<std::size_t>(n)) - IntPoly{1};
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto r = divide_exact(q, cyclotomic(d));
    q = std::move(*r);
  }
  return q;
}

// Coefficient bound for a degree-d polynomial with all roots on the unit circle.
std::vector<BigInt> binomial_row(int d) {
  std::vector<BigInt> row(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) mpz_bin_uiui(row[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
  return row;
}

bool within_unit_circle_bound(const IntPoly& g, const std::vector<BigInt>& row) {
  for (std::size_t k = 0; k < g.size(); ++k)
    if (abs(g[k]) > row[k]) return false;
  return true;
}

std::complex<double> eval_at(const IntPoly& g, std::complex<double> z, double& scale) {
  std::complex<double> acc = 0;
  scale = 0;
  for (int k = g.degree(); k >= 0; --k) {
    double c = g[static_cast<std::size_t>(k)].get_d();
    acc = acc * z + c;
    scale += std::abs(c);
  }
  return acc;
}

// Peels Phi_n factors off a monic cyclotomic product in increasing n. Each
// candidate is screened by evaluating at exp(2 pi i / n) and confirmed by exact
// division, so the resulting list reconstructs g exactly.
std::vector<CosetFactor> peel_cyclotomic(IntPoly g) {
  std::vector<CosetFactor> out;
  int limit = 7 * g.degree() + 10;
  for (int n = 1; n <= limit && g.degree() > 0; ++n) {
    int ph = euler_phi(n);
    if (ph > g.degree()) continue;
    int mult = 0;
    for (;;) {
      if (ph > g.degree()) break;
      double scale = 0;
      std::complex<double> v = eval_at(g, std::polar(1.0, 2 * M_PI / n), scale);
      if (std::abs(v) > 1e-6 * scale) break;
      auto q = divide_exact(g, cyclotomic(n));
      if (!q) break;
      g = std::move(*q);
      ++mult;
    }
    if (mult > 0) out.push_back(CosetFactor{n, 0, 1, 1, mult});
  }
  if (g.degree() != 0) throw Error("cyclotomic certificate search did not terminate");
  return out;
}

}  // namespace

int euler_phi(int n) {
  if (n < 1) throw DomainError("euler_phi: n must be positive");
  int r = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

const IntPoly& cyclotomic(int n) {
  if (n < 1) throw DomainError("cyclotomic: n must be positive");
  {
    std::lock_guard<std::mutex> lk(g_cyclo_mutex);
    auto it = g_cyclo.find(n);
    if (it != g_cyclo.end()) return *it->second;
  }
  IntPoly p = n == 1 ? IntPoly{-1, 1} : build_cyclotomic(n);
  std::lock_guard<std::mutex> lk(g_cyclo_mutex);
  auto [it, inserted] = g_cyclo.emplace(n, std::make_unique<IntPoly>(std::move(p)));
  return *it->second;
}

std::string to_string(TorsionStatus s) {
  switch (s) {
    case TorsionStatus::torsion: return "torsion";
    case TorsionStatus::not_torsion: return "not_torsion";
    case TorsionStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

BiPoly CosetFactor::cleared() const {
  const IntPoly& phi = cyclotomic(n);
  int deg = phi.degree();
  int t_shift = t_exp < 0 ? -t_exp * deg : 0;
  int xdeg = x_exp * deg;
  std::vector<IntPoly> xc(static_cast<std::size_t>(std::max(xdeg, 0)) + 1);
  for (int k = 0; k <= deg; ++k) {
    BigInt c = phi[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (sign < 0 && k % 2 == 1) c = -c;
    auto te = static_cast<std::size_t>(t_exp * k + t_shift);
    auto xe = static_cast<std::size_t>(x_exp * k);
    xc[xe] += IntPoly::monomial(c, te);
  }
  return BiPoly(std::move(xc));
}

BiPoly TorsionCertificate::reconstruct() const {
  BiPoly r = BiPoly::from_t(IntPoly{unit});
  r = r.shift(static_cast<std::size_t>(monomial_t), static_cast<std::size_t>(monomial_x));
  for (const auto& f : factors) {
    BiPoly c = f.cleared();
    for (int i = 0; i < f.multiplicity; ++i) r = r * c;
  }
  return r;
}

IntPoly graeffe(const IntPoly& f) {
  std::vector<BigInt> e, o;
  for (std::size_t k = 0; k < f.size(); ++k) (k % 2 == 0 ? e : o).push_back(f[k]);
  IntPoly E(std::move(e)), O(std::move(o));
  IntPoly g = E * E - (O * O).shift_up(1);
  if (!g.is_zero() && g.lead() < 0) g = -g;
  return g;
}

TorsionVerdict is_cyclotomic_product(const IntPoly& f, bool with_measure, const PrecisionConfig& cfg) {
  if (f.is_zero()) throw DomainError("cyclotomic test of the zero polynomial");
  TorsionVerdict v;
  if (with_measure) v.numeric_measure = mahler_roots(f, cfg);

  std::size_t k = f.low_order();
  IntPoly g = f.shift_down(k);
  int unit = g.lead() < 0 ? -1 : 1;
  if (unit < 0) g = -g;
  if (abs(g.lead()) != 1 || abs(g[0]) != 1) {
    v.status = TorsionStatus::not_torsion;
    return v;
  }
  auto row = binomial_row(g.degree());
  IntPoly cur = g;
  bool fixed = g.degree() == 0;
  for (int it = 0; it < 2 * g.degree() + 8 && !fixed; ++it) {
    if (!within_unit_circle_bound(cur, row)) break;
    IntPoly next = graeffe(cur);
    if (next == cur) fixed = true;
    cur = std::move(next);
  }
  if (!fixed) {
    v.status = TorsionStatus::not_torsion;
    return v;
  }
  TorsionCertificate cert;
  cert.unit = unit;
  cert.monomial_x = static_cast<int>(k);
  cert.factors = peel_cyclotomic(g);
  v.status = TorsionStatus::torsion;
  v.certificate = std::move(cert);
  return v;
}

std::optional<int> root_of_unity_order(const IntPoly& f) {
  if (!is_irreducible(f)) throw DomainError("root_of_unity_order: input must be primitive and irreducible");
  IntPoly g = f.lead() < 0 ? -f : f;
  if (g.lead() != 1) return std::nullopt;
  int d = g.degree();
  for (int n = 1; n <= 7 * d + 10; ++n)
    if (euler_phi(n) == d && cyclotomic(n) == g) return n;
  return std::nullopt;
}

namespace {

// T-only part: +-T^k prod Phi_n(T).
std::optional<std::vector<CosetFactor>> t_cyclotomic(const IntPoly& c, TorsionCertificate& cert) {
  auto v = is_cyclotomic_product(c);
  if (v.status != TorsionStatus::torsion) return std::nullopt;
  cert.unit = v.certificate->unit;
  cert.monomial_t += v.certificate->monomial_x;
  std::vector<CosetFactor> out;
  for (auto f : v.certificate->factors) {
    f.t_exp = 1;
    f.x_exp = 0;
    out.push_back(f);
  }
  return out;
}

std::optional<TorsionCertificate> structural_search(const BiPoly& f) {
  TorsionCertificate cert;
  cert.monomial_t = static_cast<int>(f.t_low_order());
  cert.monomial_x = static_cast<int>(f.x_low_order());
  BiPoly g = f;
  {
    std::vector<IntPoly> xc;
    for (std::size_t i = static_cast<std::size_t>(cert.monomial_x); i < f.x_coeffs().size(); ++i) {
      const IntPoly& c = f.coeff(i);
      xc.push_back(c.is_zero() ? c : c.shift_down(static_cast<std::size_t>(cert.monomial_t)));
    }
    g = BiPoly(std::move(xc));
  }
  while (g.x_degree() > 0) {
    int dx = g.x_degree(), dt = g.t_degree();
    bool found = false;
    for (int n = 1; n <= 120 && !found; ++n) {
      int ph = euler_phi(n);
      for (int b = 1; b <= 8 && b * ph <= dx && !found; ++b)
        for (int a = -8; a <= 8 && !found; ++a) {
          if (std::abs(a) * ph > dt) continue;
          for (int s : {1, -1}) {
            CosetFactor cf{n, a, b, s, 1};
            BiPoly c = cf.cleared();
            auto q = divide_exact(g, c);
            if (!q) continue;
            int mult = 1;
            g = std::move(*q);
            while (auto q2 = divide_exact(g, c)) {
              g = std::move(*q2);
              ++mult;
            }
            cf.multiplicity = mult;
            cert.factors.push_back(cf);
            found = true;
            break;
          }
        }
    }
    if (!found) return std::nullopt;
  }
  auto tf = t_cyclotomic(g.constant_term(), cert);
  if (!tf) return std::nullopt;
  cert.factors.insert(cert.factors.end(), tf->begin(), tf->end());
  return cert;
}

}  // namespace

TorsionVerdict bivariate_torsion_test(const BiPoly& f, const TorusQuadratureConfig& cfg) {
  if (f.is_zero()) throw DomainError("torsion test of the zero polynomial");
  TorsionVerdict v;
  if (f.integer_content() != 1) {
    v.status = TorsionStatus::not_torsion;
    v.numeric_measure = mahler_quadrature(MultiPoly::from_bipoly(f), cfg);
    return v;
  }
  if (auto cert = structural_search(f)) {
    v.status = TorsionStatus::torsion;
    v.certificate = std::move(cert);
    return v;
  }
  auto m = mahler_quadrature(MultiPoly::from_bipoly(f), cfg);
  v.numeric_measure = m;
  v.status = m.value > 3 * m.error_bound ? TorsionStatus::not_torsion : TorsionStatus::inconclusive;
  return v;
}

}  // namespace lehmer
