#include "lehmer/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>

namespace lehmer {

namespace {

namespace mp = boost::multiprecision;
template <unsigned B>
using Bin = mp::number<mp::cpp_bin_float<B, mp::digit_base_2>, mp::et_off>;

template <class R>
struct Cx {
  R re{};
  R im{};
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  // Smith's algorithm keeps intermediate magnitudes under control.
  using std::abs;
  if (abs(b.re) >= abs(b.im)) {
    R r = b.im / b.re;
    R d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  R r = b.re / b.im;
  R d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}
template <class R>
R cabs(const Cx<R>& a) {
  using std::sqrt;
  return sqrt(a.re * a.re + a.im * a.im);
}
template <class R>
bool is_zero(const Cx<R>& a) { return a.re == 0 && a.im == 0; }

template <class R>
constexpr int bits_of() {
  if constexpr (std::is_same_v<R, double>) return 53;
  else return std::numeric_limits<R>::digits;
}

template <class R>
R unit_roundoff() {
  using std::ldexp;
  return ldexp(R(1), 1 - bits_of<R>());
}

template <class R>
R to_real(const ExtReal& v) {
  if constexpr (std::is_same_v<R, double>) return static_cast<double>(v);
  else return static_cast<R>(v);
}

template <class R>
ExtReal to_ext(const R& v) {
  if constexpr (std::is_same_v<R, double>) return ExtReal(v);
  else return static_cast<ExtReal>(v);
}

template <class R>
double to_double(const R& v) {
  if constexpr (std::is_same_v<R, double>) return v;
  else return static_cast<double>(v);
}

double round_up(double v) {
  if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
  return std::nextafter(std::nextafter(v, HUGE_VAL), HUGE_VAL);
}

// Uniform read access to the three accepted coefficient types.
class Source {
 public:
  explicit Source(const std::vector<BigInt>& v) : ints_(&v), n_(v.size()) {}
  explicit Source(const std::vector<std::complex<double>>& v) : dbl_(&v), n_(v.size()) {}
  explicit Source(const std::vector<ExtComplex>& v) : ext_(&v), n_(v.size()) {}

  std::size_t size() const { return n_; }

  bool zero(std::size_t k) const {
    if (ints_) return (*ints_)[k] == 0;
    if (dbl_) return (*dbl_)[k] == std::complex<double>(0, 0);
    return (*ext_)[k].re == 0 && (*ext_)[k].im == 0;
  }

  double log_abs(std::size_t k) const {
    if (zero(k)) return -std::numeric_limits<double>::infinity();
    if (ints_) {
      long e = 0;
      double m = mpz_get_d_2exp(&e, (*ints_)[k].get_mpz_t());
      return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
    }
    if (dbl_) return std::log(std::abs((*dbl_)[k]));
    const auto& c = (*ext_)[k];
    ExtReal a = sqrt(c.re * c.re + c.im * c.im);
    return static_cast<double>(log(a));
  }

  template <class R>
  Cx<R> coeff(std::size_t k) const {
    if (ints_) {
      if constexpr (std::is_same_v<R, double>) return {mpz_get_d((*ints_)[k].get_mpz_t()), 0.0};
      else return {R((*ints_)[k].get_str()), R(0)};
    }
    if (dbl_) return {R((*dbl_)[k].real()), R((*dbl_)[k].imag())};
    return {to_real<R>((*ext_)[k].re), to_real<R>((*ext_)[k].im)};
  }

 private:
  const std::vector<BigInt>* ints_ = nullptr;
  const std::vector<std::complex<double>>* dbl_ = nullptr;
  const std::vector<ExtComplex>* ext_ = nullptr;
  std::size_t n_;
};

// Starting points on circles whose radii come from the upper convex hull of
// (k, log|a_k|).
std::vector<std::complex<double>> newton_polygon_start(const std::vector<double>& la) {
  const int n = static_cast<int>(la.size()) - 1;
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (!std::isfinite(la[static_cast<std::size_t>(k)])) continue;
    while (hull.size() >= 2) {
      int i = hull[hull.size() - 2], j = hull.back();
      double cross = (la[static_cast<std::size_t>(j)] - la[static_cast<std::size_t>(i)]) * (k - i) -
                     (la[static_cast<std::size_t>(k)] - la[static_cast<std::size_t>(i)]) * (j - i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<std::complex<double>> z;
  z.reserve(static_cast<std::size_t>(n));
  const double two_pi = 2 * M_PI;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    int i = hull[e], j = hull[e + 1];
    int count = j - i;
    double lr = (la[static_cast<std::size_t>(i)] - la[static_cast<std::size_t>(j)]) / count;
    double r = std::exp(std::clamp(lr, -700.0, 700.0));
    double offset = two_pi * static_cast<double>(e) / n + 0.4;
    for (int m = 0; m < count; ++m) z.push_back(std::polar(r, two_pi * m / count + offset));
  }
  return z;
}

// p(z) / p'(z), switching to the reversed polynomial outside the unit disk.
template <class R>
Cx<R> newton_ratio(const std::vector<Cx<R>>& a, const Cx<R>& z) {
  const std::size_t n = a.size() - 1;
  const Cx<R> zero{R(0), R(0)};
  if (cabs(z) <= R(1)) {
    Cx<R> p = a[n], d = zero;
    for (std::size_t k = n; k-- > 0;) {
      d = d * z + p;
      p = p * z + a[k];
    }
    if (is_zero(p)) return zero;
    if (is_zero(d)) return {R(1e-3), R(1e-3)};
    return p / d;
  }
  Cx<R> w = Cx<R>{R(1), R(0)} / z;
  Cx<R> q = a[0], dq = zero;
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + a[k];
  }
  if (is_zero(q)) return zero;
  Cx<R> denom = Cx<R>{R(n), R(0)} - w * dq / q;
  if (is_zero(denom)) return {R(1e-3), R(1e-3)};
  return z / denom;
}

template <class R>
void aberth(const std::vector<Cx<R>>& a, std::vector<Cx<R>>& z, int max_iter) {
  using std::ldexp;
  const std::size_t n = z.size();
  const R eps = ldexp(R(1), 4 - bits_of<R>());
  std::vector<char> done(n, 0);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Cx<R> ratio = newton_ratio(a, z[i]);
      if (is_zero(ratio)) {
        done[i] = 1;
        continue;
      }
      Cx<R> sum{R(0), R(0)};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Cx<R> diff = z[i] - z[j];
        if (!is_zero(diff)) sum = sum + Cx<R>{R(1), R(0)} / diff;
      }
      Cx<R> denom = Cx<R>{R(1), R(0)} - ratio * sum;
      Cx<R> w = is_zero(denom) ? ratio : ratio / denom;
      z[i] = z[i] - w;
      R mag = cabs(z[i]);
      if (cabs(w) <= eps * mag) done[i] = 1;
      else all = false;
    }
    if (all) return;
  }
}

struct TierResult {
  std::vector<RootCluster> clusters;
  std::vector<ExtComplex> points;
  bool ok = false;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

template <class R>
TierResult run_tier(const Source& src, std::size_t low, const std::vector<ExtComplex>& start,
                    const PrecisionConfig& cfg) {
  using std::abs;
  using std::ldexp;
  using std::pow;
  const std::size_t n = src.size() - 1 - low;
  std::vector<Cx<R>> a(n + 1);
  for (std::size_t k = 0; k <= n; ++k) a[k] = src.coeff<R>(k + low);

  std::vector<Cx<R>> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {to_real<R>(start[i].re), to_real<R>(start[i].im)};
  // Coincident starting points would stall the iteration.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (is_zero(z[i] - z[j])) {
        R mag = cabs(z[i]);
        R delta = ldexp(mag > R(1) ? mag : R(1), -bits_of<R>() / 2);
        z[i] = z[i] + Cx<R>{delta * R(std::cos(1.0 + static_cast<double>(i))),
                            delta * R(std::sin(1.0 + static_cast<double>(i)))};
      }

  aberth(a, z, cfg.max_iterations);

  const R u = unit_roundoff<R>();
  const R rn = R(static_cast<double>(n));
  const R horner_gamma = R(6.0 * static_cast<double>(n) + 6.0) * u;
  const R denom_shrink = R(1) - R(4.0 * static_cast<double>(n) + 4.0) * u;
  const R ext_round = ldexp(R(1), -126);
  std::vector<R> rad(n);
  bool finite = true;
  for (std::size_t i = 0; i < n; ++i) {
    Cx<R> p = a[n];
    R s = cabs(a[n]);
    const R zabs = cabs(z[i]);
    for (std::size_t k = n; k-- > 0;) {
      p = p * z[i] + a[k];
      s = s * zabs + cabs(a[k]);
    }
    Cx<R> den = a[n];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den = den * (z[i] - z[j]);
    R dabs = cabs(den);
    if (dabs == 0 || !(dabs == dabs)) {
      finite = false;
      rad[i] = R(0);
      continue;
    }
    rad[i] = rn * (cabs(p) + horner_gamma * s) / (dabs * denom_shrink) * (R(1) + R(4) * u);
    if constexpr (bits_of<R>() > 128) rad[i] += zabs * ext_round;
    if (!std::isfinite(to_double(rad[i])) && to_double(rad[i]) != 0) finite = false;
  }

  TierResult out;
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.points[i] = {to_ext(z[i].re), to_ext(z[i].im)};
  if (!finite) {
    out.ok = false;
    return out;
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cabs(z[i] - z[j]) <= rad[i] + rad[j]) parent[find_root(parent, i)] = find_root(parent, j);

  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);

  bool ok = true;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    RootCluster c;
    c.multiplicity = static_cast<int>(g.size());
    if (g.size() == 1) {
      const std::size_t i = g[0];
      c.disk = {to_ext(z[i].re), to_ext(z[i].im), round_up(to_double(rad[i]))};
      if (!(c.disk.radius <= cfg.target_radius)) ok = false;
    } else {
      Cx<R> center{R(0), R(0)};
      for (std::size_t i : g) center = center + z[i];
      const R m = R(static_cast<double>(g.size()));
      center = {center.re / m, center.im / m};
      R r(0);
      for (std::size_t i : g) {
        R v = cabs(z[i] - center) + rad[i];
        if (v > r) r = v;
      }
      if constexpr (bits_of<R>() > 128) r += cabs(center) * ext_round;
      c.disk = {to_ext(center.re), to_ext(center.im), round_up(to_double(r) * (1 + 1e-14))};
      // A cluster is accepted when its size is consistent with an m-fold root at this precision.
      double scale = std::max(1.0, static_cast<double>(cabs(center) > R(1) ? to_double(cabs(center)) : 1.0));
      double limit = std::pow(to_double(u), 1.0 / static_cast<double>(g.size())) * 65536.0 * scale;
      if (bits_of<R>() < 128 || !(c.disk.radius <= std::max(cfg.target_radius, limit))) ok = false;
    }
    out.clusters.push_back(std::move(c));
  }
  out.ok = ok;
  return out;
}

std::vector<RootCluster> sorted(std::vector<RootCluster> v) {
  std::sort(v.begin(), v.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.disk.center_re != b.disk.center_re) return a.disk.center_re < b.disk.center_re;
    return a.disk.center_im < b.disk.center_im;
  });
  return v;
}

std::vector<RootCluster> solve(const Source& src, const PrecisionConfig& cfg) {
  if (cfg.target_radius <= 0) throw DomainError("target_radius must be positive");
  std::size_t size = src.size();
  while (size > 0 && src.zero(size - 1)) --size;
  if (size < 2) throw DomainError("root isolation needs degree >= 1");
  if (size != src.size()) throw DomainError("leading coefficient must be nonzero");

  std::size_t low = 0;
  while (src.zero(low)) ++low;
  std::vector<RootCluster> zero_cluster;
  if (low > 0) zero_cluster.push_back({ComplexDisk{ExtReal(0), ExtReal(0), 0.0}, static_cast<int>(low)});
  const std::size_t n = size - 1 - low;
  if (n == 0) return zero_cluster;

  std::vector<double> la(n + 1);
  for (std::size_t k = 0; k <= n; ++k) la[k] = src.log_abs(k + low);
  auto start_d = newton_polygon_start(la);

  // Plain doubles are usable only when every intermediate stays in range.
  double max_la = -HUGE_VAL, min_la = HUGE_VAL, root_bound = -HUGE_VAL;
  for (std::size_t k = 0; k <= n; ++k)
    if (std::isfinite(la[k])) {
      max_la = std::max(max_la, la[k]);
      min_la = std::min(min_la, la[k]);
    }
  for (std::size_t k = 1; k <= n; ++k)
    if (std::isfinite(la[n - k])) root_bound = std::max(root_bound, (la[n - k] - la[n]) / static_cast<double>(k));
  root_bound += std::log(2.0);
  const bool double_ok = max_la < 500 && min_la > -500 && static_cast<double>(n) * std::max(root_bound, 0.0) < 500;

  std::vector<ExtComplex> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = {ExtReal(start_d[i].real()), ExtReal(start_d[i].imag())};

  if (double_ok && cfg.working_bits > 53) {
    // Cheap approximations in double precision before the first certified tier.
    std::vector<Cx<double>> a(n + 1), z(n);
    for (std::size_t k = 0; k <= n; ++k) a[k] = src.coeff<double>(k + low);
    for (std::size_t i = 0; i < n; ++i) z[i] = {start_d[i].real(), start_d[i].imag()};
    aberth(a, z, cfg.max_iterations);
    bool finite = std::all_of(z.begin(), z.end(), [](const Cx<double>& c) { return std::isfinite(c.re) && std::isfinite(c.im); });
    if (finite)
      for (std::size_t i = 0; i < n; ++i) points[i] = {ExtReal(z[i].re), ExtReal(z[i].im)};
  }

  TierResult best;
  auto attempt = [&](auto tag) {
    using R = decltype(tag);
    TierResult r = run_tier<R>(src, low, points, cfg);
    points = r.points;
    if (!r.clusters.empty()) best = r;
    return r.ok;
  };
  auto finish = [&](TierResult r) {
    auto out = std::move(r.clusters);
    out.insert(out.end(), zero_cluster.begin(), zero_cluster.end());
    return sorted(std::move(out));
  };

  if (cfg.working_bits <= 53 && double_ok && attempt(0.0)) return finish(best);
  if (cfg.working_bits <= 128 && attempt(Bin<128>())) return finish(best);
  if (cfg.working_bits <= 256 && attempt(Bin<256>())) return finish(best);
  if (cfg.working_bits <= 512 && attempt(Bin<512>())) return finish(best);
  if (attempt(Bin<1024>())) return finish(best);

  auto partial = best.clusters;
  partial.insert(partial.end(), zero_cluster.begin(), zero_cluster.end());
  throw RootPrecisionError("root isolation did not reach the target radius at 1024 bits", sorted(partial));
}

}  // namespace

ExtReal ComplexDisk::center_abs() const { return sqrt(center_re * center_re + center_im * center_im); }

std::vector<RootCluster> all_roots(const IntPoly& f, const PrecisionConfig& cfg) {
  return solve(Source(f.coeffs()), cfg);
}

std::vector<RootCluster> all_roots(const std::vector<std::complex<double>>& coeffs, const PrecisionConfig& cfg) {
  return solve(Source(coeffs), cfg);
}

std::vector<RootCluster> all_roots(const std::vector<ExtComplex>& coeffs, const PrecisionConfig& cfg) {
  return solve(Source(coeffs), cfg);
}

ModulusEnclosure max_modulus(const std::vector<RootCluster>& roots) {
  ModulusEnclosure e;
  for (const auto& c : roots) {
    ExtReal m = c.disk.center_abs();
    ExtReal r = ExtReal(c.disk.radius) + m * ExtReal(1e-37);
    ExtReal lo = m > r ? ExtReal(m - r) : ExtReal(0);
    if (lo > e.lo) e.lo = lo;
    if (m + r > e.hi) e.hi = m + r;
  }
  return e;
}

ModulusEnclosure max_modulus(const IntPoly& f, const PrecisionConfig& cfg) {
  return max_modulus(all_roots(f, cfg));
}

}  // namespace lehmer
