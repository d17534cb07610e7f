#include "lehmer/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "json.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"

namespace lehmer {

namespace {

double scale_factor(int d) {
  double l = std::log(3.0 * d);
  return std::pow(l / std::log(l), 3);
}

// Coefficient vectors (lowest first) for the exhaustive corpus. Members of a
// symmetry class are compared by f(1) first so that the reported representative
// tends to carry its large real root on the positive axis (x^2-x-1, not x^2+x-1).
using Coeffs = std::vector<long>;

void normalize_sign(Coeffs& c) {
  if (c.back() < 0)
    for (auto& v : c) v = -v;
}

bool key_less(const Coeffs& a, const Coeffs& b) {
  long sa = 0, sb = 0;
  for (long v : a) sa += v;
  for (long v : b) sb += v;
  if (sa != sb) return sa < sb;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool is_class_representative(const Coeffs& f) {
  Coeffs n = f;
  for (std::size_t i = 1; i < n.size(); i += 2) n[i] = -n[i];
  normalize_sign(n);
  Coeffs r(f.rbegin(), f.rend());
  normalize_sign(r);
  Coeffs rn(n.rbegin(), n.rend());
  normalize_sign(rn);
  return !key_less(n, f) && !key_less(r, f) && !key_less(rn, f);
}

IntPoly to_poly(const Coeffs& c) {
  std::vector<BigInt> v(c.begin(), c.end());
  return IntPoly(std::move(v));
}

// Calls visit(coeffs) for each class representative in enumeration order (degree
// ascending, then odometer order); stops early when visit returns false.
template <class Visit>
void enumerate_exhaustive(int deg_min, int deg_max, long bound, Visit visit) {
  if (deg_min <= 1 && deg_max >= 1)
    if (!visit(Coeffs{0, 1})) return;
  for (int d = std::max(deg_min, 1); d <= deg_max; ++d) {
    Coeffs c(static_cast<std::size_t>(d) + 1, -bound);
    c[d] = 1;
    c[0] = -bound;
    for (;;) {
      if (c[0] != 0 && is_class_representative(c))
        if (!visit(c)) return;
      std::size_t i = 0;
      const auto top = static_cast<std::size_t>(d);
      for (; i <= top; ++i) {
        ++c[i];
        if (i == 0 && c[0] == 0) ++c[0];
        if (c[i] <= bound) break;
        c[i] = -bound;
      }
      if (i > top) break;
    }
  }
}

double raw_exhaustive_count(int deg_min, int deg_max, long bound) {
  double total = 0;
  for (int d = std::max(deg_min, 1); d <= deg_max; ++d)
    total += double(bound) * double(2 * bound) * std::pow(double(2 * bound + 1), d - 1);
  return total;
}

bool usable_irreducible(const IntPoly& f) {
  if (f.degree() < 1 || content(f) != 1) return false;
  if (f.degree() == 1) return true;
  if (f[0] == 0) return false;
  if (f.eval(1) == 0 || f.eval(-1) == 0) return false;
  return is_irreducible(f);
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = threads > 0 ? std::size_t(threads) : std::size_t(hw == 0 ? 1 : hw);
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

void sort_rows(std::vector<ScanRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return compare(a.poly, b.poly) < 0; });
}

MeasureResult measure(const IntPoly& f, int bits, const HarnessConfig& cfg, std::string& note) {
  try {
    return mahler_roots(f, precision_for_bits(bits));
  } catch (const PrecisionError&) {
    note = "root isolation did not converge; quadrature fallback";
    TorusQuadratureConfig q = default_torus_config(1);
    q.target_abs_error = cfg.tol;
    return mahler_quadrature(f, q);
  }
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

double dobrowolski_bound(int d, double c) {
  if (d < 1) throw DomainError("dobrowolski_bound: degree must be at least 1");
  if (!(c > 0)) throw DomainError("dobrowolski_bound: c must be positive");
  return c / d / scale_factor(d);
}

PrecisionConfig precision_for_bits(int bits) {
  if (bits < 53) throw DomainError("precision must be at least 53 bits");
  PrecisionConfig p;
  p.working_bits = bits;
  // Disk centers are stored with 128-bit mantissas, so finer radii are unreachable.
  p.target_radius = std::ldexp(1.0, -std::min(static_cast<int>(0.8 * bits), 100));
  return p;
}

std::string certificate_text(const TorsionVerdict& v) {
  if (v.status != TorsionStatus::torsion || !v.certificate) return "";
  const TorsionCertificate& c = *v.certificate;
  std::string out = c.unit < 0 ? "-" : "";
  std::vector<std::string> parts;
  if (c.monomial_x > 0) parts.push_back(c.monomial_x == 1 ? "x" : "x^" + std::to_string(c.monomial_x));
  for (const auto& f : c.factors) {
    std::string p = "Phi" + std::to_string(f.n);
    if (f.multiplicity > 1) p += "^" + std::to_string(f.multiplicity);
    parts.push_back(p);
  }
  if (parts.empty()) return out + "1";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

std::vector<IntPoly> exhaustive_candidates(const HarnessConfig& cfg, long limit, long* total) {
  std::vector<IntPoly> out;
  long count = 0;
  enumerate_exhaustive(cfg.deg_min, cfg.deg_max, cfg.coeff_bound, [&](const Coeffs& c) {
    if (count < limit) out.push_back(to_poly(c));
    ++count;
    return total != nullptr || count < limit;
  });
  if (total) *total = count;
  return out;
}

ScanRow evaluate_row(const IntPoly& f, const HarnessConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  ScanRow row;
  row.poly = f;
  row.degree = f.degree();
  try {
    TorsionVerdict tv = is_cyclotomic_product(f);
    row.torsion = tv.status;
    row.certificate = certificate_text(tv);
    row.mahler = measure(f, cfg.precision_bits, cfg, row.error);
    row.height = row.mahler.value / row.degree;
    row.dobrowolski_margin = row.degree * row.height * scale_factor(row.degree) - cfg.dobrowolski_c;
    if (row.torsion == TorsionStatus::torsion) {
      if (row.mahler.value > row.mahler.error_bound)
        row.error = "torsion certificate but measure exceeds its error bound";
    } else if (row.dobrowolski_margin < 0) {
      std::string note;
      MeasureResult again = measure(f, 2 * cfg.precision_bits, cfg, note);
      double margin = again.value * scale_factor(row.degree) - cfg.dobrowolski_c;
      row.reverified = true;
      row.violation = margin + again.error_bound * scale_factor(row.degree) < 0;
      if (!row.violation) row.error = "margin sign not confirmed at doubled precision";
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.mahler.value = std::numeric_limits<double>::quiet_NaN();
    row.height = row.dobrowolski_margin = row.mahler.value;
  }
  if (cfg.timing)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<ScanRow> scan(const CorpusSpec& corpus, const HarnessConfig& cfg) {
  if (cfg.deg_min < 1 || cfg.deg_max < cfg.deg_min) throw DomainError("degree bounds must satisfy 1 <= min <= max");
  if (cfg.coeff_bound < 1) throw DomainError("coefficient bound must be positive");

  std::vector<IntPoly> polys;
  if (corpus.kind == CorpusKind::exhaustive) {
    if (raw_exhaustive_count(cfg.deg_min, cfg.deg_max, cfg.coeff_bound) > 4.0 * double(cfg.budget))
      throw CapacityError("exhaustive corpus exceeds the configured budget");
    std::vector<IntPoly> cands = exhaustive_candidates(cfg, std::numeric_limits<long>::max());
    std::vector<char> keep(cands.size(), 0);
    parallel_for(cands.size(), cfg.threads, [&](std::size_t i) {
      try {
        keep[i] = usable_irreducible(cands[i]);
      } catch (const CapacityError&) {
        keep[i] = 0;
      }
    });
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (keep[i]) polys.push_back(std::move(cands[i]));
  } else {
    std::vector<IntPoly> entries;
    if (corpus.kind == CorpusKind::cyclotomic) {
      for (int n = 1; n <= corpus.n_max; ++n) polys.push_back(cyclotomic(n));
    } else if (corpus.kind == CorpusKind::random) {
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<int> deg(cfg.deg_min, cfg.deg_max);
      std::uniform_int_distribution<long> coef(-cfg.coeff_bound, cfg.coeff_bound);
      for (long k = 0; k < corpus.count; ++k) {
        int d = deg(rng);
        std::vector<BigInt> v(static_cast<std::size_t>(d) + 1);
        for (auto& x : v) x = coef(rng);
        while (v.back() == 0) v.back() = coef(rng);
        entries.emplace_back(std::move(v));
      }
    } else {
      entries = corpus.polys;
    }
    std::set<std::vector<BigInt>> seen;
    for (const auto& e : entries) {
      if (e.degree() < 1) continue;
      for (auto& [p, mult] : factor(e).factors)
        if (seen.insert(p.coeffs()).second) polys.push_back(p);
    }
  }

  std::vector<ScanRow> rows(polys.size());
  parallel_for(polys.size(), cfg.threads, [&](std::size_t i) { rows[i] = evaluate_row(polys[i], cfg); });
  sort_rows(rows);
  return rows;
}

SearchResult search_small_mahler(int degree_max, long coeff_bound, int top_k, const HarnessConfig& cfg) {
  if (degree_max < 1) throw DomainError("degree bound must be at least 1");
  if (coeff_bound < 1) throw DomainError("coefficient bound must be positive");
  if (top_k < 0) throw DomainError("top_k must be nonnegative");
  SearchResult out;
  HarnessConfig c = cfg;
  c.deg_min = 1;
  c.deg_max = degree_max;
  c.coeff_bound = coeff_bound;
  std::vector<IntPoly> cands = exhaustive_candidates(c, cfg.budget, &out.coverage.total);
  out.coverage.examined = static_cast<long>(cands.size());
  out.coverage.complete = out.coverage.examined == out.coverage.total;
  if (top_k == 0) return out;

  // Rank at double precision, then recompute the leading candidates at the
  // configured precision.
  std::vector<double> value(cands.size(), std::numeric_limits<double>::infinity());
  parallel_for(cands.size(), cfg.threads, [&](std::size_t i) {
    const IntPoly& f = cands[i];
    try {
      if (f.degree() == 1 && f[0] == 0) return;
      if (!usable_irreducible(f)) return;
      if (is_cyclotomic_product(f).status == TorsionStatus::torsion) return;
      std::string note;
      MeasureResult m = measure(f, 53, cfg, note);
      if (m.value - m.error_bound > 0) value[i] = m.value;
    } catch (const Error&) {
    }
  });
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (std::isfinite(value[i])) order.push_back(i);
  auto by_value = [&](std::size_t a, std::size_t b) {
    if (value[a] != value[b]) return value[a] < value[b];
    return compare(cands[a], cands[b]) < 0;
  };
  std::sort(order.begin(), order.end(), by_value);
  if (order.empty()) return out;
  std::size_t take = std::min(order.size(), std::size_t(top_k));
  double cutoff = value[order[take - 1]] + 1e-9;
  while (take < order.size() && value[order[take]] <= cutoff) ++take;

  for (std::size_t j = 0; j < take; ++j) {
    ScanRow row = evaluate_row(cands[order[j]], cfg);
    if (std::isfinite(row.mahler.value) && row.mahler.value - row.mahler.error_bound > 0)
      out.rows.push_back(std::move(row));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.mahler.value != b.mahler.value) return a.mahler.value < b.mahler.value;
    return compare(a.poly, b.poly) < 0;
  });
  if (out.rows.size() > std::size_t(top_k)) out.rows.resize(std::size_t(top_k));
  return out;
}

ScanSummary summarize(const std::vector<ScanRow>& rows, const HarnessConfig&) {
  ScanSummary s;
  s.rows = static_cast<long>(rows.size());
  s.min_scaled = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (!r.error.empty()) ++s.errors;
    if (r.violation) ++s.violations;
    if (r.torsion == TorsionStatus::torsion) {
      ++s.torsion_rows;
      continue;
    }
    if (!std::isfinite(r.mahler.value)) continue;
    double scaled = r.mahler.value * scale_factor(r.degree);
    if (scaled < s.min_scaled) {
      s.min_scaled = scaled;
      s.argmin = render(r.poly);
    }
  }
  return s;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

void write_rows(std::ostream& out, const std::vector<ScanRow>& rows, const HarnessConfig& cfg) {
  if (cfg.format == OutputFormat::csv) {
    out << "polynomial,degree,mahler,mahler_error,method,height,dobrowolski_margin,torsion,certificate,"
           "violation,reverified,error";
    if (cfg.timing) out << ",runtime_ms";
    out << "\n";
    for (const auto& r : rows) {
      out << csv_field(render(r.poly)) << ',' << r.degree << ',' << format_real(r.mahler.value) << ','
          << format_real(r.mahler.error_bound) << ',' << to_string(r.mahler.method) << ',' << format_real(r.height)
          << ',' << format_real(r.dobrowolski_margin) << ',' << to_string(r.torsion) << ','
          << csv_field(r.certificate) << ',' << (r.violation ? "true" : "false") << ','
          << (r.reverified ? "true" : "false") << ',' << csv_field(r.error);
      if (cfg.timing) out << ',' << format_real(r.runtime_ms);
      out << "\n";
    }
    return;
  }
  for (const auto& r : rows) {
    out << "{\"polynomial\":" << json_string(render(r.poly)) << ",\"degree\":" << r.degree
        << ",\"mahler\":" << json_real(r.mahler.value) << ",\"mahler_error\":" << json_real(r.mahler.error_bound)
        << ",\"method\":" << json_string(to_string(r.mahler.method)) << ",\"height\":" << json_real(r.height)
        << ",\"dobrowolski_margin\":" << json_real(r.dobrowolski_margin)
        << ",\"torsion\":" << json_string(to_string(r.torsion)) << ",\"certificate\":" << json_string(r.certificate)
        << ",\"violation\":" << (r.violation ? "true" : "false")
        << ",\"reverified\":" << (r.reverified ? "true" : "false") << ",\"error\":" << json_string(r.error);
    if (cfg.timing) out << ",\"runtime_ms\":" << json_real(r.runtime_ms);
    out << "}\n";
  }
}

void write_summary(std::ostream& out, const ScanSummary& s, const HarnessConfig& cfg) {
  if (cfg.format == OutputFormat::csv) {
    out << "# rows=" << s.rows << " torsion_rows=" << s.torsion_rows << " violations=" << s.violations
        << " errors=" << s.errors << " min_scaled=" << format_real(s.min_scaled) << " argmin=" << s.argmin
        << " c=" << format_real(cfg.dobrowolski_c) << "\n";
    return;
  }
  out << "{\"summary\":{\"rows\":" << s.rows << ",\"torsion_rows\":" << s.torsion_rows
      << ",\"violations\":" << s.violations << ",\"errors\":" << s.errors
      << ",\"min_scaled\":" << json_real(s.min_scaled) << ",\"argmin\":" << json_string(s.argmin)
      << ",\"c\":" << json_real(cfg.dobrowolski_c) << "}}\n";
}

void write_coverage(std::ostream& out, const Coverage& c, const HarnessConfig& cfg) {
  if (cfg.format == OutputFormat::csv) {
    out << "# examined=" << c.examined << " total=" << c.total << " complete=" << (c.complete ? "true" : "false")
        << "\n";
    return;
  }
  out << "{\"coverage\":{\"examined\":" << c.examined << ",\"total\":" << c.total
      << ",\"complete\":" << (c.complete ? "true" : "false") << "}}\n";
}

}  // namespace lehmer
