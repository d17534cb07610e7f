#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/harness.hpp"

using namespace lehmer;

namespace {

IntPoly sign_normalized(IntPoly f) { return f.lead() < 0 ? -f : f; }

std::vector<IntPoly> symmetry_class(const IntPoly& f) {
  IntPoly n = sign_normalized(f.negate_variable());
  return {f, n, sign_normalized(f.reversed()), sign_normalized(n.reversed())};
}

}  // namespace

TEST_CASE("dobrowolski bound") {
  double l3 = std::log(3.0);
  CHECK(dobrowolski_bound(1, 1.0) == doctest::Approx(std::pow(std::log(l3) / l3, 3)).epsilon(1e-15));
  for (int d = 2; d < 10000; ++d) REQUIRE(dobrowolski_bound(d, 1.0) > dobrowolski_bound(d + 1, 1.0));
  double golden = 0.5 * std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(golden >= dobrowolski_bound(2, 0.25));
  CHECK_THROWS_AS(dobrowolski_bound(0, 1.0), DomainError);
  CHECK_THROWS_AS(dobrowolski_bound(3, 0.0), DomainError);
}

TEST_CASE("exhaustive candidates pick one member per symmetry class") {
  HarnessConfig cfg;
  cfg.deg_min = 1;
  cfg.deg_max = 5;
  cfg.coeff_bound = 2;
  long total = 0;
  auto cands = exhaustive_candidates(cfg, 1L << 40, &total);
  CHECK(total == static_cast<long>(cands.size()));

  // Brute force: every polynomial of the box with nonzero constant term must have
  // exactly one class member among the candidates.
  std::set<std::vector<BigInt>> chosen;
  for (const auto& c : cands) chosen.insert(c.coeffs());
  CHECK(chosen.size() == cands.size());
  CHECK(chosen.count(IntPoly{0, 1}.coeffs()) == 1);
  long seen = 0;
  for (int d = 1; d <= 5; ++d) {
    long n = 1;
    for (int i = 0; i <= d; ++i) n *= 5;
    for (long code = 0; code < n; ++code) {
      std::vector<BigInt> v;
      long k = code;
      for (int i = 0; i <= d; ++i, k /= 5) v.push_back(k % 5 - 2);
      if (v.back() <= 0 || v.front() == 0) continue;
      ++seen;
      IntPoly f(v);
      int hits = 0;
      std::set<std::vector<BigInt>> members;
      for (const auto& g : symmetry_class(f)) members.insert(g.coeffs());
      for (const auto& m : members) hits += static_cast<int>(chosen.count(m));
      REQUIRE(hits == 1);
    }
  }
  CHECK(seen > total);
  HarnessConfig big = cfg;
  big.deg_max = 9;
  big.coeff_bound = 1;
  long limited_total = 0;
  CHECK(exhaustive_candidates(big, 10, &limited_total).size() == 10);
  CHECK(limited_total > 10);
}

TEST_CASE("search for small measures") {
  HarnessConfig cfg;
  auto r = search_small_mahler(2, 1, 1, cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].poly == IntPoly{-1, -1, 1});
  CHECK(std::fabs(r.rows[0].mahler.value - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-14);
  CHECK(r.coverage.complete);

  CHECK(search_small_mahler(4, 1, 0, cfg).rows.empty());

  auto several = search_small_mahler(4, 1, 5, cfg);
  REQUIRE(several.rows.size() == 5);
  for (std::size_t i = 1; i < several.rows.size(); ++i)
    CHECK(several.rows[i - 1].mahler.value <= several.rows[i].mahler.value);
  for (const auto& row : several.rows) {
    CHECK(row.torsion == TorsionStatus::not_torsion);
    CHECK(row.mahler.value - row.mahler.error_bound > 0);
  }

  HarnessConfig tight = cfg;
  tight.budget = 20;
  auto partial = search_small_mahler(6, 1, 3, tight);
  CHECK(partial.coverage.examined == 20);
  CHECK_FALSE(partial.coverage.complete);
  CHECK(partial.coverage.total > 20);
}

TEST_CASE("lehmer polynomial is the smallest measure up to degree 10") {
  HarnessConfig cfg;
  auto r = search_small_mahler(10, 1, 1, cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].poly == IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  CHECK(std::fabs(r.rows[0].mahler.value - 0.16235761199) < 1e-10);
}

TEST_CASE("scan corpora") {
  HarnessConfig cfg;
  CorpusSpec cyc;
  cyc.kind = CorpusKind::cyclotomic;
  cyc.n_max = 100;
  auto rows = scan(cyc, cfg);
  CHECK(rows.size() == 100);
  for (const auto& r : rows) {
    CHECK(r.torsion == TorsionStatus::torsion);
    CHECK(r.mahler.value <= r.mahler.error_bound);
    CHECK(r.error.empty());
    CHECK_FALSE(r.violation);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(compare(rows[i - 1].poly, rows[i].poly) < 0);

  CorpusSpec empty;
  empty.kind = CorpusKind::explicit_list;
  CHECK(scan(empty, cfg).empty());

  CorpusSpec ex;
  ex.kind = CorpusKind::explicit_list;
  ex.polys = {IntPoly{-1, -1, 1} * IntPoly{2, 1} * IntPoly{2, 1}, IntPoly{2, 1}, IntPoly{0, 0, 3}};
  rows = scan(ex, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].poly == IntPoly{0, 1});
  CHECK(rows[1].poly == IntPoly{2, 1});
  CHECK(rows[2].poly == IntPoly{-1, -1, 1});
  CHECK(rows[0].certificate == "x");
  CHECK(rows[1].height == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(rows[2].dobrowolski_margin ==
        doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2) * std::pow(std::log(6.0) / std::log(std::log(6.0)), 3) - 0.25));

  CorpusSpec ran;
  ran.kind = CorpusKind::random;
  ran.count = 30;
  HarnessConfig rc = cfg;
  rc.deg_max = 6;
  rc.coeff_bound = 5;
  rc.seed = 7;
  auto a = scan(ran, rc);
  CHECK_FALSE(a.empty());
  rc.threads = 3;
  auto b = scan(ran, rc);
  REQUIRE(a.size() == b.size());
  std::ostringstream sa, sb;
  write_rows(sa, a, rc);
  write_rows(sb, b, rc);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("small exhaustive scan has no violations") {
  HarnessConfig cfg;
  cfg.deg_max = 6;
  CorpusSpec ex;
  auto rows = scan(ex, cfg);
  ScanSummary s = summarize(rows, cfg);
  CHECK(s.violations == 0);
  CHECK(s.errors == 0);
  CHECK(s.min_scaled >= 0.25);
  for (const auto& r : rows) {
    if (r.torsion == TorsionStatus::torsion) CHECK(is_cyclotomic_product(r.poly).status == TorsionStatus::torsion);
    CHECK(r.dobrowolski_margin == doctest::Approx(r.degree * r.height * std::pow(std::log(3.0 * r.degree) / std::log(std::log(3.0 * r.degree)), 3) - 0.25));
  }
  HarnessConfig strict = cfg;
  strict.dobrowolski_c = 100;
  auto flagged = scan(ex, strict);
  long reverified = 0;
  for (const auto& r : flagged)
    if (r.violation) {
      CHECK(r.reverified);
      ++reverified;
    }
  CHECK(reverified > 0);
}

TEST_CASE("report formats share the column order") {
  HarnessConfig cfg;
  CorpusSpec ex;
  ex.kind = CorpusKind::explicit_list;
  ex.polys = {IntPoly{-1, -1, 1}, IntPoly{1, 1, 1}};
  auto rows = scan(ex, cfg);
  std::ostringstream js, cs;
  write_rows(js, rows, cfg);
  write_summary(js, summarize(rows, cfg), cfg);
  HarnessConfig csv = cfg;
  csv.format = OutputFormat::csv;
  write_rows(cs, rows, csv);

  std::istringstream jl(js.str()), cl(cs.str());
  std::string line, header;
  std::getline(cl, header);
  std::vector<std::string> columns;
  std::stringstream hs(header);
  for (std::string c; std::getline(hs, c, ',');) columns.push_back(c);
  int objects = 0;
  while (std::getline(jl, line)) {
    auto j = nlohmann::ordered_json::parse(line);
    if (j.contains("summary")) {
      CHECK(j["summary"]["rows"] == 2);
      continue;
    }
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == columns);
    ++objects;
  }
  CHECK(objects == 2);
  CHECK(format_real(0.5) == "5.000000000000000e-01");
}
