#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lehmer/cyclotomic.hpp"
#include "lehmer/int_poly.hpp"
#include "lehmer/mahler.hpp"

namespace lehmer {

enum class OutputFormat { jsonl, csv };

struct HarnessConfig {
  int precision_bits = 128;
  double tol = 1e-10;           // quadrature tolerance (fallback measure)
  double dobrowolski_c = 0.25;
  int deg_min = 1;
  int deg_max = 10;
  long coeff_bound = 1;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::jsonl;
  int threads = 0;              // 0: one worker per hardware thread
  bool timing = false;          // emit runtime_ms (makes output nondeterministic)
  long budget = 5000000;        // candidate polynomials a search may examine
};

enum class CorpusKind { exhaustive, random, cyclotomic, explicit_list };

struct CorpusSpec {
  CorpusKind kind = CorpusKind::exhaustive;
  long count = 100;             // random corpus size
  int n_max = 100;              // cyclotomic corpus: Phi_n for n <= n_max
  std::vector<IntPoly> polys;   // explicit corpus
};

struct ScanRow {
  IntPoly poly;
  int degree = 0;
  MeasureResult mahler;
  double height = 0;
  double dobrowolski_margin = 0;
  TorsionStatus torsion = TorsionStatus::inconclusive;
  std::string certificate;
  bool violation = false;
  bool reverified = false;
  double runtime_ms = 0;
  std::string error;
};

/// (c/d) (log log(3d) / log(3d))^3.
double dobrowolski_bound(int d, double c);

/// Precision settings for root-based measures at the given bit count.
PrecisionConfig precision_for_bits(int bits);

/// "x^k*Phi_n^e*..." for torsion verdicts, empty otherwise.
std::string certificate_text(const TorsionVerdict& v);

/// Exhaustive candidates: degree in [deg_min, deg_max], coefficients in
/// [-B, B], positive leading coefficient, nonzero constant term (plus x itself),
/// one representative per class under x -> -x and reversal.
std::vector<IntPoly> exhaustive_candidates(const HarnessConfig& cfg, long limit, long* total = nullptr);

/// Measures one irreducible polynomial.
ScanRow evaluate_row(const IntPoly& f, const HarnessConfig& cfg);

/// One row per irreducible polynomial of the corpus (exhaustive corpora skip
/// reducible entries; other corpora contribute the distinct irreducible factors
/// of their entries), sorted by degree then coefficients.
std::vector<ScanRow> scan(const CorpusSpec& corpus, const HarnessConfig& cfg);

struct Coverage {
  long examined = 0;
  long total = 0;
  bool complete = true;
};

struct SearchResult {
  std::vector<ScanRow> rows;
  Coverage coverage;
};

/// The top_k smallest strictly positive certified measures among irreducible,
/// non-cyclotomic, non-monomial polynomials of degree <= degree_max with
/// coefficients in [-coeff_bound, coeff_bound].
SearchResult search_small_mahler(int degree_max, long coeff_bound, int top_k, const HarnessConfig& cfg);

struct ScanSummary {
  long rows = 0;
  long torsion_rows = 0;
  long violations = 0;
  long errors = 0;
  double min_scaled = 0;        // min over non-torsion rows of d h (log 3d / log log 3d)^3
  std::string argmin;
};

ScanSummary summarize(const std::vector<ScanRow>& rows, const HarnessConfig& cfg);

/// Fixed-order report. JSON lines: one object per row; CSV: header then rows.
void write_rows(std::ostream& out, const std::vector<ScanRow>& rows, const HarnessConfig& cfg);
void write_summary(std::ostream& out, const ScanSummary& s, const HarnessConfig& cfg);
void write_coverage(std::ostream& out, const Coverage& c, const HarnessConfig& cfg);

/// printf("%.15e") rendering used for every real in reports.
std::string format_real(double v);

}  // namespace lehmer
