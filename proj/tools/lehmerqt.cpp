#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lehmer/adelic.hpp"
#include "lehmer/cyclotomic.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/factor.hpp"
#include "lehmer/harness.hpp"
#include "lehmer/parser.hpp"

using namespace lehmer;

namespace {

struct Globals {
  int precision_bits = 128;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "jsonl";
  bool timing = false;
  int threads = 0;
};

// One output record with a fixed field order.
using Field = std::variant<std::string, double, long, bool>;
using Record = std::vector<std::pair<std::string, Field>>;

std::string json_field(const Field& f) {
  if (auto s = std::get_if<std::string>(&f)) return nlohmann::json(*s).dump();
  if (auto d = std::get_if<double>(&f)) return std::isfinite(*d) ? format_real(*d) : "null";
  if (auto l = std::get_if<long>(&f)) return std::to_string(*l);
  return std::get<bool>(f) ? "true" : "false";
}

std::string csv_field(const Field& f) {
  if (auto s = std::get_if<std::string>(&f)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string out = "\"";
    for (char ch : *s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  }
  if (auto d = std::get_if<double>(&f)) return format_real(*d);
  return json_field(f);
}

void emit(const Record& r, const Globals& g) {
  if (g.format == "csv") {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i].first;
    std::cout << "\n";
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i].second);
    std::cout << "\n";
    return;
  }
  std::cout << "{";
  for (std::size_t i = 0; i < r.size(); ++i)
    std::cout << (i ? "," : "") << nlohmann::json(r[i].first).dump() << ":" << json_field(r[i].second);
  std::cout << "}\n";
}

void add_measure(Record& r, const std::string& name, const MeasureResult& m) {
  r.emplace_back(name, m.value);
  r.emplace_back(name + "_error", m.error_bound);
  r.emplace_back("method", to_string(m.method));
  r.emplace_back("warning", m.warning);
}

TorusQuadratureConfig torus(const Globals& g, int nvars) {
  TorusQuadratureConfig c = default_torus_config(nvars);
  if (g.tol) c.target_abs_error = *g.tol;
  return c;
}

HarnessConfig harness_config(const Globals& g) {
  HarnessConfig h;
  h.precision_bits = g.precision_bits;
  if (g.tol) h.tol = *g.tol;
  h.seed = g.seed;
  h.format = g.format == "csv" ? OutputFormat::csv : OutputFormat::jsonl;
  h.timing = g.timing;
  h.threads = g.threads;
  return h;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

BiPoly primitive_bipoly(const Expression& e) {
  BiPoly b = as_bipoly(e);
  if (b.x_degree() < 1) throw DomainError("expected a polynomial of positive degree in x");
  return b.primitive();
}

Key2Element key2_element(const std::string& text) {
  std::string t = trim(text);
  if (t.rfind("root(", 0) == 0) {
    if (t.back() != ')') throw ParseError(t.size(), "expected ')' closing root(");
    return AlgebraicQT(primitive_bipoly(parse_expression(t.substr(5, t.size() - 6))));
  }
  return as_ratfunc(parse_expression(t));
}

std::string render_key2(const Key2Element& e) {
  if (auto r = std::get_if<RatFunc>(&e)) return render(*r);
  return "root(" + render(std::get<AlgebraicQT>(e).minpoly()) + ")";
}

Place parse_place(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(0, "place must be closed:<poly>, prime:<p> or circle:<t>");
  std::string kind = text.substr(0, colon), body = text.substr(colon + 1);
  if (kind == "closed") return closed_point(as_univariate(parse_expression(body)));
  if (kind == "prime") {
    BigInt p;
    if (body.empty() || p.set_str(body, 10) != 0) throw ParseError(colon + 1, "expected an integer prime");
    return prime_place(p);
  }
  if (kind == "circle") {
    std::size_t used = 0;
    double t = 0;
    try {
      t = std::stod(body, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != body.size()) throw ParseError(colon + 1, "expected a real number");
    return circle_place(t);
  }
  throw ParseError(0, "unknown place kind '" + kind + "'");
}

std::string power(const std::string& var, int e) { return e == 1 ? var : var + "^" + std::to_string(e); }

std::string join(const std::vector<IntPoly>& v, char var) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ":" : "") + render(v[i], var);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Heights, Mahler measures and Lehmer scans over Q(T)", "lehmerqt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key=value file");
  Globals g;
  app.add_option("--precision-bits", g.precision_bits, "Working precision for root isolation")
      ->check(CLI::Range(53, 4096));
  app.add_option("--tol", g.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random corpora");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_flag("--timing", g.timing, "Include runtime_ms in scan rows");
  app.add_option("--threads", g.threads, "Worker threads (0: hardware)")->check(CLI::NonNegativeNumber);

  std::function<void()> action;

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of a polynomial");
  std::string mahler_poly;
  int vars = 1;
  mahler->add_option("poly", mahler_poly)->required();
  mahler->add_option("--vars", vars, "Number of variables")->check(CLI::Range(1, 3));
  mahler->callback([&] {
    action = [&] {
      Record r{{"polynomial", trim(mahler_poly)}, {"vars", long(vars)}};
      if (vars == 1 && !g.tol) {
        IntPoly f = as_univariate(parse_expression(mahler_poly));
        add_measure(r, "mahler", mahler_roots(f, precision_for_bits(g.precision_bits)));
      } else {
        add_measure(r, "mahler", mahler_quadrature(parse_multivariate(mahler_poly, vars), torus(g, vars)));
      }
      emit(r, g);
    };
  });

  auto* height = app.add_subcommand("height", "Weil height of an algebraic number from its minimal polynomial");
  std::string height_poly;
  height->add_option("poly", height_poly)->required();
  height->callback([&] {
    action = [&] {
      IntPoly f = as_univariate(parse_expression(height_poly));
      if (f.degree() < 1) throw DomainError("expected a polynomial of positive degree");
      IntPoly p = primitive_part(f);
      if (!is_irreducible(p)) throw DomainError("polynomial is not irreducible over Q");
      MeasureResult m = mahler_roots(p, precision_for_bits(g.precision_bits));
      Record r{{"polynomial", render(p)}, {"degree", long(p.degree())}};
      r.emplace_back("height", m.value / p.degree());
      r.emplace_back("height_error", m.error_bound / p.degree());
      r.emplace_back("mahler", m.value);
      r.emplace_back("method", to_string(m.method));
      emit(r, g);
    };
  });

  auto* hs = app.add_subcommand("hs", "Adelic height h_S over Q(T)");
  hs->require_subcommand(1);
  auto* hs_point = hs->add_subcommand("point", "Height of a projective point");
  std::vector<std::string> coords;
  hs_point->add_option("--coords", coords, "Comma-separated coordinates in Q(T)")->required()->delimiter(',');
  hs_point->callback([&] {
    action = [&] {
      ProjectivePointQT pt;
      for (const auto& c : coords) pt.coords.push_back(as_ratfunc(parse_expression(c)));
      if (pt.coords.size() < 2) throw DomainError("a projective point needs at least two coordinates");
      MeasureResult m = pt.coords.size() == 2 ? height_p1(pt, torus(g, 1)) : height_pn(pt, torus(g, 1));
      Record r{{"point", "[" + join(canonicalize_pn(pt.coords), 'T') + "]"}};
      add_measure(r, "height", m);
      emit(r, g);
    };
  });
  auto* hs_alg = hs->add_subcommand("alg", "Height of an algebraic element given by its minimal polynomial");
  std::string alg_poly;
  hs_alg->add_option("bipoly", alg_poly)->required();
  hs_alg->callback([&] {
    action = [&] {
      AlgebraicQT a(primitive_bipoly(parse_expression(alg_poly)));
      MeasureResult m = height_algebraic(a, torus(g, 2));
      Record r{{"minpoly", render(a.minpoly())}, {"degree", long(a.degree())}};
      add_measure(r, "height", m);
      emit(r, g);
    };
  });

  auto* places = app.add_subcommand("places", "Absolute values at places of Q(T)");
  places->require_subcommand(1);
  auto* places_eval = places->add_subcommand("eval", "log|phi|_w at one place");
  std::string place_phi, place_text;
  places_eval->add_option("ratfunc", place_phi)->required();
  places_eval->add_option("--place", place_text, "closed:<poly>, prime:<p> or circle:<t>")->required();
  places_eval->callback([&] {
    action = [&] {
      RatFunc phi = as_ratfunc(parse_expression(place_phi));
      Place w = parse_place(place_text);
      PrecisionConfig pc = precision_for_bits(g.precision_bits);
      LogAbsValue v = abs_value_log(phi, w, pc);
      Record r{{"phi", render(phi)}, {"place", render(w)}};
      r.emplace_back("log_abs", static_cast<double>(v.value));
      r.emplace_back("log_abs_error", v.error_bound);
      r.emplace_back("abs", static_cast<double>(exp(v.value)));
      if (auto cp = std::get_if<ClosedPoint>(&w)) {
        MeasureResult h = H_of_closed_point(cp->f, pc);
        r.emplace_back("H", h.value);
      }
      emit(r, g);
    };
  });

  auto* pf = app.add_subcommand("product-formula", "Sum of log|phi| over all places");
  std::string pf_phi;
  pf->add_option("ratfunc", pf_phi)->required();
  pf->callback([&] {
    action = [&] {
      RatFunc phi = as_ratfunc(parse_expression(pf_phi));
      TorusQuadratureConfig q = default_torus_config(1);
      q.target_abs_error = g.tol.value_or(1e-8);
      ProductFormulaReport rep = product_formula(phi, q);
      Record r{{"phi", render(phi)}};
      r.emplace_back("closed_points", rep.closed_points);
      r.emplace_back("primes", rep.primes);
      r.emplace_back("circle", rep.circle);
      r.emplace_back("defect", rep.total.value);
      r.emplace_back("defect_error", rep.total.error_bound);
      r.emplace_back("warning", rep.total.warning);
      emit(r, g);
    };
  });

  auto* kron = app.add_subcommand("kronecker", "Exact torsion test");
  std::string kron_poly;
  kron->add_option("poly", kron_poly)->required();
  kron->callback([&] {
    action = [&] {
      Expression e = parse_expression(kron_poly);
      TorsionVerdict v;
      std::string text;
      if (std::holds_alternative<BiPoly>(e)) {
        const BiPoly& b = std::get<BiPoly>(e);
        text = render(b);
        v = bivariate_torsion_test(b, torus(g, 2));
      } else {
        IntPoly f = as_univariate(e);
        text = render(f);
        v = is_cyclotomic_product(f, true, precision_for_bits(g.precision_bits));
      }
      Record r{{"polynomial", text}, {"status", to_string(v.status)}};
      std::string cert;
      if (v.certificate) {
        const auto& c = *v.certificate;
        cert = c.unit < 0 ? "-" : "";
        std::vector<std::string> parts;
        if (c.monomial_t) parts.push_back(power("T", c.monomial_t));
        if (c.monomial_x) parts.push_back(power("x", c.monomial_x));
        for (const auto& f : c.factors) {
          std::string arg = f.sign < 0 ? "-" : "";
          if (f.t_exp) arg += power("T", f.t_exp) + (f.x_exp ? "*" : "");
          if (f.x_exp) arg += power("x", f.x_exp);
          std::string p = "Phi" + std::to_string(f.n) + "(" + arg + ")";
          if (f.multiplicity > 1) p += "^" + std::to_string(f.multiplicity);
          parts.push_back(p);
        }
        for (std::size_t i = 0; i < parts.size(); ++i) cert += (i ? "*" : "") + parts[i];
        if (parts.empty()) cert += "1";
      }
      r.emplace_back("certificate", cert);
      if (v.numeric_measure) {
        r.emplace_back("mahler", v.numeric_measure->value);
        r.emplace_back("mahler_error", v.numeric_measure->error_bound);
      }
      emit(r, g);
    };
  });

  auto* norm = app.add_subcommand("normalize", "Normalization data of two monic integral equations");
  std::string norm_a, norm_b;
  norm->add_option("phi_eq", norm_a)->required();
  norm->add_option("psi_eq", norm_b)->required();
  norm->callback([&] {
    action = [&] {
      NormalizationData d = normalization_data(as_bipoly(parse_expression(norm_a)), as_bipoly(parse_expression(norm_b)));
      Record r{{"f_d", render(d.f_d, 'T')}, {"g_e", render(d.g_e, 'T')}, {"d", long(d.d)}, {"e", long(d.e)},
               {"c", d.c.get_str()}, {"F", render(d.F, 'T')}};
      r.emplace_back("check", finite_place_normalization_check(d));
      emit(r, g);
    };
  });

  auto* k2 = app.add_subcommand("key2", "Both sides of the norm inequality for a pair \"phi;psi\"");
  std::string k2_spec;
  k2->add_option("spec", k2_spec, "phi;psi with each side an element of Q(T) or root(<bipoly>)")->required();
  k2->callback([&] {
    action = [&] {
      auto semi = k2_spec.find(';');
      if (semi == std::string::npos) throw ParseError(k2_spec.size(), "expected 'phi;psi'");
      Key2Element a = key2_element(k2_spec.substr(0, semi));
      Key2Element b = key2_element(k2_spec.substr(semi + 1));
      Key2Report rep = key2(a, b, torus(g, 2));
      Record r{{"phi", render_key2(a)}, {"psi", render_key2(b)}};
      r.emplace_back("lhs", rep.lhs);
      r.emplace_back("rhs", rep.rhs);
      r.emplace_back("defect", rep.defect.value);
      r.emplace_back("defect_error", rep.defect.error_bound);
      r.emplace_back("extension_degree", long(rep.extension_degree));
      r.emplace_back("normalization", finite_place_normalization_check(rep.data));
      emit(r, g);
    };
  });

  auto* dscan = app.add_subcommand("dobrowolski-scan", "Scan a corpus against the Dobrowolski bound");
  int deg_min = 1, deg_max = 0, n_max = 100;
  long coeff_bound = 0, count = 100;
  double c_value = 0.25;
  std::string corpus = "exhaustive";
  dscan->add_option("--deg-max", deg_max)->required()->check(CLI::Range(1, 64));
  dscan->add_option("--deg-min", deg_min)->check(CLI::Range(1, 64));
  dscan->add_option("--coeff-bound", coeff_bound)->required()->check(CLI::Range(1L, 1000000L));
  dscan->add_option("--c", c_value, "Constant of the bound")->check(CLI::PositiveNumber);
  dscan->add_option("--corpus", corpus)->check(CLI::IsMember({"exhaustive", "random", "cyclotomic"}));
  dscan->add_option("--count", count, "Random corpus size")->check(CLI::NonNegativeNumber);
  dscan->add_option("--n-max", n_max, "Cyclotomic corpus bound")->check(CLI::Range(1, 10000));
  dscan->callback([&] {
    action = [&] {
      HarnessConfig h = harness_config(g);
      h.deg_min = deg_min;
      h.deg_max = deg_max;
      h.coeff_bound = coeff_bound;
      h.dobrowolski_c = c_value;
      CorpusSpec spec;
      spec.kind = corpus == "random" ? CorpusKind::random
                  : corpus == "cyclotomic" ? CorpusKind::cyclotomic : CorpusKind::exhaustive;
      spec.count = count;
      spec.n_max = n_max;
      auto rows = scan(spec, h);
      write_rows(std::cout, rows, h);
      write_summary(std::cout, summarize(rows, h), h);
    };
  });

  auto* search = app.add_subcommand("search", "Smallest positive Mahler measures in a coefficient box");
  int s_deg = 0, top_k = 1;
  long s_bound = 0, budget = HarnessConfig{}.budget;
  search->add_option("--deg-max", s_deg)->required()->check(CLI::Range(1, 64));
  search->add_option("--coeff-bound", s_bound)->required()->check(CLI::Range(1L, 1000000L));
  search->add_option("--top-k", top_k)->required()->check(CLI::NonNegativeNumber);
  search->add_option("--budget", budget, "Candidates examined at most")->check(CLI::PositiveNumber);
  search->callback([&] {
    action = [&] {
      HarnessConfig h = harness_config(g);
      h.budget = budget;
      SearchResult res = search_small_mahler(s_deg, s_bound, top_k, h);
      write_rows(std::cout, res.rows, h);
      write_coverage(std::cout, res.coverage, h);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  action();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "lehmerqt: " << e.what() << "\n";
    return 1;
  } catch (const PrecisionError& e) {
    std::cerr << "lehmerqt: precision: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "lehmerqt: capacity: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "lehmerqt: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "lehmerqt: " << e.what() << "\n";
    return 1;
  }
}
