#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef LEHMERQT_PATH
#define LEHMERQT_PATH "lehmerqt"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(LEHMERQT_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json first_line(const Run& r) { return nlohmann::json::parse(r.out.substr(0, r.out.find('\n'))); }

}  // namespace

TEST_CASE("cli single results") {
  Run r = cli("mahler 'x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1'");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["mahler"].get<double>() == doctest::Approx(0.1623576120).epsilon(1e-9));

  r = cli("mahler '1+x+y' --vars 2 --tol 1e-7");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["mahler"].get<double>() == doctest::Approx(0.3230659472).epsilon(1e-6));

  r = cli("height 'x^2-x-1'");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["height"].get<double>() == doctest::Approx(0.2406059125).epsilon(1e-9));

  r = cli("hs point --coords '1,T+1'");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["point"] == "[1:T+1]");

  r = cli("places eval 'T^2-2' --place closed:T^2-2");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["H"].get<double>() == doctest::Approx(2.0));

  r = cli("places eval '6/(T+1)' --place prime:3");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["abs"].get<double>() == doctest::Approx(1.0 / 3));

  r = cli("kronecker 'x^4+x^3+x^2+x+1'");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["status"] == "torsion");
  CHECK(first_line(r)["certificate"] == "Phi5(x)");

  r = cli("normalize 'x^2-T' 'x-2T^2-2'");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["check"] == true);

  r = cli("key2 '2;T'");
  REQUIRE(r.code == 0);
  CHECK(std::fabs(first_line(r)["defect"].get<double>()) < 1e-6);

  r = cli("product-formula '(T^2-2)/(3T+1)' --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("phi,closed_points,primes,circle,defect", 0) == 0);
}

TEST_CASE("cli scans") {
  Run r = cli("search --deg-max 2 --coeff-bound 1 --top-k 1");
  REQUIRE(r.code == 0);
  CHECK(first_line(r)["polynomial"] == "x^2-x-1");
  CHECK(r.out.find("\"coverage\"") != std::string::npos);

  r = cli("dobrowolski-scan --deg-max 4 --coeff-bound 1 --c 0.5");
  REQUIRE(r.code == 0);
  std::string last = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  auto s = nlohmann::json::parse(last)["summary"];
  CHECK(s["violations"] == 0);
  CHECK(s["c"].get<double>() == 0.5);

  r = cli("dobrowolski-scan --corpus cyclotomic --n-max 30 --deg-max 1 --coeff-bound 1 --timing");
  REQUIRE(r.code == 0);
  CHECK(first_line(r).contains("runtime_ms"));
  CHECK(first_line(r)["torsion"] == "torsion");

  std::string path = "lehmerqt_test_config.ini";
  std::ofstream(path) << "format=csv\nprecision-bits=256\n";
  r = cli("--config " + path + " height 'x^3-x-1'");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("polynomial,degree,height", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("cli exit codes") {
  CHECK(cli("mahler 'x^2+'").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("height 'x^2-1'").code == 1);
  CHECK(cli("places eval 'T' --place prime:4").code == 1);
  CHECK(cli("places eval '1/T' --place closed:T").code == 0);
  CHECK(cli("places eval 'T' --place circle:0").code == 0);
  CHECK(cli("key2 'root(x^3-T);T'").code == 3);
  CHECK(cli("dobrowolski-scan --deg-max 40 --coeff-bound 9").code == 3);
  CHECK(cli("mahler x --help").code == 0);
}
