#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "biharm/verify.hpp"

using namespace biharm;
using std::numbers::pi;

TEST_CASE("default grid is sorted, interior and sized per piece") {
  const VerificationCase c = build_case("kzt");
  const Grid g = default_grid(c);
  CHECK(g.points.size() == 3 * kDefaultGridN);
  CHECK(std::is_sorted(g.points.begin(), g.points.end()));
  const double z = 2 * std::atan(std::sqrt(2 + std::sqrt(3.0)));
  for (double r : g.points) {
    CHECK(std::abs(r - pi / 2) >= kDefaultExclusion);
    CHECK(std::abs(r - z) >= kDefaultExclusion);
    CHECK(r > kDefaultExclusion);
    CHECK(r < pi - kDefaultExclusion);
  }
}

TEST_CASE("identity sphere passes at 1e-10 with sup zero to rounding") {
  const VerificationCase c = build_case("identity-sphere");
  const ResidualReport rep = sweep(c, default_grid(c), 1e-10);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.sup <= 1e-12);
  CHECK(rep.skipped_points == 0);
  CHECK(rep.as_expected());
}

TEST_CASE("glob passes at 1e-8") {
  const VerificationCase c = build_case("glob");
  const ResidualReport rep = sweep(c, default_grid(c), 1e-8);
  CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("double wrap fails biharmonic mode with sup at least 1") {
  const VerificationCase c = build_case("double-wrap-nonbiharmonic");
  const ResidualReport rep = sweep(c, default_grid(c), 1e-8, Mode::biharmonic);
  CHECK(rep.verdict == Verdict::fail);
  CHECK(rep.sup >= 4.0 - 1e-6);
  CHECK(rep.as_expected());
  // Near pi/4 the bitension is -4.
  double near = 0.0;
  for (const PointResidual& p : rep.points)
    if (std::abs(p.r - pi / 4) < 5e-3) near = p.radial;
  CHECK(near == doctest::Approx(-4.0).epsilon(1e-2));
}

TEST_CASE("verdict is monotone in tolerance") {
  const VerificationCase c = build_case("riccati-double-wrap");
  const Grid g = default_grid(c, 128);
  const ResidualReport tight = sweep(c, g, 1e-12);
  const ResidualReport loose = sweep(c, g, 1e-6);
  CHECK(loose.verdict == Verdict::pass);
  for (double tol : {1e-6, 1e-4, 1.0}) CHECK(sweep(c, g, tol).verdict == Verdict::pass);
  CHECK(tight.verdict_sup == loose.verdict_sup);
}

TEST_CASE("doubling the grid does not flip closed-form passes") {
  for (const char* name : {"glob", "kzt", "kztt", "prop-2-12"}) {
    const VerificationCase c = build_case(name);
    CHECK(sweep(c, default_grid(c, 256), c.tolerance).verdict == Verdict::pass);
    CHECK(sweep(c, default_grid(c, 512), c.tolerance).verdict == Verdict::pass);
  }
}

TEST_CASE("too many skipped points make the report inconclusive") {
  const VerificationCase c = build_case("kztt");
  Grid g = default_grid(c, 64);
  // Points inside the exclusion ball of pi/2 are skipped by the evaluators.
  for (int i = 0; i < 10; ++i) g.points.push_back(pi / 2 + 1e-4 * (i + 1));
  std::sort(g.points.begin(), g.points.end());
  const ResidualReport rep = sweep(c, g, c.tolerance);
  CHECK(rep.skipped_points == 10);
  CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("oracle comparison on the identity is at rounding level") {
  const VerificationCase c = build_case("identity-sphere");
  const OracleComparison oc = compare_oracle(c, default_grid(c, 64));
  CHECK(oc.tension < 1e-14);
  CHECK(oc.bitension < 1e-14);
  CHECK_FALSE(oc.conformal.has_value());
  CHECK(oc.ok());
}

TEST_CASE("ps-special conformal oracle path agrees to 1e-6") {
  const VerificationCase c = build_case("ps-special");
  const OracleComparison oc = compare_oracle(c, default_grid(c, 64));
  REQUIRE(oc.conformal.has_value());
  CHECK(*oc.conformal <= 1e-6);
  CHECK(oc.ok());
}

TEST_CASE("JSON reports round-trip exactly") {
  const VerificationCase c = build_case("kzt");
  ResidualReport rep = sweep(c, default_grid(c, 32), c.tolerance);
  rep.oracle_sup = 1.25e-13;
  const nlohmann::json j = to_json(rep);
  CHECK(j["verdict"] == "pass");
  CHECK(j["grid"]["excluded"].size() == 2);
  const ResidualReport back = report_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.sup == rep.sup);
  CHECK(back.rms == rep.rms);
  CHECK(back.points.size() == rep.points.size());
  CHECK(back.points.back().radial == rep.points.back().radial);
  CHECK(back.parameters == rep.parameters);
  CHECK(back.oracle_sup == rep.oracle_sup);
  CHECK(to_json(back) == j);
}

TEST_CASE("malformed JSON reports raise IOError") {
  try {
    report_from_json(nlohmann::json{{"case", "x"}});
    FAIL("expected IOError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
}

TEST_CASE("CSV has one row per evaluated point") {
  const VerificationCase c = build_case("kztt");
  Grid g = default_grid(c, 40);
  g.points.push_back(pi / 2 + 1e-3);
  const ResidualReport rep = sweep(c, g, c.tolerance);
  std::ostringstream os;
  write_csv(rep, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "r,rho,f,x,residual_radial,residual_angular");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == g.points.size() - rep.skipped_points);
  CHECK(rep.skipped_points == 1);
}

TEST_CASE("emit_report writes files and reports unwritable paths") {
  const VerificationCase c = build_case("identity-sphere");
  const ResidualReport rep = sweep(c, default_grid(c, 16), 1e-10);
  const std::string path = "test_verify_report.json";
  emit_report(rep, ReportFormat::json, path);
  std::ifstream in(path);
  const ResidualReport back = report_from_json(nlohmann::json::parse(in));
  CHECK(back.case_name == "identity-sphere");
  std::remove(path.c_str());
  try {
    emit_report(rep, ReportFormat::csv, "/nonexistent-dir/report.csv");
    FAIL("expected IOError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
}

TEST_CASE("sweeps are deterministic") {
  const VerificationCase c = build_case("lfpyj");
  const Grid g = default_grid(c, 64);
  CHECK(to_json(sweep(c, g, c.tolerance)) == to_json(sweep(c, g, c.tolerance)));
}
