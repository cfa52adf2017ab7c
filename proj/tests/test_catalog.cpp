#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biharm/catalog.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::io_error;
}

}  // namespace

TEST_CASE("catalog lists the named cases in a stable order") {
  const auto& names = case_names();
  CHECK(names.size() >= 12);
  for (const char* n : {"identity-sphere", "double-wrap-nonbiharmonic", "example-2-1", "example-2-2", "ps-family",
                        "ps-special", "prop-2-12", "glob", "kzt", "g3", "kztt", "riccati-double-wrap", "stcoy",
                        "lfpyj"})
    CHECK_MESSAGE(has(names, n), n);
  CHECK(names.front() == "identity-sphere");
  const auto cases = list_cases();
  REQUIRE(cases.size() == names.size());
  for (std::size_t i = 0; i < cases.size(); ++i) CHECK(cases[i].name == names[i]);
}

TEST_CASE("expected verdicts of the controls") {
  const VerificationCase id = build_case("identity-sphere");
  CHECK(id.mode == Mode::harmonic);
  CHECK(id.expected == Expected::pass);
  const VerificationCase dw = build_case("double-wrap-nonbiharmonic");
  CHECK(dw.expected == Expected::fail);
  CHECK(dw.factor.trivial);
}

TEST_CASE("glob factor at pi/2 is 8 3^(3/2) / 19") {
  const VerificationCase g = build_case("glob");
  // tan(pi/4) = 1: 4 * 2 * 3^(3/2) / (3 + 9 + 6 + 1)
  CHECK(g.factor.f.value(pi / 2) == doctest::Approx(8 * std::pow(3.0, 1.5) / 19).epsilon(1e-14));
  CHECK(g.map.k == 2.0);
}

TEST_CASE("ps-special rho(1) = ln 2") {
  const VerificationCase c = build_case("ps-special", {{"k", "1"}});
  CHECK(c.map.rho.value(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("identity-sphere has vanishing tension") {
  const VerificationCase c = build_case("identity-sphere");
  for (double r : {0.5, 1.5, 2.5}) CHECK(std::abs(tension_radial(c.map, r)) < 1e-14);
}

TEST_CASE("kzt sign chart flips at the declared singularities") {
  const VerificationCase c = build_case("kzt");
  const double z = 2 * std::atan(std::sqrt(2 + std::sqrt(3.0)));
  CHECK(std::pow(std::tan(z / 2), 2) == doctest::Approx(2 + std::sqrt(3.0)));
  REQUIRE(c.pieces.size() == 3);
  CHECK(c.pieces[0].hi == doctest::Approx(pi / 2));
  CHECK(c.pieces[1].hi == doctest::Approx(z));
  REQUIRE(c.factor.sign_chart.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double mid = c.pieces[i].mid();
    const double raw = c.factor.f(Jet4(mid))[0];
    CHECK((raw > 0) == (c.factor.sign_chart[i].sign > 0));
    CHECK(c.factor_at(mid).f(Jet4(mid))[0] > 0);
  }
  CHECK(c.factor.sign_chart[0].sign != c.factor.sign_chart[1].sign);
  CHECK(c.factor.sign_chart[1].sign != c.factor.sign_chart[2].sign);
}

TEST_CASE("g3 mirrors kzt") {
  const VerificationCase c = build_case("g3");
  CHECK(c.map.k == doctest::Approx(-std::sqrt(3.0)));
  REQUIRE(c.pieces.size() == 3);
  CHECK(c.pieces[0].hi == doctest::Approx(2 * std::atan(std::sqrt(2 - std::sqrt(3.0)))));
  CHECK(c.pieces[1].hi == doctest::Approx(pi / 2));
}

TEST_CASE("working intervals avoid singularities by the exclusion radius") {
  for (const VerificationCase& c : list_cases()) {
    std::vector<double> sing = c.factor.f.singularities();
    for (double s : c.map.rho.singularities()) sing.push_back(s);
    for (const Interval& w : c.working_intervals) {
      CHECK(w.lo >= c.map.source.coord.lo + kDefaultExclusion - 1e-15);
      CHECK(w.hi <= c.map.source.coord.hi - kDefaultExclusion + 1e-15);
      for (double s : sing) CHECK_MESSAGE(!(s > w.lo - kDefaultExclusion + 1e-12 && s < w.hi + kDefaultExclusion - 1e-12), c.name);
    }
  }
}

TEST_CASE("example-2-1 keeps only the part where f > 0") {
  const VerificationCase c = build_case("example-2-1");
  for (const Interval& w : c.working_intervals)
    for (double r = w.lo; r <= w.hi; r += w.width() / 50) CHECK(c.factor.f.value(r) > 0);
}

TEST_CASE("example-2-2 expectation follows k and C0") {
  CHECK(build_case("example-2-2").expected == Expected::fail);
  CHECK(build_case("example-2-2", {{"C0", "0"}}).expected == Expected::pass);
  CHECK(build_case("example-2-2", {{"C0", "0"}, {"k", "-1"}, {"C", "5"}}).expected == Expected::pass);
  CHECK(build_case("example-2-2", {{"C0", "0"}, {"k", "2"}}).expected == Expected::fail);
}

TEST_CASE("overrides are parsed as expressions and recorded") {
  const VerificationCase c = build_case("ps-family", {{"k", "sqrt(3)/2"}, {"C4", "0"}});
  CHECK(c.map.k == doctest::Approx(std::sqrt(3.0) / 2));
  bool seen = false;
  for (const auto& [k, v] : c.parameters)
    if (k == "C4") seen = v == "0";
  CHECK(seen);
}

TEST_CASE("bad overrides and names are rejected") {
  CHECK(code_of([] { build_case("no-such-case"); }) == Errc::unknown_case);
  CHECK(code_of([] { build_case("glob", {{"k", "3"}}); }) == Errc::invalid_override);
  CHECK(code_of([] { build_case("ps-family", {{"k", "1 +"}}); }) == Errc::invalid_override);
  CHECK(code_of([] { build_case("lfpyj", {{"A", "2"}}); }) == Errc::invalid_override);
  CHECK(code_of([] { build_case("lfpyj", {{"k", "0"}}); }) == Errc::invalid_override);
  CHECK(code_of([] { build_case("stcoy", {{"C1", "0"}, {"C2", "0"}}); }) == Errc::invalid_override);
  CHECK(code_of([] { mode_from_string("triharmonic"); }) == Errc::invalid_override);
}

TEST_CASE("mode names round-trip") {
  for (Mode m : {Mode::harmonic, Mode::biharmonic, Mode::f_biharmonic, Mode::conformal_biharmonic, Mode::riccati})
    CHECK(mode_from_string(to_string(m)) == m);
}

TEST_CASE("parameter documentation lists defaults") {
  const auto docs = case_parameters("stcoy");
  CHECK(docs.size() >= 10);
  CHECK(docs.front().name == "sigma");
  CHECK(docs.front().default_value == "sin(r)");
  CHECK(case_parameters("glob").empty());
}

TEST_CASE("stcoy with the sine warp reproduces the example-2-1 map") {
  const VerificationCase s = build_case("stcoy");
  const VerificationCase e = build_case("example-2-1");
  for (double r : {1.8, 2.3, 2.9}) {
    CHECK(s.map.rho.value(r) == doctest::Approx(e.map.rho.value(r)).epsilon(1e-9));
    // f = 1 + ln tan(r/2) since x = 1 and the kernel is 1/sin.
    CHECK(s.factor.f.value(r) == doctest::Approx(1 + std::log(std::tan(r / 2))).epsilon(1e-9));
  }
}

TEST_CASE("derived round sphere case has x = 1") {
  const VerificationCase c = derived_round_sphere_case(0.0, 1.0, 1.0);
  const Profile x = tension_profile(c.map);
  for (double s = 0.2; s < 3.0; s += 0.2) CHECK(x.value(s) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.factor.f.value(1.0) == doctest::Approx(std::log(std::tan(0.5))).epsilon(1e-9));
}
