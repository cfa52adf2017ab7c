#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "biharm/oracle.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

WarpedSurface sphere(Interval i = Interval(0.0, pi)) { return {i, builtin::sine(i), "sphere"}; }

double rel(double a, double b, double scale) { return std::abs(a - b) / (1.0 + scale); }

}  // namespace

TEST_CASE("Christoffel symbols of the round sphere") {
  const WarpedSurface s = sphere();
  const RotSymMap m{s, s, Profile([](const Jet4& a) { return 0.5 * a + 0.3; }, s.coord), 1.0};
  const double r = 1.1;
  const ChristoffelData c = christoffel(m, r);
  CHECK(c.r_thth == doctest::Approx(-std::sin(r) * std::cos(r)));
  CHECK(c.th_rth == doctest::Approx(std::cos(r) / std::sin(r)));
  const double rho = 0.5 * r + 0.3;
  CHECK(c.rho_phph == doctest::Approx(-std::sin(rho) * std::cos(rho)));
  CHECK(c.ph_rhoph == doctest::Approx(std::cos(rho) / std::sin(rho)));
}

TEST_CASE("oracle agrees with the closed forms on random smooth maps") {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), k = 0.5 + 2 * u(rng);
    const Interval dom(0.5, 2.5);
    const WarpedSurface src{dom, Profile([a](const Jet4& x) { return x + a * x * x; }, dom), "poly"};
    const Interval tgt(0.0, 50.0);
    const WarpedSurface target{tgt, Profile([b](const Jet4& y) { return sqrt(y) * exp(-b * y); }, tgt), "tgt"};
    const RotSymMap m{src, target, Profile([c](const Jet4& x) { return 1.0 + c * x + sin(x); }, dom), k};
    for (double r = 0.6; r < 2.45; r += 0.1) {
      const Evaluated t = tension_terms(m, r);
      const Evaluated bt = bitension_terms(m, r);
      CHECK(rel(t.value, oracle_tension(m, r).radial, t.scale) < 1e-12);
      CHECK(rel(bt.value, oracle_bitension(m, r).radial, bt.scale) < 1e-10);
      CHECK(std::abs(oracle_bitension(m, r).angular) < 1e-10 * (1 + bt.scale));
    }
  }
}

TEST_CASE("conformal oracle through reparametrization matches the closed form") {
  const Interval dom(0.0, pi / 2);
  const RotSymMap m{sphere(dom), sphere(), Profile([](const Jet4& a) { return 2.0 * a; }, dom), 1.0};
  const ConformalFactor cf{Profile([](const Jet4& a) { return 1.0 + a * a; }, dom), {{dom, +1}}};
  const Reparametrization rp = reparametrize(m.source, cf, Interval(0.1, 1.4));
  for (double r : {0.2, 0.7, 1.3}) {
    const Evaluated e = conformal_bitension_terms(m, cf, r);
    CHECK(rel(e.value, oracle_conformal_bitension(m, rp, r).radial, e.scale) < 1e-8);
    CHECK(rel(e.value, oracle_conformal_bitension(m, cf, r).radial, e.scale) < 1e-8);
  }
  // s(r) is the integral of f^(-1/2) = 1/sqrt(1+r^2) from the midpoint.
  const double mid = 0.75;
  CHECK(rp.s_of_r.value(1.2) == doctest::Approx(std::asinh(1.2) - std::asinh(mid)).epsilon(1e-10));
  CHECK(rp.r_of_s.value(rp.s_of_r.value(1.2), 0.0) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("reparametrization requires a positive factor") {
  const Interval dom(0.0, pi);
  const ConformalFactor cf{Profile([](const Jet4& a) { return cos(a); }, dom), {{dom, +1}}};
  try {
    reparametrize(sphere(), cf, Interval(0.5, 2.5));
    FAIL("expected NonPositiveFactor");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_positive_factor);
  }
}
