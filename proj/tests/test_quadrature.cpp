#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "biharm/quadrature.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

double simpson(double (*f)(double), double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double log_kernel(double r) { return std::log1p(r * r) / r; }

}  // namespace

TEST_CASE("Gauss-Kronrod reproduces closed-form integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0, pi).value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6, 6).value ==
        doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
  CHECK(integrate([](double x) { return 1 / x; }, 2, 1).value == doctest::Approx(-std::log(2.0)).epsilon(1e-13));
  // Integrable endpoint singularity needs many panels but converges.
  CHECK(integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-8).value ==
        doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("exhausting the panel budget throws ToleranceNotMet") {
  try {
    integrate([](double x) { return std::sin(1 / x); }, 1e-9, 1, 1e-14, 8);
    FAIL("expected ToleranceNotMet");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::tolerance_not_met);
  }
}

TEST_CASE("adaptive_quad refuses declared singularities inside the range") {
  const Profile p([](const Jet4& a) { return 1.0 / cos(a); }, Interval(0.0, pi), {pi / 2});
  CHECK(adaptive_quad(p, 0.1, 1.0) == doctest::Approx(std::log(1 / std::cos(1.0) + std::tan(1.0)) -
                                                          std::log(1 / std::cos(0.1) + std::tan(0.1))));
  try {
    adaptive_quad(p, 1.0, 2.0);
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_point);
  }
}

TEST_CASE("antiderivative of ln(1+r^2)/r matches composite Simpson") {
  const Profile k([](const Jet4& a) { return log(1.0 + a * a) / a; }, Interval(0.0, 100.0));
  const Profile F = antiderivative(k, 1.0);
  const double ref = simpson(log_kernel, 1.0, 2.0, 1'000'000);
  CHECK(ref == doctest::Approx(0.773736381787126).epsilon(1e-13));
  CHECK(F.value(2.0) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(F.value(1.0) == 0.0);
  // Jets above order 0 come from the integrand.
  const Jet4 j = F.jet(1.5);
  const Jet4 kj = k.jet(1.5);
  CHECK(j[1] == doctest::Approx(kj[0]));
  CHECK(j[2] * 2 == doctest::Approx(kj[1]));
}

TEST_CASE("antiderivative values do not depend on evaluation order") {
  const Profile k([](const Jet4& a) { return exp(sin(a)); }, Interval(0.0, 10.0));
  const Profile F1 = antiderivative(k, 5.0);
  const Profile F2 = antiderivative(k, 5.0);
  const double a = F1.value(9.3);
  F2.value(1.0);
  F2.value(7.7);
  CHECK(F2.value(9.3) == a);
  CHECK(F1.value(9.3) == a);
}

TEST_CASE("inverting the integral of 1/sin gives 2 arctan e^s") {
  const Profile inv_sin([](const Jet4& a) { return 1.0 / sin(a); }, Interval(0.0, pi));
  const MonotoneInverse mi = invert_antiderivative(inv_sin, pi / 2, Interval(0.1, pi - 0.1));
  for (double s : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
    const Jet4 r = mi.inverse.jet(s, 0.0);
    CHECK(r[0] == doctest::Approx(2 * std::atan(std::exp(s))).epsilon(1e-11));
    // dr/ds = sin r
    CHECK(r[1] == doctest::Approx(std::sin(r[0])).epsilon(1e-10));
    CHECK(2 * r[2] == doctest::Approx(std::sin(r[0]) * std::cos(r[0])).epsilon(1e-8));
  }
}

TEST_CASE("non-positive integrands cannot be inverted") {
  const Profile c([](const Jet4& a) { return cos(a); }, Interval(0.0, pi));
  try {
    invert_antiderivative(c, 1.0, Interval(0.5, 2.5));
    FAIL("expected InversionFailure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::inversion_failure);
  }
}
