#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>

#include "biharm/jet.hpp"
#include "biharm/profile.hpp"

using namespace biharm;

namespace {

// Central differences of a scalar function; step sizes tuned per order.
double fd(const std::function<double(double)>& f, double x, int k) {
  switch (k) {
    case 1: {
      const double h = 1e-5;
      return (f(x + h) - f(x - h)) / (2 * h);
    }
    case 2: {
      const double h = 1e-4;
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    }
    case 3: {
      const double h = 1e-3;
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    }
    default: {
      const double h = 1e-2;
      return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (h * h * h * h);
    }
  }
}

void check_against_fd(const std::function<Jet4(const Jet4&)>& jf, const std::function<double(double)>& f,
                      double x) {
  const Jet4 j = jf(Jet4::variable(x));
  CHECK(j[0] == doctest::Approx(f(x)).epsilon(1e-14));
  const double tol[] = {0, 1e-8, 1e-6, 1e-4, 1e-3};
  for (int k = 1; k <= 4; ++k) {
    const double ref = fd(f, x, k);
    CHECK(std::abs(j.derivative(k) - ref) <= tol[k] * (1 + std::abs(ref)));
  }
}

}  // namespace

TEST_CASE("sine jet at pi/2 has value 1 and second derivative -1") {
  const Jet4 s = sin(Jet4::variable(std::numbers::pi / 2));
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(std::abs(s[1]) < 1e-15);
  CHECK(s[2] == doctest::Approx(-0.5));
  CHECK(s.derivative(2) == doctest::Approx(-1.0));
  CHECK(s.derivative(4) == doctest::Approx(1.0));
}

TEST_CASE("elementary functions agree with finite differences") {
  check_against_fd([](const Jet4& a) { return exp(a); }, [](double x) { return std::exp(x); }, 0.3);
  check_against_fd([](const Jet4& a) { return log(a); }, [](double x) { return std::log(x); }, 1.7);
  check_against_fd([](const Jet4& a) { return tan(a); }, [](double x) { return std::tan(x); }, 0.4);
  check_against_fd([](const Jet4& a) { return cot(a); }, [](double x) { return 1 / std::tan(x); }, 1.1);
  check_against_fd([](const Jet4& a) { return sqrt(a); }, [](double x) { return std::sqrt(x); }, 2.5);
  check_against_fd([](const Jet4& a) { return atan(a); }, [](double x) { return std::atan(x); }, -0.8);
  check_against_fd([](const Jet4& a) { return acos(a); }, [](double x) { return std::acos(x); }, 0.35);
  check_against_fd([](const Jet4& a) { return pow(a, 1.5); }, [](double x) { return std::pow(x, 1.5); }, 1.3);
  check_against_fd([](const Jet4& a) { return pow(a, 3.0); }, [](double x) { return x * x * x; }, -1.3);
  check_against_fd([](const Jet4& a) { return abs(a); }, [](double x) { return std::abs(x); }, -0.6);
  check_against_fd([](const Jet4& a) { return sin(a) / (1.0 + a * a); },
                   [](double x) { return std::sin(x) / (1 + x * x); }, 0.9);
}

TEST_CASE("product rule matches closed form of x^2 e^x") {
  const double x = 0.7;
  const Jet4 j = Jet4::variable(x) * Jet4::variable(x) * exp(Jet4::variable(x));
  // d^4/dx^4 x^2 e^x = (x^2 + 8x + 12) e^x
  CHECK(j.derivative(4) == doctest::Approx((x * x + 8 * x + 12) * std::exp(x)).epsilon(1e-13));
}

TEST_CASE("derivative and integrate are inverse up to the constant") {
  const Jet4 g = sin(Jet4::variable(0.2)) * exp(Jet4::variable(0.2));
  const Jet4 back = integrate(derivative(g), g[0]);
  for (std::size_t k = 0; k < 4; ++k) CHECK(back[k] == doctest::Approx(g[k]).epsilon(1e-14));
  CHECK(derivative(g)[4] == 0.0);
}

TEST_CASE("compose expands outer around the inner value") {
  const double x = 0.5;
  const Jet4 inner = sin(Jet4::variable(x));
  const Jet4 outer = exp(Jet4::variable(inner[0]));
  const Jet4 direct = exp(sin(Jet4::variable(x)));
  const Jet4 composed = compose(outer, inner);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(composed[k] == doctest::Approx(direct[k]).epsilon(1e-13));
}

TEST_CASE("ln tan half stays accurate where tan blows up") {
  // d/dr ln tan(r/2) = 1/sin r exactly; compare against that series.
  for (double r : {1e-3, 0.5, 2.0, std::numbers::pi - 1e-3}) {
    const Jet4 t = builtin::ln_tan_half(Jet4::variable(r));
    const Jet4 inv = 1.0 / sin(Jet4::variable(r));
    CHECK(t[0] == doctest::Approx(std::log(std::tan(r / 2))).epsilon(1e-14));
    for (std::size_t k = 1; k <= 4; ++k)
      CHECK(t[k] * static_cast<double>(k) == doctest::Approx(inv[k - 1]).epsilon(1e-13));
  }
}

TEST_CASE("nan jet is not finite") {
  CHECK_FALSE(Jet4::nan().finite());
  CHECK(Jet4(2.0).finite());
  CHECK(Jet4(2.0).is_constant());
}
