#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "biharm/ode.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

WarpedSurface sphere(Interval i = Interval(0.0, pi)) { return {i, builtin::sine(i), "sphere"}; }

LinearODE2 cauchy_euler() {
  const Interval d(0.5, 10.0);
  return {Profile([](const Jet4& r) { return 1.0 / r; }, d), Profile::constant(0.0, d), d};
}

double t_of(double r) { return std::log(std::tan(r / 2)); }

}  // namespace

TEST_CASE("Cauchy-Euler solution ln r to 1e-9 with dense output") {
  const double e2 = std::exp(2.0);
  const ODESolution sol = solve_ivp(cauchy_euler(), 1.0, 0.0, 1.0, Interval(1.0, e2));
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double r = 1.0 + (e2 - 1.0) * i / 1000.0;
    const Jet4 y = sol.y(Jet4::variable(r));
    worst = std::max(worst, std::abs(y[0] - std::log(r)));
    CHECK(y[1] == doctest::Approx(1 / r).epsilon(1e-8));
  }
  CHECK(worst <= 1e-9);
  CHECK(sol.steps > 0);
}

TEST_CASE("harmonic oscillator integrates in both directions") {
  const Interval d(-10.0, 10.0);
  const LinearODE2 sys{Profile::constant(0.0, d), Profile::constant(1.0, d), d};
  const ODESolution sol = solve_ivp(sys, 0.0, 0.0, 1.0, Interval(-6.0, 6.0));
  for (double r : {-5.9, -2.0, 0.3, 4.0, 6.0}) CHECK(sol.y(Jet4(r))[0] == doctest::Approx(std::sin(r)).epsilon(1e-9));
  CHECK(std::abs(ode_residual(sys, sol.y, 1.234)) < 1e-8);
}

TEST_CASE("solver refuses singularities inside the span") {
  const Interval d(0.0, pi);
  const LinearODE2 sys{Profile([](const Jet4& r) { return 1.0 / cos(r); }, d, {pi / 2}), Profile::constant(0.0, d), d};
  try {
    solve_ivp(sys, 0.5, 1.0, 0.0, Interval(0.2, 2.0));
    FAIL("expected StepFailure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::step_failure);
  }
}

TEST_CASE("assembled system for the double wrap") {
  const Interval src(0.0, pi / 2);
  const RotSymMap m{sphere(src), sphere(), Profile([](const Jet4& a) { return 2.0 * a; }, src), 1.0};
  const LinearODE2 sys = assemble_system(m);
  const double r = 0.7;
  CHECK(sys.p.value(r) == doctest::Approx(std::cos(r) / std::sin(r)));
  CHECK(sys.q.value(r) == doctest::Approx(-std::cos(4 * r) / std::pow(std::sin(r), 2)));
}

TEST_CASE("t coordinates of the sphere are ln tan(r/2)") {
  const WarpedSurface s = sphere();
  const RotSymMap m{s, s, Profile::identity(s.coord), 2.0};
  const LinearODE2 sys = assemble_system(m);
  const TCoordinates tc = to_t_coordinates(sys, m, Interval(0.2, pi - 0.2), pi / 2);
  CHECK(tc.t_of_r.value(1.0) == doctest::Approx(t_of(1.0)).epsilon(1e-12));
  // q_t = sigma^2 q = -k^2 cos 2r
  const double t = t_of(1.0);
  CHECK(tc.system.q.value(t, 0.0) == doctest::Approx(-4.0 * std::cos(2.0)).epsilon(1e-10));
}

TEST_CASE("reduction of order on a biharmonic plane map") {
  // sigma = r, lambda = sqrt(rho), k = 1, rho = (ln^2 r + r^2) / 4 gives x = 1,
  // so the bitension x'' + x'/r vanishes and y = f x must solve the system.
  const Interval h(0.0, kHalfLine);
  const Profile rho([](const Jet4& a) { return 0.25 * (log(a) * log(a) + a * a); }, h);
  const RotSymMap m{{h, Profile::identity(h), "plane"},
                    {h, Profile([](const Jet4& a) { return sqrt(a); }, h), "sqrt"},
                    rho,
                    1.0};
  const Interval working(0.2, 5.0);
  const Profile x = tension_profile(m);
  CHECK(x.value(1.7) == doctest::Approx(1.0).epsilon(1e-13));
  const ConformalFactor cf = reduction_of_order_factor(m, 1.0, 1.0, working, 1.0);
  const LinearODE2 sys = assemble_system(m);
  const Profile f = cf.f;
  const Profile y([f, x](const Jet4& a) { return f(a) * x(a); }, working, {}, "y", 2);
  for (double r : {0.3, 1.0, 2.0, 4.5}) CHECK(std::abs(ode_residual(sys, y, r)) < 1e-7);
  // f = 1 + ln r for x = 1 and sigma = r.
  CHECK(f.value(1.0) == doctest::Approx(1.0));
  CHECK(f.value(3.0) == doctest::Approx(1.0 + std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("reduction of order refuses bad inputs") {
  const WarpedSurface s = sphere();
  const RotSymMap identity{s, s, Profile::identity(s.coord), 1.0};
  try {
    reduction_of_order_factor(identity, 1.0, 1.0, Interval(0.5, 2.5));
    FAIL("expected XVanishes");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::x_vanishes);
  }
  const Interval src(0.0, pi / 2);
  const RotSymMap wrap{sphere(src), s, Profile([](const Jet4& a) { return 2.0 * a; }, src), 1.0};
  try {
    reduction_of_order_factor(wrap, 1.0, 1.0, Interval(0.2, 0.6));
    FAIL("expected NonBiharmonicInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_biharmonic_input);
  }
  CHECK_THROWS_AS(reduction_of_order_factor(wrap, 0.0, 0.0, Interval(0.2, 0.6)), Error);
}

TEST_CASE("scan_zeros and sign charts find sign changes") {
  const Profile c([](const Jet4& a) { return cos(a); }, Interval(0.0, 10.0));
  const auto zeros = scan_zeros(c, Interval(0.1, 9.0));
  REQUIRE(zeros.size() == 3);
  CHECK(zeros[0] == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(zeros[2] == doctest::Approx(5 * pi / 2).epsilon(1e-12));
  const auto charts = sign_chart_of(c, Interval(0.1, 9.0));
  REQUIRE(charts.size() == 4);
  CHECK(charts[0].sign == +1);
  CHECK(charts[1].sign == -1);
}

TEST_CASE("Cauchy-Euler rho closed forms") {
  const Profile special = cauchy_euler_rho(1.0, 0.0, 2.0, 1.0, 0.0);
  CHECK(special.value(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  const double r = 2.5;
  CHECK(special.value(r) == doctest::Approx(0.25 * std::pow(std::log(r), 2) + std::log1p(r * r)).epsilon(1e-14));
  // The C4 term needs int_1^2 ln(1+s^2)/s ds = 0.773736381787126.
  const Profile full = cauchy_euler_rho(0.0, 0.0, 0.0, 0.0, 1.0);
  CHECK(full.value(2.0) == doctest::Approx(std::log(2.0) * std::log(5.0) - 2 * 0.773736381787126).epsilon(1e-11));
}

TEST_CASE("polynomial rho in t = ln tan(r/2)") {
  const Profile p = prop212_rho(1.0, 1.0, 0.0, 0.0, 1.0);
  for (double r : {0.4, 1.5, 2.9}) {
    const double t = t_of(r);
    const double ref = std::pow(t, 6) / 30 + std::pow(t, 4) / 6 + 0.75 * t * t + 1;
    CHECK(p.value(r) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("Riccati residual excludes the pole of tan") {
  const Profile beta = Profile::constant(0.0, Interval(0.0, pi));
  CHECK(riccati_residual(beta, pi / 6) == doctest::Approx(0.0).scale(1.0));
  try {
    riccati_residual(beta, pi / 2 + 1e-3);
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_point);
  }
}

TEST_CASE("kzt ansatz coefficients and solution") {
  const KztCoefficients c = kzt_ansatz_coeffs();
  const double s3 = std::sqrt(3.0);
  CHECK(c.a0 == doctest::Approx(-26 - 15 * s3).epsilon(1e-12));
  CHECK(c.a1 == doctest::Approx(5 + 3 * s3).epsilon(1e-12));
  CHECK(c.a2 == 1.0);
  for (double res : c.residuals) CHECK(std::abs(res) <= 1e-12);
  const LinearODE2 sys = kzt_system();
  const Profile y = kzt_particular_solution(c);
  for (double t = -3.0; t <= 3.0; t += 0.25) CHECK(std::abs(ode_residual(sys, y, t)) <= 1e-9 * (1 + std::abs(y.value(t))));
}

TEST_CASE("lfpyj coefficient for A = 1") {
  const LinearODE2 sys = lfpyj_system(1.0, 0.5);
  const double t = 0.3;
  CHECK(sys.q.value(t) == doctest::Approx(-0.25 * std::cos(4 * std::atan(std::exp(t)))));
}

TEST_CASE("kztt phase follows (sqrt3/2) r") {
  const AmplitudePhase uv = kztt_amplitude_phase();
  const double s3 = std::sqrt(3.0);
  for (double t = -3.0; t <= 3.0; t += 0.5) {
    const double r = 2 * std::atan(std::exp(t));
    CHECK(uv.v.value(t) == doctest::Approx(s3 / 2 * (r - pi / 2)).epsilon(1e-10));
    CHECK(std::abs(kztt_amplitude_residual(uv, t)) <= 1e-9);
  }
}
