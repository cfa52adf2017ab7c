#include "biharm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace biharm {

namespace {

constexpr int kMaxSeries = 6;
using Series = std::array<double, kMaxSeries + 1>;

constexpr std::size_t kMaxSteps = 1000000;
// Per-step error target relative to the requested tolerance; leaves room
// for accumulation over a few hundred steps.
constexpr double kStepSafety = 0.05;

// c[2..n] of the solution series from c[0], c[1] and the series of p, q at
// the same point: (k+2)(k+1) c_{k+2} = -sum_j p_j (k-j+1) c_{k-j+1} + q_j c_{k-j}.
void recurse(const Jet4& p, const Jet4& q, Series& c, int n) {
  for (int k = 0; k + 2 <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j)
      s += p[static_cast<std::size_t>(j)] * (k - j + 1) * c[static_cast<std::size_t>(k - j + 1)] +
           q[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
    c[static_cast<std::size_t>(k + 2)] = -s / ((k + 2) * (k + 1));
  }
}

bool finite_to(const Jet4& j, int order) {
  for (int k = 0; k <= order; ++k)
    if (!std::isfinite(j[static_cast<std::size_t>(k)])) return false;
  return true;
}

double horner(const Series& c, int n, double u) {
  double y = c[static_cast<std::size_t>(n)];
  for (int k = n; k-- > 0;) y = y * u + c[static_cast<std::size_t>(k)];
  return y;
}

double horner_derivative(const Series& c, int n, double u) {
  double y = n * c[static_cast<std::size_t>(n)];
  for (int k = n; k-- > 1;) y = y * u + k * c[static_cast<std::size_t>(k)];
  return y;
}

struct Segment {
  double lo;
  double hi;
  double a;
  Series c;
};

struct Trajectory {
  std::vector<Segment> segments;  // sorted by lo, contiguous
  int order;
};

[[noreturn]] void step_failure(double r, const std::string& why) {
  std::ostringstream os;
  os << "integration stopped at r = " << r << ": " << why;
  throw Error(Errc::step_failure, os.str());
}

void integrate_direction(const LinearODE2& sys, const InitialData& init, double end, double tol,
                         int n, double max_step, std::vector<Segment>& out) {
  const double dir = end > init.r0 ? 1.0 : -1.0;
  double a = init.r0;
  double y = init.y0;
  double dy = init.dy0;
  std::size_t steps = 0;
  while ((end - a) * dir > 0.0) {
    if (++steps > kMaxSteps) throw Error(Errc::tolerance_not_met, "step budget exhausted");
    const Jet4 P = sys.p(Jet4::variable(a));
    const Jet4 Q = sys.q(Jet4::variable(a));
    if (!finite_to(P, n - 2) || !finite_to(Q, n - 2)) step_failure(a, "coefficients not finite");
    Series c{};
    c[0] = y;
    c[1] = dy;
    recurse(P, Q, c, n);
    const double scale = std::max({1.0, std::abs(y), std::abs(dy)});
    double h = std::min(std::abs(end - a), max_step);
    for (int j = n - 1; j <= n; ++j) {
      const double cj = std::abs(c[static_cast<std::size_t>(j)]);
      if (cj > 0.0) h = std::min(h, 0.9 * std::pow(kStepSafety * tol * scale / cj, 1.0 / j));
    }
    if (!std::isfinite(h) || h < 1e-12 * std::max(1.0, std::abs(a))) step_failure(a, "step size collapsed");
    const double signed_h = dir * h;
    const double next = std::abs(end - a) - h <= 1e-15 * std::max(1.0, std::abs(end)) ? end : a + signed_h;
    const double u = next - a;
    y = horner(c, n, u);
    dy = horner_derivative(c, n, u);
    if (!std::isfinite(y) || !std::isfinite(dy)) step_failure(a, "solution not finite");
    out.push_back({std::min(a, next), std::max(a, next), a, c});
    a = next;
  }
}

}  // namespace

LinearODE2 assemble_system(const RotSymMap& m) {
  const Profile sigma = m.source.warp;
  const Profile rho = m.rho;
  const Profile lambda = m.target.warp;
  const double k = m.k;
  std::vector<double> sing = sigma.singularities();
  sing.insert(sing.end(), rho.singularities().begin(), rho.singularities().end());
  std::sort(sing.begin(), sing.end());
  sing.erase(std::unique(sing.begin(), sing.end()), sing.end());

  Profile p(
      [sigma](const Jet4& a) {
        const Jet4 s = sigma(Jet4::variable(a[0]));
        return compose(derivative(s) / s, a);
      },
      m.source.coord, sigma.singularities(), "sigma'/sigma", std::min(3, sigma.valid_order() - 1));
  Profile q(
      [sigma, rho, lambda, k](const Jet4& a) {
        const Jet4 s = sigma(Jet4::variable(a[0]));
        const Jet4 r = rho(Jet4::variable(a[0]));
        const Jet4 l = lambda(Jet4::variable(r[0]));
        const Jet4 d = derivative(l * derivative(l));
        return compose(-k * k * compose(d, r) / (s * s), a);
      },
      m.source.coord, sing, "-k^2 (lambda lambda')'(rho) / sigma^2",
      std::min({2, sigma.valid_order(), rho.valid_order(), lambda.valid_order() - 2}));
  return {p, q, m.source.coord};
}

TCoordinates to_t_coordinates(const LinearODE2& sys, const RotSymMap& m, Interval working,
                              std::optional<double> basepoint) {
  const Profile sigma = m.source.warp;
  const Profile inv_sigma([sigma](const Jet4& a) { return 1.0 / sigma(a); }, working,
                          sigma.singularities(), "1/sigma", sigma.valid_order());
  const double base = basepoint.value_or(working.mid());
  const MonotoneInverse mono = invert_antiderivative(inv_sigma, base, working);
  const Profile r_of_t = mono.inverse;
  const Profile q = sys.q;
  const Interval t_range = r_of_t.domain();
  Profile qt(
      [sigma, q, r_of_t](const Jet4& a) {
        const Jet4 r = r_of_t(a);
        const Jet4 s = sigma(r);
        return s * s * q(r);
      },
      t_range, {}, "sigma^2 q", std::min(q.valid_order(), r_of_t.valid_order()));
  return {{Profile::constant(0.0, t_range, "0"), qt, t_range}, mono.forward, r_of_t, base};
}

ODESolution solve_ivp(const LinearODE2& sys, double r0, double y0, double dy0, Interval target,
                      double tol) {
  if (!sys.domain.contains_interior(r0)) {
    std::ostringstream os;
    os << "initial point " << r0 << " outside the domain of the system";
    throw Error(Errc::out_of_domain, os.str());
  }
  const Interval span(std::min(target.lo, r0), std::max(target.hi, r0));
  if (!sys.domain.contains_closed(span.lo) || !sys.domain.contains_closed(span.hi))
    throw Error(Errc::out_of_domain, "integration span leaves the domain of the system");
  for (const Profile* coeff : {&sys.p, &sys.q})
    for (double s : coeff->singularities())
      if (span.contains_closed(s)) step_failure(s, "declared singularity inside the span");

  const int valid = std::min(sys.p.valid_order(), sys.q.valid_order());
  const int n = std::clamp(valid + 2, 2, kMaxSeries);
  const InitialData init{r0, y0, dy0};
  const double max_step = span.width() / 16.0;

  std::vector<Segment> backward;
  std::vector<Segment> forward;
  if (span.lo < r0) integrate_direction(sys, init, span.lo, tol, n, max_step, backward);
  if (span.hi > r0) integrate_direction(sys, init, span.hi, tol, n, max_step, forward);
  auto traj = std::make_shared<Trajectory>();
  traj->order = n;
  traj->segments.assign(backward.rbegin(), backward.rend());
  traj->segments.insert(traj->segments.end(), forward.begin(), forward.end());
  const std::size_t steps = traj->segments.size();

  const Profile p = sys.p;
  const Profile q = sys.q;
  const int jet_order = std::min(4, valid + 2);
  Profile y(
      [traj, p, q, jet_order](const Jet4& arg) {
        const double x = arg[0];
        const auto& segs = traj->segments;
        if (segs.empty() || x < segs.front().lo || x > segs.back().hi) return Jet4::nan();
        auto it = std::upper_bound(segs.begin(), segs.end(), x,
                                   [](double v, const Segment& s) { return v < s.lo; });
        const Segment& seg = it == segs.begin() ? segs.front() : *(it - 1);
        Series c{};
        c[0] = horner(seg.c, traj->order, x - seg.a);
        c[1] = horner_derivative(seg.c, traj->order, x - seg.a);
        recurse(p(Jet4::variable(x)), q(Jet4::variable(x)), c, jet_order);
        Jet4 series(c[0]);
        for (std::size_t k = 1; k <= 4; ++k) series[k] = static_cast<int>(k) <= jet_order ? c[k] : 0.0;
        return compose(series, arg);
      },
      span, {}, "y", jet_order);
  return {y, init, span, steps};
}

double ode_residual(const LinearODE2& sys, const Profile& y, double r, double exclusion) {
  const Jet4 Y = y.jet(r, exclusion);
  const Jet4 P = sys.p.jet(r, exclusion);
  const Jet4 Q = sys.q.jet(r, exclusion);
  return 2.0 * Y[2] + P[0] * Y[1] + Q[0] * Y[0];
}

std::vector<double> scan_zeros(const Profile& p, Interval working) {
  auto value = [&p](double r) { return p(Jet4(r))[0]; };
  std::vector<double> zeros;
  const std::size_t n = kZeroScanPoints;
  double prev_r = working.lo;
  double prev_v = value(prev_r);
  for (std::size_t j = 1; j <= n; ++j) {
    const double r = working.lo + working.width() * static_cast<double>(j) / static_cast<double>(n);
    const double v = value(r);
    if (!std::isfinite(v)) {
      prev_r = r;
      prev_v = v;
      continue;
    }
    if (v == 0.0 && j < n) {
      zeros.push_back(r);
    } else if (std::isfinite(prev_v) && prev_v != 0.0 && (prev_v < 0.0) != (v < 0.0)) {
      double lo = prev_r;
      double hi = r;
      double vlo = prev_v;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = value(mid);
        if (vm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((vm < 0.0) == (vlo < 0.0)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    prev_r = r;
    prev_v = v;
  }
  return zeros;
}

std::vector<SignChart> sign_chart_of(const Profile& f, Interval working) {
  std::vector<double> knots = {working.lo};
  for (double z : scan_zeros(f, working))
    if (z > knots.back()) knots.push_back(z);
  if (working.hi > knots.back()) knots.push_back(working.hi);
  std::vector<SignChart> chart;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Interval piece(knots[i], knots[i + 1]);
    const double v = f(Jet4(piece.mid()))[0];
    chart.push_back({piece, v < 0.0 ? -1 : +1});
  }
  return chart;
}

ConformalFactor reduction_of_order_factor(const RotSymMap& m, double C1, double C2,
                                          Interval working, std::optional<double> basepoint) {
  if (C1 == 0.0 && C2 == 0.0) throw Error(Errc::invalid_override, "C1 and C2 both vanish");
  const double base = basepoint.value_or(working.mid());
  if (!working.contains_closed(base)) {
    std::ostringstream os;
    os << "basepoint " << base << " outside the working interval";
    throw Error(Errc::out_of_domain, os.str());
  }
  const Profile x = tension_profile(m);
  double sup_res = 0.0;
  double sup_x = 0.0;
  double sup_xpp = 0.0;
  for (std::size_t j = 0; j < kZeroScanPoints; ++j) {
    const double r = working.lo + working.width() * (static_cast<double>(j) + 0.5) /
                                      static_cast<double>(kZeroScanPoints);
    const Jet4 X = x.jet(r, 0.0);
    if (std::abs(X[0]) < kXVanishTol) {
      std::ostringstream os;
      os << "tension x(" << r << ") = " << X[0] << " vanishes";
      throw Error(Errc::x_vanishes, os.str());
    }
    sup_x = std::max(sup_x, std::abs(X[0]));
    sup_xpp = std::max(sup_xpp, std::abs(2.0 * X[2]));
    sup_res = std::max(sup_res, std::abs(bitension_terms(m, r, 0.0).value));
  }
  const double normalized = sup_res / (1.0 + sup_x + sup_xpp);
  if (!(normalized <= kBiharmonicInputTol)) {
    std::ostringstream os;
    os << "map is not biharmonic on the working interval (normalized bitension " << normalized << ")";
    throw Error(Errc::non_biharmonic_input, os.str());
  }

  Profile f = Profile::constant(C1, working, "C1");
  if (C2 != 0.0) {
    const Profile sigma = m.source.warp;
    const Profile integrand(
        [x, sigma](const Jet4& a) {
          const Jet4 X = x(a);
          return 1.0 / (X * X * sigma(a));
        },
        working, x.singularities(), "x^-2 sigma^-1", x.valid_order());
    const Profile I = antiderivative(integrand, base);
    f = Profile([I, C1, C2](const Jet4& a) { return C1 + C2 * I(a); }, working, I.singularities(),
                "C1 + C2 int(x^-2 sigma^-1)", I.valid_order());
  }
  return {f, sign_chart_of(f, working)};
}

Profile cauchy_euler_rho(double k, double C1, double C2, double C3, double C4) {
  const Interval half_line(0.0, kHalfLine);
  JetFn closed = [k, C1, C2, C3, C4](const Jet4& a) {
    const Jet4 l = log(a);
    const Jet4 l1 = log(1.0 + a * a);
    return C1 + (C2 - 2.0 * C3) * l + C3 * l1 + C4 * l * l1 + 0.25 * k * k * l * l;
  };
  if (C4 == 0.0) return Profile(closed, half_line, {}, "rho (Cauchy-Euler)");
  const Profile kernel([](const Jet4& a) { return log(1.0 + a * a) / a; }, half_line, {},
                       "ln(1+r^2)/r");
  const Profile dilog = antiderivative(kernel, 1.0);
  return Profile([closed, dilog, C4](const Jet4& a) { return closed(a) - 2.0 * C4 * dilog(a); },
                 half_line, {}, "rho (Cauchy-Euler)", dilog.valid_order());
}

Profile prop212_rho(double k, double C1, double C2, double C3, double C4) {
  const std::array<double, 8> c = {C4,       C3,       C1 / 2.0 + k * k / 4.0, C2 / 6.0,
                                   C1 / 6.0, C2 / 10.0, C1 / 30.0,            C2 / 42.0};
  const Profile t = builtin::log_tan_half();
  return Profile(
      [c, t](const Jet4& a) {
        const Jet4 tt = t(a);
        Jet4 r(c[7]);
        for (std::size_t j = 7; j-- > 0;) r = r * tt + c[j];
        return r;
      },
      t.domain(), {}, "rho (polynomial in ln tan(r/2))");
}

double riccati_residual(const Profile& beta, double r, double exclusion) {
  if (std::abs(r - std::numbers::pi / 2.0) < exclusion) {
    std::ostringstream os;
    os << "r = " << r << " is within " << exclusion << " of the pole of tan at pi/2";
    throw Error(Errc::singular_point, os.str());
  }
  const Jet4 B = beta.jet(r, exclusion);
  const double b1 = B[1];
  const double b2 = 2.0 * B[2];
  const double s = std::sin(r);
  const double value = b2 + (3.0 / std::tan(r) - 2.0 * std::tan(r)) * b1 + 2.0 * b1 * b1 + 1.0 - 4.0 * s * s;
  if (!std::isfinite(value)) throw Error(Errc::singular_point, "Riccati residual not finite");
  return value;
}

KztCoefficients kzt_ansatz_coeffs() {
  const double s3 = std::sqrt(3.0);
  using Row = std::array<double, 3>;
  const std::array<Row, 3> rows = {Row{2.0 * (2.0 - s3), s3 + 1.0, 0.0},
                                   Row{2.0 * (2.0 - s3), 2.0, 2.0 * (2.0 + s3)},
                                   Row{0.0, 1.0 - s3, 2.0 * (2.0 + s3)}};
  auto cross = [](const Row& u, const Row& v) {
    return Row{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  };
  // The system has rank two; the cross product of two independent rows spans
  // its kernel. Take the best-conditioned pair.
  Row best{};
  double best_norm = -1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Row c = cross(rows[i], rows[j]);
      const double nrm = std::hypot(c[0], c[1], c[2]);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
  const Row a = {best[0] / best[2], best[1] / best[2], 1.0};
  KztCoefficients out{a[0], a[1], a[2], {}};
  for (std::size_t i = 0; i < 3; ++i)
    out.residuals[i] = rows[i][0] * a[0] + rows[i][1] * a[1] + rows[i][2] * a[2];
  return out;
}

LinearODE2 kzt_system() {
  const Interval t_range(-kTRange, kTRange);
  const Profile q(
      [](const Jet4& t) {
        const Jet4 e = exp(2.0 * t);
        const Jet4 d = 1.0 + e;
        return -3.0 * (e * e - 6.0 * e + 1.0) / (d * d);
      },
      t_range, {}, "-3 (e^4t - 6 e^2t + 1)/(1 + e^2t)^2");
  return {Profile::constant(0.0, t_range, "0"), q, t_range};
}

Profile kzt_particular_solution(const KztCoefficients& c) {
  const double s3 = std::sqrt(3.0);
  return Profile(
      [c, s3](const Jet4& t) {
        const Jet4 e = exp(2.0 * t);
        const Jet4 d = 1.0 + e;
        return exp(s3 * t) * (c.a0 + c.a1 * e + c.a2 * e * e) / (d * d);
      },
      Interval(-kTRange, kTRange), {}, "y (ansatz)");
}

LinearODE2 lfpyj_system(double A, double k) {
  const Interval t_range(-kTRange, kTRange);
  const Profile q([A, k](const Jet4& t) { return -k * k * cos(4.0 * A * atan(exp(t))); }, t_range,
                  {}, "-k^2 cos(4 A arctan e^t)");
  return {Profile::constant(0.0, t_range, "0"), q, t_range};
}

AmplitudePhase kztt_amplitude_phase() {
  const Interval t_range(-kTRange, kTRange);
  const Profile u([](const Jet4& t) { return sqrt((1.0 + exp(2.0 * t)) / exp(t)); }, t_range, {},
                  "u");
  const double s3 = std::sqrt(3.0);
  const Profile dv(
      [u, s3](const Jet4& t) {
        const Jet4 uu = u(t);
        return s3 / (uu * uu);
      },
      t_range, {}, "sqrt3/u^2");
  return {u, antiderivative(dv, 0.0, kDefaultQuadTol, "v")};
}

double kztt_amplitude_residual(const AmplitudePhase& uv, double t) {
  const Jet4 U = uv.u.jet(t, 0.0);
  const Jet4 V = uv.v.jet(t, 0.0);
  const double e = std::exp(2.0 * t);
  const double w = (e * e - 6.0 * e + 1.0) / (4.0 * (1.0 + e) * (1.0 + e));
  return 2.0 * U[2] - (V[1] * V[1] + w) * U[0];
}

}  // namespace biharm
