#include "biharm/warped.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace biharm {

ConformalFactor ConformalFactor::identity(Interval domain) {
  ConformalFactor cf{Profile::constant(1.0, domain, "1"), {{domain, +1}}};
  cf.trivial = true;
  return cf;
}

int ConformalFactor::sign_at(double r) const {
  for (const auto& chart : sign_chart)
    if (chart.interval.contains_closed(r)) return chart.sign;
  return +1;
}

ConformalFactor ConformalFactor::negated() const {
  const Profile g = f;
  ConformalFactor out{Profile([g](const Jet4& a) { return -g(a); }, g.domain(), g.singularities(),
                              "-(" + g.label() + ")", g.valid_order()),
                      sign_chart};
  for (auto& chart : out.sign_chart) chart.sign = -chart.sign;
  return out;
}

TargetTerms target_terms(const RotSymMap& m, const Jet4& rho_series) {
  const Jet4 lam = m.target.warp(Jet4::variable(rho_series[0]));
  const Jet4 ll = lam * derivative(lam);
  return {compose(ll, rho_series), ll[1], lam[0], lam[1]};
}

namespace {

std::vector<double> merged_singularities(const RotSymMap& m) {
  std::vector<double> s = m.rho.singularities();
  const auto& w = m.source.warp.singularities();
  s.insert(s.end(), w.begin(), w.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Everything the radial formulas need at one point.
struct PointData {
  Jet4 x;           // tension series, exact to order 2
  Jet4 x_mag;       // coefficientwise sum of |terms| that x is summed from
  double p;         // sigma'/sigma
  double sigma;
  double q_target;  // k^2 (lambda lambda')'(rho) / sigma^2
  TargetTerms target;
};

struct TensionParts {
  Jet4 a, b, c;  // x = a + b - c
};

TensionParts tension_parts(const RotSymMap& m, double r) {
  const Jet4 rho = m.rho(Jet4::variable(r));
  const Jet4 sigma = m.source.warp(Jet4::variable(r));
  const Jet4 d_rho = derivative(rho);
  const TargetTerms t = target_terms(m, rho);
  return {derivative(d_rho), derivative(sigma) / sigma * d_rho,
          m.k * m.k * t.lambda_lambda_prime / (sigma * sigma)};
}

Jet4 tension_series(const RotSymMap& m, double r) {
  const TensionParts t = tension_parts(m, r);
  return t.a + t.b - t.c;
}

Jet4 tension_magnitude(const RotSymMap& m, double r) {
  const TensionParts t = tension_parts(m, r);
  Jet4 mag;
  for (std::size_t j = 0; j <= Jet4::order; ++j)
    mag[j] = std::abs(t.a[j]) + std::abs(t.b[j]) + std::abs(t.c[j]);
  return mag;
}

PointData point_data(const RotSymMap& m, double r, double exclusion) {
  PointData d;
  d.x = tension_profile(m).jet(r, exclusion);
  d.x_mag = tension_magnitude(m, r);
  const Jet4 sigma = m.source.warp.jet(r, exclusion);
  const Jet4 rho = m.rho.jet(r, exclusion);
  d.sigma = sigma[0];
  d.p = sigma[1] / sigma[0];
  d.target = target_terms(m, rho);
  d.q_target = m.k * m.k * d.target.lambda_lambda_prime_d / (sigma[0] * sigma[0]);
  if (!std::isfinite(d.q_target) || !std::isfinite(d.target.lambda)) {
    std::ostringstream os;
    os << "target warp not finite at rho = " << rho[0];
    throw Error(Errc::singular_point, os.str());
  }
  return d;
}

}  // namespace

Profile tension_profile(const RotSymMap& m) {
  return Profile([m](const Jet4& a) { return compose(tension_series(m, a[0]), a); },
                 m.source.coord, merged_singularities(m), "x", 2);
}

Evaluated tension_terms(const RotSymMap& m, double r, double exclusion) {
  const Jet4 rho = m.rho.jet(r, exclusion);
  const Jet4 sigma = m.source.warp.jet(r, exclusion);
  const TargetTerms t = target_terms(m, rho);
  const double a = 2.0 * rho[2];
  const double b = sigma[1] / sigma[0] * rho[1];
  const double c = m.k * m.k * t.lambda_lambda_prime[0] / (sigma[0] * sigma[0]);
  const double value = a + b - c;
  if (!std::isfinite(value)) throw Error(Errc::singular_point, "tension not finite");
  return {value, std::abs(a) + std::abs(b) + std::abs(c)};
}

double tension_radial(const RotSymMap& m, double r, double exclusion) {
  return tension_terms(m, r, exclusion).value;
}

Evaluated bitension_terms(const RotSymMap& m, double r, double exclusion) {
  const PointData d = point_data(m, r, exclusion);
  const double x0 = d.x[0];
  const double x1 = d.x[1];
  const double x2 = 2.0 * d.x[2];
  const double value = x2 + d.p * x1 - d.q_target * x0;
  return {value, 2.0 * d.x_mag[2] + std::abs(d.p) * d.x_mag[1] + std::abs(d.q_target) * d.x_mag[0]};
}

double bitension_radial(const RotSymMap& m, double r, double exclusion) {
  return bitension_terms(m, r, exclusion).value;
}

Evaluated f_bitension_terms(const RotSymMap& m, const ConformalFactor& cf, double r,
                            double exclusion) {
  const Evaluated tau2 = bitension_terms(m, r, exclusion);
  const PointData d = point_data(m, r, exclusion);
  const Jet4 f = cf.f.jet(r, exclusion);
  const double f1 = f[1];
  const double laplace_f = 2.0 * f[2] + d.p * f1;
  const double a = f[0] * tau2.value;
  const double b = laplace_f * d.x[0];
  const double c = 2.0 * f1 * d.x[1];
  return {a + b + c, std::abs(f[0]) * tau2.scale + std::abs(laplace_f) * d.x_mag[0] +
                        2.0 * std::abs(f1) * d.x_mag[1]};
}

TensionValue f_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                         double exclusion) {
  return {f_bitension_terms(m, cf, r, exclusion).value, 0.0};
}

Evaluated conformal_bitension_terms(const RotSymMap& m, const ConformalFactor& cf, double r,
                                    double exclusion) {
  const Jet4 f = cf.f.jet(r, exclusion);
  if (!(f[0] > 0.0)) {
    std::ostringstream os;
    os << "conformal factor f(" << r << ") = " << f[0] << " is not positive";
    throw Error(Errc::non_positive_factor, os.str());
  }
  const PointData d = point_data(m, r, exclusion);
  const Jet4 log_f = log(f);
  const double l1 = log_f[1];
  const double laplace_log_f = 2.0 * log_f[2] + d.p * l1;
  const double x0 = d.x[0];
  const double x1 = d.x[1];
  const double x2 = 2.0 * d.x[2];
  const double f2 = f[0] * f[0];
  const double c1 = d.p + 2.0 * l1;
  const double c0 = laplace_log_f + l1 * l1 - d.q_target;
  const double value = f2 * (x2 + c1 * x1 + c0 * x0);
  const double scale = f2 * (2.0 * d.x_mag[2] + std::abs(c1) * d.x_mag[1] +
                             (std::abs(laplace_log_f + l1 * l1) + std::abs(d.q_target)) * d.x_mag[0]);
  return {value, scale};
}

TensionValue conformal_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                                 double exclusion) {
  return {conformal_bitension_terms(m, cf, r, exclusion).value, 0.0};
}

double theta_obstruction(const RotSymMap& m, double r, double exclusion) {
  const PointData d = point_data(m, r, exclusion);
  return m.k * d.target.lambda_prime * d.x[0] / (d.sigma * d.sigma * d.target.lambda);
}

double gauss_curvature(const WarpedSurface& s, double r, double exclusion) {
  const Jet4 w = s.warp.jet(r, exclusion);
  return -2.0 * w[2] / w[0];
}

}  // namespace biharm
