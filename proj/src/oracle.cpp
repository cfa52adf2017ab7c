#include "biharm/oracle.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace biharm {

namespace {

using Vec2 = std::array<Jet4, 2>;
using Mat2 = std::array<Vec2, 2>;
using Sym3 = std::array<Mat2, 2>;  // Gamma[k][i][j]

// Levi-Civita connection of diag(1, w(u)^2) where only u (index 0) varies.
// `w2` is the series of w^2 in u.
Sym3 christoffel_from_metric(const Jet4& w2) {
  Mat2 g{};
  g[0][0] = Jet4(1.0);
  g[1][1] = w2;
  Mat2 g_inv{};
  g_inv[0][0] = Jet4(1.0);
  g_inv[1][1] = 1.0 / w2;
  // dg[l][i][j] = d_l g_ij; nothing depends on the angular coordinate.
  Sym3 dg{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) dg[0][i][j] = derivative(g[i][j]);
  Sym3 gamma{};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          gamma[k][i][j] += 0.5 * g_inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
  return gamma;
}

// Everything about the map expanded in the local source coordinate u around
// the evaluation point.
struct LocalMap {
  Jet4 sigma;
  Jet4 rho;
  Profile lambda;
  double k;
};

struct Geometry {
  Sym3 gamma_m;  // domain, series in u
  Sym3 gamma_n;  // target, composed with rho(u)
  Mat2 g_inv;
  Mat2 dphi;     // dphi[gamma][i] = d_i phi^gamma
  Sym3 ddphi;    // ddphi[gamma][i][j]
  double curvature_n;   // K of the target at rho
  double lambda_sq;     // h_{phi phi} at rho
};

Geometry build_geometry(const LocalMap& lm) {
  Geometry geo{};
  geo.gamma_m = christoffel_from_metric(lm.sigma * lm.sigma);

  const Jet4 lam = lm.lambda(Jet4::variable(lm.rho[0]));
  const Sym3 gamma_rho = christoffel_from_metric(lam * lam);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) geo.gamma_n[k][i][j] = compose(gamma_rho[k][i][j], lm.rho);

  geo.g_inv[0][0] = Jet4(1.0);
  geo.g_inv[1][1] = 1.0 / (lm.sigma * lm.sigma);
  geo.dphi[0][0] = derivative(lm.rho);
  geo.dphi[1][1] = Jet4(lm.k);
  geo.ddphi[0][0][0] = derivative(derivative(lm.rho));
  geo.curvature_n = -2.0 * lam[2] / lam[0];
  geo.lambda_sq = lam[0] * lam[0];
  return geo;
}

Vec2 tension_field(const Geometry& geo) {
  Vec2 tau{};
  for (int c = 0; c < 2; ++c)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Jet4 hess = geo.ddphi[c][i][j];
        for (int k = 0; k < 2; ++k) hess -= geo.gamma_m[k][i][j] * geo.dphi[c][k];
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) hess += geo.gamma_n[c][a][b] * geo.dphi[a][i] * geo.dphi[b][j];
        tau[c] += geo.g_inv[i][j] * hess;
      }
  return tau;
}

// Covariant derivative of a section V along phi in coordinate direction i.
Vec2 covariant(const Geometry& geo, const Vec2& v, int i) {
  Vec2 out{};
  for (int c = 0; c < 2; ++c) {
    out[c] = i == 0 ? derivative(v[c]) : Jet4(0.0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out[c] += geo.gamma_n[c][a][b] * geo.dphi[a][i] * v[b];
  }
  return out;
}

// Covariant derivative along a domain vector field with components z.
Vec2 covariant_along(const Geometry& geo, const Vec2& v, const Vec2& z) {
  Vec2 out{};
  for (int i = 0; i < 2; ++i) {
    const Vec2 d = covariant(geo, v, i);
    for (int c = 0; c < 2; ++c) out[c] += z[i] * d[c];
  }
  return out;
}

Vec2 bitension_field(const Geometry& geo, const Jet4& sigma) {
  const Vec2 tau = tension_field(geo);
  const std::array<Vec2, 2> frame = {Vec2{Jet4(1.0), Jet4(0.0)}, Vec2{Jet4(0.0), 1.0 / sigma}};

  Vec2 result{};
  for (const Vec2& e : frame) {
    // nabla^M_e e
    Vec2 nabla_e_e{};
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) {
        Jet4 term = i == 0 ? derivative(e[k]) : Jet4(0.0);
        for (int j = 0; j < 2; ++j) term += geo.gamma_m[k][i][j] * e[j];
        nabla_e_e[k] += e[i] * term;
      }
    const Vec2 first = covariant_along(geo, tau, e);
    const Vec2 second = covariant_along(geo, first, e);
    const Vec2 correction = covariant_along(geo, tau, nabla_e_e);
    for (int c = 0; c < 2; ++c) result[c] += second[c] - correction[c];

    // R^N(dphi(e), tau) dphi(e)
    std::array<double, 2> x{};
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 2; ++i) x[c] += e[i][0] * geo.dphi[c][i][0];
    auto inner = [&geo](const std::array<double, 2>& a, const std::array<double, 2>& b) {
      return a[0] * b[0] + geo.lambda_sq * a[1] * b[1];
    };
    const std::array<double, 2> t = {tau[0][0], tau[1][0]};
    const double tx = inner(t, x);
    const double xx = inner(x, x);
    for (int c = 0; c < 2; ++c) result[c][0] -= geo.curvature_n * (tx * x[c] - xx * t[c]);
  }
  return result;
}

LocalMap local_map(const RotSymMap& m, double r, double exclusion) {
  return {m.source.warp.jet(r, exclusion), m.rho.jet(r, exclusion), m.target.warp, m.k};
}

TensionValue finite_or_throw(double radial, double angular, double r) {
  if (!std::isfinite(radial) || !std::isfinite(angular)) {
    std::ostringstream os;
    os << "oracle evaluation not finite at " << r;
    throw Error(Errc::singular_point, os.str());
  }
  return {radial, angular};
}

}  // namespace

ChristoffelData christoffel(const RotSymMap& m, double r, double exclusion) {
  const LocalMap lm = local_map(m, r, exclusion);
  const Geometry geo = build_geometry(lm);
  return {geo.gamma_m[0][1][1][0], geo.gamma_m[1][0][1][0], geo.gamma_n[0][1][1][0],
          geo.gamma_n[1][0][1][0]};
}

TensionValue oracle_tension(const RotSymMap& m, double r, double exclusion) {
  const Geometry geo = build_geometry(local_map(m, r, exclusion));
  const Vec2 tau = tension_field(geo);
  return finite_or_throw(tau[0][0], tau[1][0], r);
}

TensionValue oracle_bitension(const RotSymMap& m, double r, double exclusion) {
  const LocalMap lm = local_map(m, r, exclusion);
  const Vec2 tau2 = bitension_field(build_geometry(lm), lm.sigma);
  return finite_or_throw(tau2[0][0], tau2[1][0], r);
}

Reparametrization reparametrize(const WarpedSurface& s, const ConformalFactor& cf, Interval working) {
  const Profile f = cf.f;
  for (int j = 0; j <= 64; ++j) {
    const double r = working.lo + working.width() * j / 64.0;
    const double v = f(Jet4(r))[0];
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "conformal factor not positive at r = " << r;
      throw Error(Errc::non_positive_factor, os.str());
    }
  }
  const Profile inv_sqrt_f([f](const Jet4& a) { return pow(f(a), -0.5); }, working,
                           f.singularities(), "f^(-1/2)", f.valid_order());
  const MonotoneInverse mono = invert_antiderivative(inv_sqrt_f, working.mid(), working);
  const Profile sigma = s.warp;
  const Profile r_of_s = mono.inverse;
  const Profile warp(
      [sigma, f, r_of_s](const Jet4& a) {
        const Jet4 r = r_of_s(a);
        return sigma(r) * pow(f(r), -0.5);
      },
      r_of_s.domain(), {}, "reparametrized " + sigma.label(),
      std::min(sigma.valid_order(), f.valid_order()));
  return {{r_of_s.domain(), warp, s.label + " (conformal)"}, mono.forward, r_of_s, mono.basepoint};
}

RotSymMap reparametrized_map(const RotSymMap& m, const Reparametrization& rp) {
  const Profile rho = m.rho;
  const Profile r_of_s = rp.r_of_s;
  Profile new_rho([rho, r_of_s](const Jet4& a) { return rho(r_of_s(a)); }, r_of_s.domain(), {},
                  "rho(r(s))", std::min(rho.valid_order(), r_of_s.valid_order()));
  return {rp.surface, m.target, new_rho, m.k};
}

TensionValue oracle_conformal_bitension(const RotSymMap& m, const Reparametrization& rp, double r) {
  const double s = rp.s_of_r(Jet4(r))[0];
  return oracle_bitension(reparametrized_map(m, rp), s, 0.0);
}

TensionValue oracle_conformal_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                                        double exclusion) {
  Interval working = m.source.coord.shrunk(exclusion);
  for (const auto& chart : cf.sign_chart)
    if (chart.interval.contains_interior(r)) working = chart.interval;
  if (cf.f.near_singularity(r, exclusion)) throw Error(Errc::singular_point, "point near singularity of f");
  return oracle_conformal_bitension(m, reparametrize(m.source, cf, working), r);
}

}  // namespace biharm
