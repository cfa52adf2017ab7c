#pragma once

// Tension and bitension of rotationally symmetric maps
//   phi(r, theta) = (rho(r), k theta)
// from (M, dr^2 + sigma(r)^2 dtheta^2) into (N, drho^2 + lambda(rho)^2 dphi^2),
// including the conformally changed domain metric f^{-1} g.

#include <string>
#include <vector>

#include "biharm/profile.hpp"

namespace biharm {

struct WarpedSurface {
  Interval coord;
  Profile warp;  // sigma on a domain, lambda on a target
  std::string label;
};

struct RotSymMap {
  WarpedSurface source;
  WarpedSurface target;
  Profile rho;
  double k;
};

struct SignChart {
  Interval interval;
  int sign;  // +1 or -1
};

/// The factor f of the conformal change g -> f^{-1} g, depending on r only.
struct ConformalFactor {
  Profile f;
  std::vector<SignChart> sign_chart;

  /// f == 1 on `domain`.
  static ConformalFactor identity(Interval domain);
  /// Sign declared by the chart containing r (+1 when no chart covers r).
  int sign_at(double r) const;
  /// The same factor multiplied by -1, charts flipped.
  ConformalFactor negated() const;

  bool trivial = false;
};

/// Components of a field along the map: coefficients of d/drho and d/dphi.
struct TensionValue {
  double radial;
  double angular;
};

/// A residual with the magnitude of the terms it was summed from, including
/// the terms inside x and its derivatives. eps * scale estimates the rounding
/// floor of `value`.
struct Evaluated {
  double value;
  double scale;
};

/// x(r) = rho'' + (sigma'/sigma) rho' - k^2 lambda lambda'(rho) / sigma^2 as a
/// derived profile on the source coordinate. Its jets are exact to order 2.
Profile tension_profile(const RotSymMap& m);

double tension_radial(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);
Evaluated tension_terms(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);

/// d/drho coefficient of tau_2(phi, g).
double bitension_radial(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);
Evaluated bitension_terms(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);

/// f tau_2 + (Delta f) tau + 2 nabla_{grad f} tau for radial f.
TensionValue f_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                         double exclusion = kDefaultExclusion);
Evaluated f_bitension_terms(const RotSymMap& m, const ConformalFactor& cf, double r,
                            double exclusion = kDefaultExclusion);

/// tau_2(phi, f^{-1} g). NonPositiveFactor when f(r) <= 0.
TensionValue conformal_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                                 double exclusion = kDefaultExclusion);
Evaluated conformal_bitension_terms(const RotSymMap& m, const ConformalFactor& cf, double r,
                                    double exclusion = kDefaultExclusion);

/// Coefficient k lambda'(rho) x / (sigma^2 lambda) that multiplies f_theta in
/// the angular part of the conformal bitension.
double theta_obstruction(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);

/// K = -warp'' / warp.
double gauss_curvature(const WarpedSurface& s, double r, double exclusion = kDefaultExclusion);

/// Series at r of (lambda lambda')(rho(.)) in the source coordinate and the
/// derivative (lambda lambda')'(rho(r)) with respect to rho.
struct TargetTerms {
  Jet4 lambda_lambda_prime;  // exact to order 3
  double lambda_lambda_prime_d;
  double lambda;
  double lambda_prime;
};
TargetTerms target_terms(const RotSymMap& m, const Jet4& rho_series);

}  // namespace biharm
