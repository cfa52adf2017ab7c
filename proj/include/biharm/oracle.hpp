#pragma once

// Tension and bitension computed from their definitions: Christoffel
// symbols obtained from the metric coefficients, the rough Laplacian of
// tau along the map traced over the orthonormal frame {d_r, sigma^{-1} d_theta},
// and the target curvature term with R(X,Y)Z = K (<Y,Z> X - <X,Z> Y).
//
// None of this shares code with the closed-form expressions in warped.hpp;
// the two paths are compared against each other.

#include "biharm/quadrature.hpp"
#include "biharm/warped.hpp"

namespace biharm {

/// Non-zero Christoffel symbols at r (target ones at rho(r)).
struct ChristoffelData {
  double r_thth;      // Gamma^r_{theta theta}
  double th_rth;      // Gamma^theta_{r theta}
  double rho_phph;    // Gamma^rho_{phi phi}
  double ph_rhoph;    // Gamma^phi_{rho phi}
};

ChristoffelData christoffel(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);

TensionValue oracle_tension(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);
TensionValue oracle_bitension(const RotSymMap& m, double r, double exclusion = kDefaultExclusion);

/// f^{-1}(dr^2 + sigma^2 dtheta^2) written as ds^2 + sigma_new(s)^2 dtheta^2
/// with s(r) = integral of f^{-1/2} from the midpoint of `working`.
struct Reparametrization {
  WarpedSurface surface;
  Profile s_of_r;
  Profile r_of_s;
  double basepoint;
};

/// NonPositiveFactor unless f > 0 on `working`; InversionFailure if s(r) is
/// not strictly increasing.
Reparametrization reparametrize(const WarpedSurface& s, const ConformalFactor& cf, Interval working);

/// The map with its source replaced by the reparametrized surface and
/// rho_new(s) = rho(r(s)).
RotSymMap reparametrized_map(const RotSymMap& m, const Reparametrization& rp);

/// tau_2(phi, f^{-1} g) via the reparametrized source and oracle_bitension.
TensionValue oracle_conformal_bitension(const RotSymMap& m, const Reparametrization& rp, double r);
/// Convenience overload; reparametrizes on the sign chart containing r.
TensionValue oracle_conformal_bitension(const RotSymMap& m, const ConformalFactor& cf, double r,
                                        double exclusion = kDefaultExclusion);

}  // namespace biharm
