#pragma once

// Adaptive quadrature and quadrature-defined profiles.

#include <cstddef>
#include <functional>

#include "biharm/profile.hpp"

namespace biharm {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr std::size_t kQuadPanelBudget = 10000;

struct QuadResult {
  double value;
  double error_estimate;
  std::size_t panels;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b]
/// (b < a is allowed). Throws ToleranceNotMet when the panel budget is spent.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = kDefaultQuadTol, std::size_t budget = kQuadPanelBudget);

/// Integral of a profile's value over [a, b]. [a, b] must lie in the closed
/// domain and contain no declared singularity (SingularPoint otherwise).
double adaptive_quad(const Profile& p, double a, double b, double tol = kDefaultQuadTol);

/// F(r) = integral of p from `basepoint` to r. Jets of F of order >= 1 come
/// from the jets of p; the value comes from quadrature over fixed segments
/// whose integrals are cached (thread-safe), so caching never changes values.
Profile antiderivative(const Profile& p, double basepoint, double tol = kDefaultQuadTol,
                       std::string label = {});

/// Inverse of s(r) = integral of `integrand` from `basepoint` to r, for an
/// integrand that is positive on `working`. The returned profile maps s back
/// to r on [s(working.lo), s(working.hi)]. The inversion table is built
/// eagerly; each evaluation brackets the value in the table and runs
/// safeguarded Newton to 1e-12. Jets of r(s) follow from dr/ds = 1 / integrand(r).
struct MonotoneInverse {
  Profile forward;  // s(r) on working
  Profile inverse;  // r(s)
  double basepoint;
};
MonotoneInverse invert_antiderivative(const Profile& integrand, double basepoint, Interval working,
                                      double tol = kDefaultQuadTol);

}  // namespace biharm
