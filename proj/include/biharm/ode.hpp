#pragma once

// Linear second-order ODEs y'' + p y' + q y = 0, their Taylor-series
// integration, and the special constructions built on them.

#include <array>
#include <cstddef>
#include <optional>

#include "biharm/quadrature.hpp"
#include "biharm/warped.hpp"

namespace biharm {

struct LinearODE2 {
  Profile p;
  Profile q;
  Interval domain;
};

/// p = sigma'/sigma (exact to order 3), q = -k^2 (lambda lambda')'(rho) / sigma^2
/// (exact to order 2). y = f x solves it iff the map is f-biharmonic.
LinearODE2 assemble_system(const RotSymMap& m);

/// The system rewritten in t = integral of 1/sigma from `basepoint`
/// (default: midpoint of `working`): y_tt + sigma^2 q y = 0.
struct TCoordinates {
  LinearODE2 system;
  Profile t_of_r;
  Profile r_of_t;
  double basepoint;
};
TCoordinates to_t_coordinates(const LinearODE2& sys, const RotSymMap& m, Interval working,
                              std::optional<double> basepoint = std::nullopt);

inline constexpr double kOdeTol = 1e-10;

struct InitialData {
  double r0;
  double y0;
  double dy0;
};

struct ODESolution {
  Profile y;  // dense output on `span`
  InitialData initial;
  Interval span;
  std::size_t steps;
};

/// Adaptive Taylor-series integration from r0 across `target` (both
/// directions when r0 is interior). The series order is the smaller valid
/// order of p, q plus two. StepFailure when coefficients stop being finite,
/// the step collapses, or a declared singularity lies in the span.
ODESolution solve_ivp(const LinearODE2& sys, double r0, double y0, double dy0, Interval target,
                      double tol = kOdeTol);

/// y'' + p y' + q y at r.
double ode_residual(const LinearODE2& sys, const Profile& y, double r,
                    double exclusion = kDefaultExclusion);

inline constexpr double kBiharmonicInputTol = 1e-6;
inline constexpr double kXVanishTol = 1e-8;
inline constexpr std::size_t kZeroScanPoints = 2048;

/// f = C1 + C2 * integral of x^{-2} sigma^{-1} from `basepoint` (default:
/// midpoint of `working`), with its sign chart on `working`.
/// XVanishes if |x| < 1e-8 on the scan, NonBiharmonicInput if the normalized
/// bitension exceeds 1e-6, InvalidOverride if C1 = C2 = 0.
ConformalFactor reduction_of_order_factor(const RotSymMap& m, double C1, double C2,
                                          Interval working,
                                          std::optional<double> basepoint = std::nullopt);

/// Sign chart of f on `working`: zeros located by sign-change bisection on a
/// kZeroScanPoints scan.
std::vector<SignChart> sign_chart_of(const Profile& f, Interval working);

/// Zeros of a profile's value on `working` (same scan and bisection).
std::vector<double> scan_zeros(const Profile& p, Interval working);

/// C1 + (C2 - 2 C3) ln r + C3 ln(1+r^2) + C4 ln r ln(1+r^2)
///   - 2 C4 int_1^r ln(1+s^2)/s ds + (k^2/4) ln^2 r   on (0, inf).
Profile cauchy_euler_rho(double k, double C1, double C2, double C3, double C4);

/// C4 + C3 t + (C1/2 + k^2/4) t^2 + C2/6 t^3 + C1/6 t^4 + C2/10 t^5
///   + C1/30 t^6 + C2/42 t^7   with t = ln tan(r/2), on (0, pi).
Profile prop212_rho(double k, double C1, double C2, double C3, double C4);

/// beta'' + (3 cot r - 2 tan r) beta' + 2 beta'^2 + 1 - 4 sin^2 r.
/// SingularPoint within `exclusion` of pi/2.
double riccati_residual(const Profile& beta, double r, double exclusion = kDefaultExclusion);

/// Null vector (a2 = 1) of the 3x3 system for the coefficients of
/// y = e^{sqrt3 t} (1+e^{2t})^{-2} (a0 + a1 e^{2t} + a2 e^{4t}).
struct KztCoefficients {
  double a0;
  double a1;
  double a2;
  std::array<double, 3> residuals;
};
KztCoefficients kzt_ansatz_coeffs();

/// y_tt - 3 (e^{4t} - 6 e^{2t} + 1) / (1 + e^{2t})^2 y = 0 on (-kTRange, kTRange).
LinearODE2 kzt_system();
/// The ansatz solution built from `c`.
Profile kzt_particular_solution(const KztCoefficients& c);

/// y_tt - k^2 cos(4 A arctan e^t) y = 0 on (-kTRange, kTRange).
LinearODE2 lfpyj_system(double A, double k);

inline constexpr double kTRange = 12.0;

/// u(t) = sqrt((1 + e^{2t}) / e^t) and v = integral of sqrt3 / u^2 from 0.
struct AmplitudePhase {
  Profile u;
  Profile v;
};
AmplitudePhase kztt_amplitude_phase();

/// u'' - (v'^2 + (e^{4t} - 6 e^{2t} + 1) / (4 (1 + e^{2t})^2)) u at t.
double kztt_amplitude_residual(const AmplitudePhase& uv, double t);

}  // namespace biharm
