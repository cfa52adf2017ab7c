#pragma once

// Named, parameterized map/factor pairs with the verdict each one should get.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biharm/warped.hpp"

namespace biharm {

enum class Mode { harmonic, biharmonic, f_biharmonic, conformal_biharmonic, riccati };

std::string_view to_string(Mode mode);
/// InvalidOverride for unknown names.
Mode mode_from_string(std::string_view name);

enum class Expected { pass, fail };
std::string_view to_string(Expected e);

inline constexpr double kJetTol = 1e-8;
inline constexpr double kQuadratureTol = 1e-6;

struct VerificationCase {
  std::string name;
  RotSymMap map;
  /// Signed factor; the verifier uses sign * f on each chart, so charts with
  /// sign -1 are where |f| flips the raw expression.
  ConformalFactor factor;
  Mode mode;
  Expected expected;
  /// Smooth pieces of the domain (between singularities and zeros of f).
  std::vector<Interval> pieces;
  /// The pieces shrunk by the default exclusion radius.
  std::vector<Interval> working_intervals;
  std::string anchor;
  double tolerance;
  /// beta = (1/2) ln f for the Riccati mode.
  std::optional<Profile> beta;
  /// Branch or sign conventions worth recording in reports.
  std::string branch;
  /// Effective parameter values after overrides, in declaration order.
  std::vector<std::pair<std::string, std::string>> parameters;

  /// Pieces shrunk by `exclusion`; pieces narrower than 2 * exclusion drop out.
  std::vector<Interval> working(double exclusion) const;
  /// The factor with the chart sign applied at r (|f| for absolute-value factors).
  ConformalFactor factor_at(double r) const;
};

/// key -> value; values are numbers in the expression language (for example
/// "sqrt(3)/2"), except text parameters such as stcoy's sigma.
using Overrides = std::map<std::string, std::string>;

/// Stable, ordered identifiers accepted by build_case.
const std::vector<std::string>& case_names();

/// UnknownCase; InvalidOverride for unknown keys, malformed values or values
/// outside the documented range.
VerificationCase build_case(std::string_view name, const Overrides& overrides = {});

/// Every named case with default parameters, in case_names() order.
std::vector<VerificationCase> list_cases();

/// Round-sphere presentation of the Cauchy-Euler special map (x == 1) with
/// f = C1 + C2 ln tan(s/2) obtained by reduction of order.
VerificationCase derived_round_sphere_case(double C1 = 0.0, double C2 = 1.0, double k = 1.0);

/// One line per parameter: name, default, meaning.
struct ParameterDoc {
  std::string name;
  std::string default_value;
  std::string meaning;
};
std::vector<ParameterDoc> case_parameters(std::string_view name);

}  // namespace biharm
