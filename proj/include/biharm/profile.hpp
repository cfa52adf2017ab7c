#pragma once

// Scalar functions of one real variable that evaluate to order-4 jets.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "biharm/errors.hpp"
#include "biharm/jet.hpp"

namespace biharm {

/// Default exclusion radius around declared singular points.
inline constexpr double kDefaultExclusion = 1e-2;

/// Stand-in upper bound for half-line domains such as (0, inf).
inline constexpr double kHalfLine = 1e6;

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains_interior(double r) const { return r > lo && r < hi; }
  bool contains_closed(double r) const { return r >= lo && r <= hi; }
  /// The interval with `eps` removed at both ends.
  Interval shrunk(double eps) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

using JetFn = std::function<Jet4(const Jet4&)>;

/// A function r -> Jet4 on an open interval with declared singular points.
///
/// Calling the profile with a jet argument composes it with that argument and
/// performs no checks; `jet()` is the checked point evaluation. Profiles are
/// immutable and cheap to copy (the evaluator is shared).
class Profile {
 public:
  Profile(JetFn fn, Interval domain, std::vector<double> singularities = {},
          std::string label = {}, int valid_order = 4);

  static Profile constant(double c, Interval domain, std::string label = {});
  static Profile identity(Interval domain, std::string label = "r");

  Jet4 operator()(const Jet4& arg) const { return (*fn_)(arg); }

  /// Checked evaluation at r: OutOfDomain outside the open domain,
  /// SingularPoint within `exclusion` of a declared singularity or when the
  /// resulting jet is not finite.
  Jet4 jet(double r, double exclusion = kDefaultExclusion) const;
  double value(double r, double exclusion = kDefaultExclusion) const { return jet(r, exclusion)[0]; }

  const Interval& domain() const { return domain_; }
  const std::vector<double>& singularities() const { return singularities_; }
  const std::string& label() const { return label_; }
  /// Highest derivative order whose jet coefficient is exact.
  int valid_order() const { return valid_order_; }

  bool near_singularity(double r, double exclusion) const;

  Profile with_domain(Interval domain) const;
  Profile with_singularities(std::vector<double> singularities) const;
  Profile with_label(std::string label) const;

 private:
  std::shared_ptr<const JetFn> fn_;
  Interval domain_;
  std::vector<double> singularities_;
  std::string label_;
  int valid_order_;
};

Jet4 jet_eval(const Profile& p, double r, double exclusion = kDefaultExclusion);

/// f(g(.)) on g's domain.
Profile compose(const Profile& outer, const Profile& inner, std::string label = {});

struct NamedProfile {
  std::string name;
  Profile profile;
};

/// The library's built-in closed-form profiles (used by the catalog and as
/// references for the expression language).
std::vector<NamedProfile> builtin_profiles();

namespace builtin {

Profile sine(Interval domain = Interval(0.0, 3.141592653589793));
Profile cosine(Interval domain);
/// ln tan(r/2) on (0, pi); the antiderivative of 1/sin r based at pi/2.
Profile log_tan_half();
/// Jet of ln tan(a/2), built from the jet of 1/sin so that it stays accurate
/// near 0 and pi where tan(a/2) and its jets blow up.
Jet4 ln_tan_half(const Jet4& a);

}  // namespace builtin

}  // namespace biharm
