#include "biharm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace biharm {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "invalid interval (" << lo << ", " << hi << ")";
    throw Error(Errc::out_of_domain, os.str());
  }
}

Interval Interval::shrunk(double eps) const { return Interval(lo + eps, hi - eps); }

Profile::Profile(JetFn fn, Interval domain, std::vector<double> singularities, std::string label,
                 int valid_order)
    : fn_(std::make_shared<const JetFn>(std::move(fn))),
      domain_(domain),
      singularities_(std::move(singularities)),
      label_(std::move(label)),
      valid_order_(valid_order) {}

Profile Profile::constant(double c, Interval domain, std::string label) {
  return Profile([c](const Jet4&) { return Jet4(c); }, domain, {}, std::move(label));
}

Profile Profile::identity(Interval domain, std::string label) {
  return Profile([](const Jet4& a) { return a; }, domain, {}, std::move(label));
}

bool Profile::near_singularity(double r, double exclusion) const {
  for (double s : singularities_)
    if (std::abs(r - s) <= exclusion) return true;
  return false;
}

Jet4 Profile::jet(double r, double exclusion) const {
  if (!domain_.contains_interior(r)) {
    std::ostringstream os;
    os << "point " << r << " outside (" << domain_.lo << ", " << domain_.hi << ")";
    if (!label_.empty()) os << " of " << label_;
    throw Error(Errc::out_of_domain, os.str());
  }
  if (near_singularity(r, exclusion)) {
    std::ostringstream os;
    os << "point " << r << " within " << exclusion << " of a singularity";
    if (!label_.empty()) os << " of " << label_;
    throw Error(Errc::singular_point, os.str());
  }
  Jet4 j = (*fn_)(Jet4::variable(r));
  if (!j.finite()) {
    // Only coefficients up to the valid order are meaningful.
    for (int k = 0; k <= valid_order_ && k <= 4; ++k) {
      if (!std::isfinite(j[static_cast<std::size_t>(k)])) {
        std::ostringstream os;
        os << "non-finite jet at " << r;
        if (!label_.empty()) os << " of " << label_;
        throw Error(Errc::singular_point, os.str());
      }
    }
  }
  return j;
}

Profile Profile::with_domain(Interval domain) const {
  Profile p = *this;
  p.domain_ = domain;
  return p;
}

Profile Profile::with_singularities(std::vector<double> singularities) const {
  Profile p = *this;
  p.singularities_ = std::move(singularities);
  return p;
}

Profile Profile::with_label(std::string label) const {
  Profile p = *this;
  p.label_ = std::move(label);
  return p;
}

Jet4 jet_eval(const Profile& p, double r, double exclusion) { return p.jet(r, exclusion); }

Profile compose(const Profile& outer, const Profile& inner, std::string label) {
  return Profile([outer, inner](const Jet4& a) { return outer(inner(a)); }, inner.domain(),
                 inner.singularities(), std::move(label),
                 std::min(outer.valid_order(), inner.valid_order()));
}

namespace builtin {

Profile sine(Interval domain) {
  return Profile([](const Jet4& a) { return sin(a); }, domain, {}, "sin");
}

Profile cosine(Interval domain) {
  return Profile([](const Jet4& a) { return cos(a); }, domain, {}, "cos");
}

Jet4 ln_tan_half(const Jet4& a) {
  const double a0 = a[0];
  const Jet4 series = integrate(1.0 / sin(Jet4::variable(a0)), std::log(std::tan(0.5 * a0)));
  return compose(series, a);
}

Profile log_tan_half() {
  return Profile([](const Jet4& a) { return ln_tan_half(a); }, Interval(0.0, std::numbers::pi), {},
                 "ln tan(r/2)");
}

}  // namespace builtin

std::vector<NamedProfile> builtin_profiles() {
  using std::numbers::pi;
  const Interval sphere(0.0, pi);
  const Interval half_line(0.0, kHalfLine);
  std::vector<NamedProfile> out;
  out.push_back({"sin", builtin::sine(sphere)});
  out.push_back({"cos", builtin::cosine(sphere)});
  out.push_back({"identity", Profile::identity(sphere)});
  out.push_back({"one", Profile::constant(1.0, sphere, "1")});
  out.push_back({"ln_tan_half", builtin::log_tan_half()});
  out.push_back({"sqrt", Profile([](const Jet4& a) { return sqrt(a); }, half_line, {}, "sqrt")});
  out.push_back({"conformal_sphere",
                 Profile([](const Jet4& a) { return 0.25 * pow(1.0 + a * a, 2.0); }, half_line, {},
                         "(1+r^2)^2/4")});
  return out;
}

}  // namespace biharm
