#include "biharm/catalog.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "biharm/expr.hpp"
#include "biharm/ode.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

namespace {

using std::numbers::pi;

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(Errc::invalid_override, msg); }

// Reads overrides, remembers effective values and documentation, and
// rejects keys nobody asked for.
class Params {
 public:
  explicit Params(const Overrides& overrides) : overrides_(overrides) {}

  double num(const std::string& name, double fallback, const std::string& meaning) {
    docs_.push_back({name, format_number(fallback), meaning});
    used_.insert(name);
    double v = fallback;
    if (auto it = overrides_.find(name); it != overrides_.end()) v = parse_number(name, it->second);
    values_.emplace_back(name, format_number(v));
    return v;
  }

  std::string text(const std::string& name, const std::string& fallback, const std::string& meaning) {
    docs_.push_back({name, fallback, meaning});
    used_.insert(name);
    std::string v = fallback;
    if (auto it = overrides_.find(name); it != overrides_.end()) v = it->second;
    values_.emplace_back(name, v);
    return v;
  }

  void finish() const {
    for (const auto& [key, value] : overrides_)
      if (!used_.count(key)) invalid("unknown parameter '" + key + "'");
  }

  const std::vector<std::pair<std::string, std::string>>& values() const { return values_; }
  const std::vector<ParameterDoc>& docs() const { return docs_; }

 private:
  static double parse_number(const std::string& name, const std::string& text) {
    try {
      // A variable name no one can type keeps the expression constant.
      const ExprAst ast = parse_expr(text, "__no_variable__");
      const double v = evaluate(ast, Jet4(0.0))[0];
      if (!std::isfinite(v)) invalid("parameter '" + name + "' is not finite");
      return v;
    } catch (const SyntaxError& e) {
      invalid("parameter '" + name + "': " + e.what());
    }
  }

  Overrides overrides_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> values_;
  std::vector<ParameterDoc> docs_;
};

void require(bool ok, const std::string& msg) {
  if (!ok) invalid(msg);
}

Interval sphere_interval() { return Interval(0.0, pi); }

WarpedSurface round_sphere(Interval coord = sphere_interval()) {
  return {coord, builtin::sine(coord), "round sphere"};
}

Jet4 tan_half(const Jet4& a) { return tan(0.5 * a); }

std::vector<Interval> split(Interval domain, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> out;
  double lo = domain.lo;
  for (double c : cuts) {
    if (c <= lo || c >= domain.hi) continue;
    out.emplace_back(lo, c);
    lo = c;
  }
  out.emplace_back(lo, domain.hi);
  return out;
}

// Sign of the raw factor on each piece, sampled at its midpoint.
std::vector<SignChart> charts_on(const Profile& f, const std::vector<Interval>& pieces) {
  std::vector<SignChart> out;
  for (const Interval& piece : pieces) out.push_back({piece, f(Jet4(piece.mid()))[0] < 0.0 ? -1 : +1});
  return out;
}

VerificationCase make_case(std::string name, RotSymMap map, ConformalFactor factor, Mode mode,
                           Expected expected, std::vector<Interval> pieces, std::string anchor,
                           double tol) {
  VerificationCase c{std::move(name), std::move(map),    std::move(factor), mode, expected,
                     std::move(pieces), {},              std::move(anchor), tol,  std::nullopt,
                     {},                {}};
  c.working_intervals = c.working(kDefaultExclusion);
  return c;
}

// ---------------------------------------------------------------------------

VerificationCase identity_sphere(Params&) {
  const WarpedSurface s = round_sphere();
  RotSymMap m{s, s, Profile::identity(s.coord), 1.0};
  return make_case("identity-sphere", m, ConformalFactor::identity(s.coord), Mode::harmonic,
                   Expected::pass, {s.coord}, "identity map of the round sphere is harmonic",
                   kJetTol);
}

VerificationCase double_wrap(Params&) {
  const WarpedSurface source = round_sphere(Interval(0.0, pi / 2.0));
  RotSymMap m{source, round_sphere(), Profile([](const Jet4& a) { return 2.0 * a; }, source.coord, {}, "2r"),
              1.0};
  return make_case("double-wrap-nonbiharmonic", m, ConformalFactor::identity(source.coord),
                   Mode::biharmonic, Expected::fail, {source.coord},
                   "rho = 2r between round spheres has nonvanishing tension and bitension", kJetTol);
}

VerificationCase example_2_1(Params&) {
  const WarpedSurface source = round_sphere(Interval(pi / 2.0, pi));
  const Interval target_coord(-1.0, kHalfLine);
  const WarpedSurface target{target_coord,
                             Profile([](const Jet4& a) { return sqrt(a + 1.0); }, target_coord, {},
                                     "sqrt(rho+1)"),
                             "lambda^2 = rho + 1"};
  const Profile rho(
      [](const Jet4& a) {
        const Jet4 t = builtin::ln_tan_half(a);
        return 0.25 * t * t - log(sin(a)) + 1.0;
      },
      source.coord, {}, "(1/4) ln^2 tan(r/2) - ln sin r + 1");
  const Profile f([](const Jet4& a) { return 1.0 + 4.0 * builtin::ln_tan_half(a); }, source.coord, {},
                  "1 + 4 ln tan(r/2)");
  // f vanishes where ln tan(r/2) = -1/4; keep the part of the domain where f > 0.
  const double zero = 2.0 * std::atan(std::exp(-0.25));
  std::vector<Interval> pieces;
  for (const Interval& p : split(source.coord, {zero}))
    if (f(Jet4(p.mid()))[0] > 0.0) pieces.push_back(p);
  RotSymMap m{source, target, rho, 1.0};
  return make_case("example-2-1", m, {f, charts_on(f, pieces)}, Mode::f_biharmonic, Expected::pass,
                   pieces, "nested-integral family on the lower hemisphere with f = 1 + 4 ln tan(r/2)",
                   kJetTol);
}

VerificationCase example_2_2(Params& params) {
  const double k = params.num("k", 1.0, "winding constant (nonzero)");
  const double C0 = params.num("C0", 0.5, "target constant in lambda^2 = rho^2 + 2 C0 rho + C");
  const double C = params.num("C", 1.0, "target constant in lambda^2 = rho^2 + 2 C0 rho + C");
  require(k != 0.0, "k must be nonzero");
  const WarpedSurface source = round_sphere();
  const Interval target_coord(0.0, kHalfLine);
  const WarpedSurface target{
      target_coord,
      Profile([C0, C](const Jet4& a) { return sqrt(a * a + 2.0 * C0 * a + C); }, target_coord, {},
              "sqrt(rho^2 + 2 C0 rho + C)"),
      "lambda^2 = rho^2 + 2 C0 rho + C"};
  const Profile rho(
      [](const Jet4& a) {
        const Jet4 th = tan_half(a);
        return abs(1.0 / th) * (1.0 + log(1.0 + th * th));
      },
      source.coord, {}, "|cot(r/2)| (1 + ln(1 + tan^2(r/2)))");
  const Profile f(
      [](const Jet4& a) {
        const Jet4 s = sin(0.5 * a);
        return 1.0 + 1.5 / (s * s);
      },
      source.coord, {}, "1 + 3 / (2 sin^2(r/2))");
  RotSymMap m{source, target, rho, k};
  // The residual vanishes identically only for k^2 = 1 and C0 = 0 (C drops
  // out); other parameter values are expected to fail.
  const Expected expected = (k * k == 1.0 && C0 == 0.0) ? Expected::pass : Expected::fail;
  auto c = make_case("example-2-2", m, {f, {{source.coord, +1}}}, Mode::f_biharmonic, expected,
                     {source.coord},
                     "sphere family with f = 1 + 3/(2 sin^2(r/2)) into lambda^2 = rho^2 + 2 C0 rho + C",
                     kJetTol);
  return c;
}

WarpedSurface plane() {
  const Interval h(0.0, kHalfLine);
  return {h, Profile::identity(h), "flat plane"};
}

WarpedSurface sqrt_target() {
  const Interval h(0.0, kHalfLine);
  return {h, Profile([](const Jet4& a) { return sqrt(a); }, h, {}, "sqrt(rho)"), "lambda^2 = rho"};
}

Profile conformal_sphere_factor() {
  return Profile([](const Jet4& a) { return 0.25 * pow(1.0 + a * a, 2.0); }, Interval(0.0, kHalfLine),
                 {}, "(1 + r^2)^2 / 4");
}

VerificationCase ps_case(const std::string& name, double k, double C1, double C2, double C3, double C4,
                         double lo, double hi) {
  require(lo > 0.0 && lo < hi && hi < kHalfLine, "working interval must satisfy 0 < lo < hi");
  const Profile f = conformal_sphere_factor();
  const Interval piece(lo, hi);
  RotSymMap m{plane(), sqrt_target(), cauchy_euler_rho(k, C1, C2, C3, C4), k};
  return make_case(name, m, {f, {{piece, +1}}}, Mode::conformal_biharmonic, Expected::pass, {piece},
                   "Cauchy-Euler family from the plane with metric 4(dr^2 + r^2 dtheta^2)/(1+r^2)^2 "
                   "into drho^2 + rho dphi^2",
                   kQuadratureTol);
}

VerificationCase ps_family(Params& params) {
  const double k = params.num("k", 1.0, "winding constant");
  const double C1 = params.num("C1", 0.0, "additive constant");
  const double C2 = params.num("C2", 2.0, "coefficient of ln r (with -2 C3)");
  const double C3 = params.num("C3", 1.0, "coefficient of ln(1+r^2)");
  const double C4 = params.num("C4", 1.0, "coefficient of the ln r ln(1+r^2) - 2 int ln(1+r^2)/r pair");
  const double lo = params.num("lo", 0.05, "left end of the working interval (> 0)");
  const double hi = params.num("hi", 20.0, "right end of the working interval");
  return ps_case("ps-family", k, C1, C2, C3, C4, lo, hi);
}

VerificationCase ps_special(Params& params) {
  const double k = params.num("k", 1.0, "winding constant");
  const double lo = params.num("lo", 0.05, "left end of the working interval (> 0)");
  const double hi = params.num("hi", 20.0, "right end of the working interval");
  auto c = ps_case("ps-special", k, 0.0, 2.0, 1.0, 0.0, lo, hi);
  c.anchor = "(k^2/4) ln^2 r + ln(1+r^2) from the conformally flat sphere is proper biharmonic";
  return c;
}

VerificationCase prop_2_12(Params& params) {
  const double k = params.num("k", 1.0, "winding constant");
  const double C1 = params.num("C1", 1.0, "polynomial constant");
  const double C2 = params.num("C2", 0.0, "polynomial constant");
  const double C3 = params.num("C3", 0.0, "polynomial constant");
  const double C4 = params.num("C4", 1.0, "polynomial constant");
  const WarpedSurface source = round_sphere();
  const Profile f(
      [](const Jet4& a) {
        const Jet4 t = builtin::ln_tan_half(a);
        const Jet4 s = sin(a);
        const Jet4 d = 1.0 + t * t;
        return s * s / (d * d);
      },
      source.coord, {}, "sin^2 r / (1 + ln^2 tan(r/2))^2");
  RotSymMap m{source, sqrt_target(), prop212_rho(k, C1, C2, C3, C4), k};
  return make_case("prop-2-12", m, {f, {{source.coord, +1}}}, Mode::f_biharmonic, Expected::pass,
                   {source.coord},
                   "degree-7 polynomial in ln tan(r/2) from the round sphere into drho^2 + rho dphi^2",
                   kJetTol);
}

VerificationCase glob(Params&) {
  const WarpedSurface s = round_sphere();
  const Profile rho([](const Jet4& a) { return 0.5 * acos(pow(sin(0.5 * a), 2.0)); }, s.coord, {},
                    "(1/2) arccos(sin^2(r/2))");
  const Profile f(
      [](const Jet4& a) {
        const Jet4 t2 = pow(tan_half(a), 2.0);
        return 4.0 * (1.0 + t2) * pow(1.0 + 2.0 * t2, 1.5) / (3.0 * t2 * t2 + 9.0 * t2 + 6.0 + 1.0 / t2);
      },
      s.coord, {}, "glob factor");
  RotSymMap m{s, s, rho, 2.0};
  return make_case("glob", m, {f, {{s.coord, +1}}}, Mode::f_biharmonic, Expected::pass, {s.coord},
                   "rho = (1/2) arccos(sin^2(r/2)), k = 2, between round spheres", kJetTol);
}

// The two mirror-image factors built from the k = +-sqrt3 ansatz.
VerificationCase kzt_like(const std::string& name, double sign) {
  const double s3 = std::sqrt(3.0);
  const WarpedSurface s = round_sphere();
  const double zero = 2.0 * std::atan(std::sqrt(2.0 + sign * s3));
  const std::vector<double> sing = {std::min(zero, pi / 2.0), std::max(zero, pi / 2.0)};
  const Profile f(
      [s3, sign](const Jet4& a) {
        const Jet4 th = tan_half(a);
        const Jet4 t2 = th * th;
        return pow(th, 1.0 + sign * s3) * (t2 + 7.0 + sign * 4.0 * s3) * (t2 - 2.0 - sign * s3) /
               ((1.0 + t2) * (1.0 + t2) * (t2 - 1.0));
      },
      s.coord, sing, name + " factor (signed)");
  const std::vector<Interval> pieces = split(s.coord, sing);
  RotSymMap m{s, s, Profile::identity(s.coord), sign * s3};
  auto c = make_case(name, m, {f, charts_on(f, pieces)}, Mode::f_biharmonic, Expected::pass, pieces,
                     sign > 0 ? "rho = r, k = sqrt3 with |f| from the e^{sqrt3 t} ansatz"
                              : "rho = r, k = -sqrt3 with the mirrored |f|",
                     kJetTol);
  c.branch = "|f|: raw factor negated on charts with sign -1";
  return c;
}

VerificationCase kzt(Params&) { return kzt_like("kzt", +1.0); }
VerificationCase g3(Params&) { return kzt_like("g3", -1.0); }

VerificationCase kztt(Params&) {
  const WarpedSurface s = round_sphere();
  const double s3 = std::sqrt(3.0);
  const Profile f([s3](const Jet4& a) { return tan(a) * sin(0.5 * s3 * a) / sqrt(sin(a)); }, s.coord,
                  {pi / 2.0}, "tan r sin(sqrt3 r / 2) / sqrt(sin r)");
  const std::vector<Interval> pieces = split(s.coord, {pi / 2.0});
  RotSymMap m{s, s, Profile::identity(s.coord), 0.5};
  auto c = make_case("kztt", m, {f, charts_on(f, pieces)}, Mode::f_biharmonic, Expected::pass, pieces,
                     "rho = r, k = 1/2 with |tan r sin(sqrt3 r/2) / sqrt(sin r)|", kJetTol);
  c.branch = "phase continued across r = pi/2: v = (sqrt3/2) r + const; |f| on charts with sign -1";
  return c;
}

VerificationCase riccati_double_wrap(Params& params) {
  const double y0 = params.num("y0", 2.0, "y = f x at r = pi/4 (f(pi/4) = y0 / 2)");
  const double dy0 = params.num("dy0", 0.0, "y' at r = pi/4");
  const WarpedSurface source = round_sphere(Interval(0.0, pi / 2.0));
  RotSymMap m{source, round_sphere(),
              Profile([](const Jet4& a) { return 2.0 * a; }, source.coord, {}, "2r"), 1.0};
  const LinearODE2 sys = assemble_system(m);
  const double r0 = pi / 4.0;
  const Interval span(1e-3, pi / 2.0 - 1e-3);
  const ODESolution sol = solve_ivp(sys, r0, y0, dy0, span);
  const Profile y = sol.y;
  const Profile x = tension_profile(m);

  // Keep the stretch around pi/4 where y > 0, so that f = y / x > 0.
  double lo = span.lo;
  double hi = span.hi;
  for (double z : scan_zeros(y, span)) {
    if (z < r0) lo = std::max(lo, z);
    if (z > r0) hi = std::min(hi, z);
  }
  require(y(Jet4(r0))[0] > 0.0, "y0 must be positive");
  const Interval piece(lo, hi);
  const Profile f([y, x](const Jet4& a) { return y(a) / x(a); }, source.coord, {}, "y / x",
                  std::min(y.valid_order(), x.valid_order()));
  const Profile beta([f](const Jet4& a) { return 0.5 * log(f(a)); }, source.coord, {},
                     "(1/2) ln f", f.valid_order());
  auto c = make_case("riccati-double-wrap", m, {f, {{piece, +1}}}, Mode::riccati, Expected::pass, {piece},
                     "rho = 2r: beta = (1/2) ln f of a numerical solution satisfies the Riccati equation",
                     kQuadratureTol);
  c.beta = beta;
  return c;
}

VerificationCase stcoy(Params& params) {
  const std::string sigma_src = params.text("sigma", "sin(r)", "domain warp sigma(r) (expression in r)");
  const double slo = params.num("sigma_lo", 0.0, "left end of sigma's domain");
  const double shi = params.num("sigma_hi", pi, "right end of sigma's domain");
  const double wlo = params.num("lo", pi / 2.0 + kDefaultExclusion, "left end of the working interval");
  const double whi = params.num("hi", pi - kDefaultExclusion, "right end of the working interval");
  const double c1 = params.num("c1", 1.0, "additive constant of f");
  const double c2 = params.num("c2", 1.0, "multiplier of the integral in f");
  const double C1 = params.num("C1", 0.0, "x = C1 int(1/sigma) + C2");
  const double C2 = params.num("C2", 1.0, "x = C1 int(1/sigma) + C2");
  const double C3 = params.num("C3", 0.0, "integration constant of sigma rho'");
  const double C4 = params.num("C4", 1.0, "additive constant of rho");
  const double k = params.num("k", 1.0, "winding constant (nonzero)");
  const double C0 = params.num("C0", 0.5, "target lambda^2 = 2 C0 rho + C");
  const double C = params.num("C", 1.0, "target lambda^2 = 2 C0 rho + C");
  require(k != 0.0, "k must be nonzero");
  require(c1 * c1 + c2 * c2 != 0.0 && C1 * C1 + C2 * C2 != 0.0, "(c1^2 + c2^2)(C1^2 + C2^2) must be nonzero");
  require(slo < shi && slo <= wlo && wlo < whi && whi <= shi,
          "need sigma_lo <= lo < hi <= sigma_hi");
  const Interval domain(slo, shi);
  const Profile sigma = compile_profile(parse_expr(sigma_src, "r"), domain, {});
  const double base = domain.mid();

  const Profile inv_sigma([sigma](const Jet4& a) { return 1.0 / sigma(a); }, domain, {}, "1/sigma");
  const Profile I1 = antiderivative(inv_sigma, base, kDefaultQuadTol, "int(1/sigma)");
  const Profile g(
      [sigma, I1, C1, C2, k, C0](const Jet4& a) {
        const Jet4 s = sigma(a);
        return C1 * s * I1(a) + C2 * s + k * k * C0 / s;
      },
      domain, {}, "C1 sigma I1 + C2 sigma + k^2 C0 / sigma");
  const Profile G = antiderivative(g, base);
  // int (G + C3)/sigma = I1 (G + C3) - int g I1, which keeps the nesting at
  // two quadratures.
  const Profile gI1([g, I1](const Jet4& a) { return g(a) * I1(a); }, domain, {}, "g I1");
  const Profile K2 = antiderivative(gI1, base);
  const Profile rho([I1, G, K2, C3, C4](const Jet4& a) { return I1(a) * (G(a) + C3) - K2(a) + C4; },
                    domain, {}, "rho (nested integrals)");

  const Profile kernel(
      [sigma, I1, C1, C2](const Jet4& a) {
        const Jet4 x = C1 * I1(a) + C2;
        return 1.0 / (x * x * sigma(a));
      },
      domain, {}, "(C1 I1 + C2)^-2 / sigma");
  const Profile K = antiderivative(kernel, base);
  const Profile f([K, c1, c2](const Jet4& a) { return c1 + c2 * K(a); }, domain, {},
                  "c1 + c2 int((C1 I1 + C2)^-2 / sigma)");

  const Interval target_coord = C0 > 0.0 ? Interval(-C / (2.0 * C0), kHalfLine)
                                         : C0 < 0.0 ? Interval(-kHalfLine, -C / (2.0 * C0))
                                                    : Interval(-kHalfLine, kHalfLine);
  const WarpedSurface target{
      target_coord,
      Profile([C0, C](const Jet4& a) { return sqrt(2.0 * C0 * a + C); }, target_coord, {},
              "sqrt(2 C0 rho + C)"),
      "lambda^2 = 2 C0 rho + C"};
  RotSymMap m{{domain, sigma, "sigma = " + sigma_src}, target, rho, k};
  const Interval working(wlo, whi);
  std::vector<Interval> pieces;
  for (const SignChart& chart : sign_chart_of(f, working))
    if (chart.sign > 0) pieces.push_back(chart.interval);
  auto c = make_case("stcoy", m, {f, charts_on(f, pieces)}, Mode::conformal_biharmonic, Expected::pass,
                     pieces, "nested-integral family with x = C1 int(1/sigma) + C2 and its reduction-of-order f",
                     kQuadratureTol);
  c.branch = "antiderivatives based at the midpoint of sigma's domain; charts with f <= 0 dropped";
  return c;
}

VerificationCase lfpyj(Params& params) {
  const double A = params.num("A", 1.0, "rho = A r (0 < A <= 1)");
  const double k = params.num("k", 0.5, "winding constant (nonzero)");
  const double y0 = params.num("y0", 1.0, "y at t = 0 (r = pi/2)");
  const double dy0 = params.num("dy0", 0.0, "dy/dt at t = 0");
  require(A > 0.0 && A <= 1.0, "A must lie in (0, 1]");
  require(k != 0.0, "k must be nonzero");
  const WarpedSurface s = round_sphere();
  RotSymMap m{s, s, Profile([A](const Jet4& a) { return A * a; }, s.coord, {}, "A r"), k};
  const LinearODE2 sys = lfpyj_system(A, k);
  const ODESolution sol = solve_ivp(sys, 0.0, y0, dy0, Interval(-10.0, 10.0));
  const Profile y = sol.y;
  const Profile x = tension_profile(m);
  const Profile t = builtin::log_tan_half();
  const Interval scan = s.coord.shrunk(1e-3);
  const std::vector<double> x_zeros = scan_zeros(x, scan);
  const Profile f([y, x, t](const Jet4& a) { return y(t(a)) / x(a); }, s.coord, x_zeros,
                  "y(ln tan(r/2)) / x", std::min(y.valid_order(), x.valid_order()));
  std::vector<Interval> pieces;
  for (const Interval& p : split(s.coord, x_zeros)) {
    const Interval inner = p.shrunk(1e-3);
    for (const SignChart& chart : sign_chart_of(f, inner)) pieces.push_back(chart.interval);
  }
  // Outer ends of the scan are artificial; restore them to the piece ends.
  if (!pieces.empty()) {
    pieces.front().lo = std::min(pieces.front().lo, 0.0 + 1e-3);
    pieces.back().hi = std::max(pieces.back().hi, pi - 1e-3);
  }
  auto c = make_case("lfpyj", m, {f, charts_on(f, pieces)}, Mode::f_biharmonic, Expected::pass, pieces,
                     "rho = A r between round spheres with f = y(ln tan(r/2)) / x from the t-equation",
                     kQuadratureTol);
  c.branch = "y solved numerically in t from t = 0; |f| on charts with sign -1";
  return c;
}

VerificationCase round_sphere_derived(Params& params) {
  const double C1 = params.num("C1", 0.0, "f = C1 + C2 ln tan(s/2)");
  const double C2 = params.num("C2", 1.0, "f = C1 + C2 ln tan(s/2)");
  const double k = params.num("k", 1.0, "winding constant");
  require(C1 * C1 + C2 * C2 != 0.0, "C1^2 + C2^2 must be nonzero");
  return derived_round_sphere_case(C1, C2, k);
}

struct Entry {
  const char* name;
  VerificationCase (*build)(Params&);
};

constexpr std::array<Entry, 15> kEntries = {{
    {"identity-sphere", identity_sphere},
    {"double-wrap-nonbiharmonic", double_wrap},
    {"example-2-1", example_2_1},
    {"example-2-2", example_2_2},
    {"ps-family", ps_family},
    {"ps-special", ps_special},
    {"prop-2-12", prop_2_12},
    {"glob", glob},
    {"kzt", kzt},
    {"g3", g3},
    {"kztt", kztt},
    {"riccati-double-wrap", riccati_double_wrap},
    {"stcoy", stcoy},
    {"lfpyj", lfpyj},
    {"round-sphere-derived", round_sphere_derived},
}};

const Entry& find_entry(std::string_view name) {
  for (const Entry& e : kEntries)
    if (e.name == name) return e;
  throw Error(Errc::unknown_case, "unknown case '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::harmonic: return "harmonic";
    case Mode::biharmonic: return "biharmonic";
    case Mode::f_biharmonic: return "f-biharmonic";
    case Mode::conformal_biharmonic: return "conformal-biharmonic";
    case Mode::riccati: return "riccati";
  }
  return "?";
}

Mode mode_from_string(std::string_view name) {
  for (Mode m : {Mode::harmonic, Mode::biharmonic, Mode::f_biharmonic, Mode::conformal_biharmonic,
                 Mode::riccati})
    if (to_string(m) == name) return m;
  throw Error(Errc::invalid_override, "unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(Expected e) { return e == Expected::pass ? "pass" : "fail"; }

std::vector<Interval> VerificationCase::working(double exclusion) const {
  std::vector<Interval> out;
  for (const Interval& p : pieces)
    if (p.width() > 2.0 * exclusion) out.push_back(p.shrunk(exclusion));
  return out;
}

ConformalFactor VerificationCase::factor_at(double r) const {
  return factor.sign_at(r) < 0 ? factor.negated() : factor;
}

const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : kEntries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

VerificationCase build_case(std::string_view name, const Overrides& overrides) {
  const Entry& entry = find_entry(name);
  Params params(overrides);
  VerificationCase c = entry.build(params);
  params.finish();
  c.parameters = params.values();
  return c;
}

std::vector<VerificationCase> list_cases() {
  std::vector<VerificationCase> out;
  for (const Entry& e : kEntries) out.push_back(build_case(e.name));
  return out;
}

std::vector<ParameterDoc> case_parameters(std::string_view name) {
  const Entry& entry = find_entry(name);
  Params params({});
  entry.build(params);
  return params.docs();
}

VerificationCase derived_round_sphere_case(double C1, double C2, double k) {
  const WarpedSurface s = round_sphere();
  const Profile rho(
      [k](const Jet4& a) {
        const Jet4 t = builtin::ln_tan_half(a);
        return 0.25 * k * k * t * t - 2.0 * log(cos(0.5 * a));
      },
      s.coord, {}, "(k^2/4) ln^2 tan(s/2) - 2 ln cos(s/2)");
  RotSymMap m{s, sqrt_target(), rho, k};
  const Interval working(0.1, pi - 0.1);
  ConformalFactor cf = reduction_of_order_factor(m, C1, C2, working, pi / 2.0);
  std::vector<Interval> pieces;
  for (const SignChart& chart : cf.sign_chart) pieces.push_back(chart.interval);
  auto c = make_case("round-sphere-derived", m, cf, Mode::f_biharmonic, Expected::pass, pieces,
                     "round-sphere form of the Cauchy-Euler special map (x = 1) with f from reduction of order",
                     kQuadratureTol);
  c.parameters = {{"C1", format_number(C1)}, {"C2", format_number(C2)}, {"k", format_number(k)}};
  c.branch = "f based at s = pi/2";
  return c;
}

}  // namespace biharm
