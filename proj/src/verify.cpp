#include "biharm/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "biharm/ode.hpp"
#include "biharm/oracle.hpp"

namespace biharm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool skippable(const Error& e) {
  return e.code() == Errc::singular_point || e.code() == Errc::out_of_domain ||
         e.code() == Errc::non_positive_factor;
}

std::vector<double> declared_singularities(const VerificationCase& c) {
  std::vector<double> s;
  for (const Profile* p : {&c.map.rho, &c.map.source.warp, &c.factor.f})
    for (double v : p->singularities())
      if (c.map.source.coord.contains_interior(v)) s.push_back(v);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Evaluated mode_residual(const VerificationCase& c, Mode mode, double r, double exclusion) {
  switch (mode) {
    case Mode::harmonic: return tension_terms(c.map, r, exclusion);
    case Mode::biharmonic: return bitension_terms(c.map, r, exclusion);
    case Mode::f_biharmonic: return f_bitension_terms(c.map, c.factor_at(r), r, exclusion);
    case Mode::conformal_biharmonic:
      return conformal_bitension_terms(c.map, c.factor_at(r), r, exclusion);
    case Mode::riccati:
      if (!c.beta) throw Error(Errc::invalid_override, "case '" + c.name + "' has no Riccati data");
      return {riccati_residual(*c.beta, r, exclusion), 0.0};
  }
  return {0.0, 0.0};
}

[[noreturn]] void io_error(const std::string& what) { throw Error(Errc::io_error, what); }

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) io_error(std::string("report field '") + key + "' missing");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    io_error(std::string("report field '") + key + "' has the wrong type");
  }
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

Grid default_grid(const VerificationCase& c, std::size_t n, double exclusion) {
  Grid g{{}, exclusion, c.working(exclusion)};
  const std::vector<double> sing = declared_singularities(c);
  for (const Interval& piece : g.charts)
    for (std::size_t i = 0; i < n; ++i) {
      const double theta = std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      const double r = piece.mid() - 0.5 * piece.width() * std::cos(theta);
      const bool near = std::any_of(sing.begin(), sing.end(),
                                    [&](double s) { return std::abs(r - s) < exclusion; });
      if (!near) g.points.push_back(r);
    }
  std::sort(g.points.begin(), g.points.end());
  return g;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  io_error("unknown verdict '" + std::string(s) + "'");
}

bool ResidualReport::as_expected() const {
  return (expected == Expected::pass && verdict == Verdict::pass) ||
         (expected == Expected::fail && verdict == Verdict::fail);
}

ResidualReport sweep(const VerificationCase& c, const Grid& grid, double tol, std::optional<Mode> mode) {
  ResidualReport rep;
  rep.case_name = c.name;
  rep.mode = mode.value_or(c.mode);
  rep.grid.n = grid.points.size();
  rep.grid.lo = grid.points.empty() ? 0.0 : grid.points.front();
  rep.grid.hi = grid.points.empty() ? 0.0 : grid.points.back();
  rep.grid.exclusion = grid.exclusion_radius;
  rep.grid.excluded = declared_singularities(c);
  rep.tol = tol;
  rep.expected = c.expected;
  rep.anchor = c.anchor;
  rep.branch = c.branch;
  rep.parameters = c.parameters;
  for (const SignChart& chart : c.factor.sign_chart) rep.chart_signs.push_back(chart.sign);

  const Profile x_profile = tension_profile(c.map);
  const double ex = grid.exclusion_radius;
  double sum_sq = 0.0;
  std::vector<double> excess;
  for (double r : grid.points) {
    try {
      const Evaluated e = mode_residual(c, rep.mode, r, ex);
      const Jet4 x = x_profile.jet(r, ex);
      const double f = c.factor.trivial ? 1.0 : c.factor_at(r).f.value(r, ex);
      const double rho = c.map.rho.value(r, ex);
      if (!std::isfinite(e.value)) throw Error(Errc::singular_point, "residual not finite");
      rep.points.push_back({r, rho, f, x[0], e.value, 0.0, e.scale});
      rep.sup_x = std::max(rep.sup_x, std::abs(x[0]));
      rep.sup_x2 = std::max(rep.sup_x2, std::abs(2.0 * x[2]));
      rep.sup = std::max(rep.sup, std::abs(e.value));
      sum_sq += e.value * e.value;
      excess.push_back(std::max(0.0, std::abs(e.value) - kRoundingUlps * kEps * e.scale));
    } catch (const Error& err) {
      if (!skippable(err)) throw;
      ++rep.skipped_points;
    }
  }
  const double norm = 1.0 + rep.sup_x + rep.sup_x2;
  rep.normalized_sup = rep.sup / norm;
  rep.verdict_sup = excess.empty() ? 0.0 : *std::max_element(excess.begin(), excess.end()) / norm;
  rep.rms = rep.points.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(rep.points.size()));

  const double skipped_fraction =
      grid.points.empty() ? 1.0
                          : static_cast<double>(rep.skipped_points) / static_cast<double>(grid.points.size());
  if (rep.points.empty() || skipped_fraction > kMaxSkippedFraction)
    rep.verdict = Verdict::inconclusive;
  else
    rep.verdict = rep.verdict_sup <= tol ? Verdict::pass : Verdict::fail;
  return rep;
}

double OracleComparison::worst() const {
  return std::max({tension, bitension, conformal.value_or(0.0)});
}

bool OracleComparison::ok() const {
  return tension <= kOracleTol && bitension <= kOracleTol && conformal.value_or(0.0) <= kConformalOracleTol;
}

OracleComparison compare_oracle(const VerificationCase& c, const Grid& grid) {
  OracleComparison out;
  const double ex = grid.exclusion_radius;
  for (double r : grid.points) {
    try {
      const Evaluated t = tension_terms(c.map, r, ex);
      const Evaluated b = bitension_terms(c.map, r, ex);
      const double ot = oracle_tension(c.map, r, ex).radial;
      const double ob = oracle_bitension(c.map, r, ex).radial;
      out.tension = std::max(out.tension, std::abs(t.value - ot) / (1.0 + t.scale));
      out.bitension = std::max(out.bitension, std::abs(b.value - ob) / (1.0 + b.scale));
      ++out.points;
    } catch (const Error& err) {
      if (!skippable(err)) throw;
      ++out.skipped;
    }
  }
  if (c.factor.trivial) return out;

  double worst = 0.0;
  for (const Interval& chart : grid.charts) {
    const ConformalFactor cf = c.factor_at(chart.mid());
    const Reparametrization rp = reparametrize(c.map.source, cf, chart);
    for (double r : grid.points) {
      if (!chart.contains_interior(r)) continue;
      try {
        const Evaluated e = conformal_bitension_terms(c.map, cf, r, ex);
        const double o = oracle_conformal_bitension(c.map, rp, r).radial;
        worst = std::max(worst, std::abs(e.value - o) / (1.0 + e.scale));
      } catch (const Error& err) {
        if (!skippable(err)) throw;
      }
    }
  }
  out.conformal = worst;
  return out;
}

nlohmann::json to_json(const ResidualReport& rep) {
  using nlohmann::json;
  json params = json::array();
  for (const auto& [k, v] : rep.parameters) params.push_back(json::array({k, v}));
  json points = json::array();
  for (const PointResidual& p : rep.points)
    points.push_back(json::array({p.r, p.rho, p.f, p.x, p.radial, p.angular, p.scale}));
  return json{
      {"case", rep.case_name},
      {"mode", std::string(to_string(rep.mode))},
      {"grid",
       {{"n", rep.grid.n},
        {"lo", rep.grid.lo},
        {"hi", rep.grid.hi},
        {"exclusion", rep.grid.exclusion},
        {"excluded", rep.grid.excluded}}},
      {"residual",
       {{"sup", rep.sup},
        {"rms", rep.rms},
        {"sup_x", rep.sup_x},
        {"sup_x2", rep.sup_x2},
        {"normalized_sup", rep.normalized_sup},
        {"verdict_sup", rep.verdict_sup}}},
      {"tol", rep.tol},
      {"verdict", std::string(to_string(rep.verdict))},
      {"expected", std::string(to_string(rep.expected))},
      {"skipped_points", rep.skipped_points},
      {"anchor", rep.anchor},
      {"branch", rep.branch},
      {"parameters", params},
      {"chart_signs", rep.chart_signs},
      {"oracle_sup", rep.oracle_sup ? json(*rep.oracle_sup) : json(nullptr)},
      {"points_columns", json::array({"r", "rho", "f", "x", "radial", "angular", "scale"})},
      {"points", points},
  };
}

ResidualReport report_from_json(const nlohmann::json& j) {
  ResidualReport rep;
  rep.case_name = field<std::string>(j, "case");
  try {
    rep.mode = mode_from_string(field<std::string>(j, "mode"));
  } catch (const Error& e) {
    io_error(e.what());
  }
  const auto& g = field<nlohmann::json>(j, "grid");
  rep.grid.n = field<std::size_t>(g, "n");
  rep.grid.lo = field<double>(g, "lo");
  rep.grid.hi = field<double>(g, "hi");
  rep.grid.exclusion = field<double>(g, "exclusion");
  rep.grid.excluded = field<std::vector<double>>(g, "excluded");
  const auto& res = field<nlohmann::json>(j, "residual");
  rep.sup = field<double>(res, "sup");
  rep.rms = field<double>(res, "rms");
  rep.sup_x = field<double>(res, "sup_x");
  rep.sup_x2 = field<double>(res, "sup_x2");
  rep.normalized_sup = field<double>(res, "normalized_sup");
  rep.verdict_sup = field<double>(res, "verdict_sup");
  rep.tol = field<double>(j, "tol");
  rep.verdict = verdict_from_string(field<std::string>(j, "verdict"));
  const std::string expected = field<std::string>(j, "expected");
  if (expected != "pass" && expected != "fail") io_error("unknown expected verdict '" + expected + "'");
  rep.expected = expected == "pass" ? Expected::pass : Expected::fail;
  rep.skipped_points = field<std::size_t>(j, "skipped_points");
  rep.anchor = field<std::string>(j, "anchor");
  rep.branch = field<std::string>(j, "branch");
  for (const auto& kv : field<std::vector<std::vector<std::string>>>(j, "parameters")) {
    if (kv.size() != 2) io_error("report parameter entries must be [name, value] pairs");
    rep.parameters.emplace_back(kv[0], kv[1]);
  }
  rep.chart_signs = field<std::vector<int>>(j, "chart_signs");
  if (!j.at("oracle_sup").is_null()) rep.oracle_sup = field<double>(j, "oracle_sup");
  for (const auto& p : field<std::vector<std::vector<double>>>(j, "points")) {
    if (p.size() != 7) io_error("report points must have 7 columns");
    rep.points.push_back({p[0], p[1], p[2], p[3], p[4], p[5], p[6]});
  }
  return rep;
}

void write_csv(const ResidualReport& rep, std::ostream& out) {
  out << "r,rho,f,x,residual_radial,residual_angular\n";
  for (const PointResidual& p : rep.points)
    out << shortest(p.r) << ',' << shortest(p.rho) << ',' << shortest(p.f) << ',' << shortest(p.x)
        << ',' << shortest(p.radial) << ',' << shortest(p.angular) << '\n';
}

void emit_report(const ResidualReport& rep, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) io_error("cannot open '" + path + "' for writing");
  if (format == ReportFormat::json)
    out << to_json(rep).dump(2) << '\n';
  else
    write_csv(rep, out);
  out.flush();
  if (!out) io_error("failed writing '" + path + "'");
}

}  // namespace biharm
