#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biharm/catalog.hpp"
#include "biharm/expr.hpp"
#include "biharm/ode.hpp"
#include "biharm/verify.hpp"
#include "json.hpp"

using namespace biharm;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kNumerical = 3 };

Overrides parse_sets(const std::vector<std::string>& sets) {
  Overrides out;
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::invalid_override, "--set expects key=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

void print_report(const ResidualReport& rep) {
  std::printf("%-26s %-20s verdict=%-12s expected=%-4s sup=%.3e normalized=%.3e verdict_sup=%.3e tol=%.1e skipped=%zu/%zu\n",
              rep.case_name.c_str(), std::string(to_string(rep.mode)).c_str(),
              std::string(to_string(rep.verdict)).c_str(), std::string(to_string(rep.expected)).c_str(),
              rep.sup, rep.normalized_sup, rep.verdict_sup, rep.tol, rep.skipped_points, rep.grid.n);
}

void print_oracle(const std::string& name, const OracleComparison& oc) {
  std::printf("%-26s oracle tension=%.3e bitension=%.3e", name.c_str(), oc.tension, oc.bitension);
  if (oc.conformal) std::printf(" conformal=%.3e", *oc.conformal);
  std::printf(" points=%zu skipped=%zu %s\n", oc.points, oc.skipped, oc.ok() ? "ok" : "MISMATCH");
}

Interval hull(const std::vector<Interval>& pieces) {
  if (pieces.empty()) throw Error(Errc::invalid_override, "case has no working interval");
  double lo = pieces.front().lo;
  double hi = pieces.front().hi;
  for (const Interval& p : pieces) {
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
  }
  return Interval(lo, hi);
}

struct VerifyOptions {
  std::string name;
  std::optional<double> tol;
  std::size_t grid_n = kDefaultGridN;
  double exclusion = kDefaultExclusion;
  std::string json_path;
  std::string csv_path;
  std::vector<std::string> sets;
  std::string mode;
};

int run_verify(const VerifyOptions& o) {
  const VerificationCase c = build_case(o.name, parse_sets(o.sets));
  const Grid grid = default_grid(c, o.grid_n, o.exclusion);
  std::optional<Mode> mode;
  if (!o.mode.empty()) mode = mode_from_string(o.mode);
  const ResidualReport rep = sweep(c, grid, o.tol.value_or(c.tolerance), mode);
  print_report(rep);
  if (!o.json_path.empty()) emit_report(rep, ReportFormat::json, o.json_path);
  if (!o.csv_path.empty()) emit_report(rep, ReportFormat::csv, o.csv_path);
  return rep.as_expected() ? kOk : kMismatch;
}

int run_verify_all(const std::string& json_path, std::size_t grid_n) {
  bool all = true;
  nlohmann::json out = nlohmann::json::array();
  for (const std::string& name : case_names()) {
    const VerificationCase c = build_case(name);
    const Grid grid = default_grid(c, grid_n);
    ResidualReport rep = sweep(c, grid, c.tolerance);
    const OracleComparison oc = compare_oracle(c, grid);
    rep.oracle_sup = oc.worst();
    print_report(rep);
    print_oracle(name, oc);
    all = all && rep.as_expected() && oc.ok();
    out.push_back(to_json(rep));
  }
  if (!json_path.empty()) {
    std::ofstream f(json_path);
    if (!f) throw Error(Errc::io_error, "cannot open '" + json_path + "' for writing");
    f << out.dump(2) << '\n';
  }
  std::printf("%s\n", all ? "all cases as expected" : "some cases NOT as expected");
  return all ? kOk : kMismatch;
}

int run_catalog_list() {
  for (const std::string& name : case_names()) {
    const VerificationCase c = build_case(name);
    std::printf("%-26s %-20s expect=%-4s tol=%.0e  %s\n", name.c_str(), std::string(to_string(c.mode)).c_str(),
                std::string(to_string(c.expected)).c_str(), c.tolerance, c.anchor.c_str());
  }
  return kOk;
}

int run_catalog_show(const std::string& name) {
  const VerificationCase c = build_case(name);
  std::printf("case: %s\nmode: %s\nexpected: %s\ntol: %g\nanchor: %s\n", c.name.c_str(),
              std::string(to_string(c.mode)).c_str(), std::string(to_string(c.expected)).c_str(), c.tolerance,
              c.anchor.c_str());
  if (!c.branch.empty()) std::printf("branch: %s\n", c.branch.c_str());
  std::printf("pieces:");
  for (const Interval& p : c.pieces) std::printf(" (%.17g, %.17g)", p.lo, p.hi);
  std::printf("\n");
  for (const ParameterDoc& d : case_parameters(name))
    std::printf("  --set %s=<value>  default %s  %s\n", d.name.c_str(), d.default_value.c_str(), d.meaning.c_str());
  return kOk;
}

int run_oracle(const std::string& name, std::size_t n, double exclusion, const std::vector<std::string>& sets) {
  const VerificationCase c = build_case(name, parse_sets(sets));
  const OracleComparison oc = compare_oracle(c, default_grid(c, n, exclusion));
  print_oracle(name, oc);
  return oc.ok() ? kOk : kMismatch;
}

int run_construct_f(const std::string& name, double c1, double c2, std::optional<double> basepoint,
                    std::size_t n, const std::vector<std::string>& sets) {
  VerificationCase c = build_case(name, parse_sets(sets));
  const Interval working = hull(c.working_intervals);
  c.factor = reduction_of_order_factor(c.map, c1, c2, working, basepoint);
  c.pieces.clear();
  for (const SignChart& chart : c.factor.sign_chart) c.pieces.push_back(chart.interval);
  c.working_intervals = c.working(kDefaultExclusion);
  c.mode = Mode::f_biharmonic;
  c.expected = Expected::pass;
  c.tolerance = kQuadratureTol;
  c.name = name + " (constructed f)";

  std::printf("%-24s %-24s\n", "r", "f(r)");
  constexpr int kRows = 17;
  for (int i = 0; i < kRows; ++i) {
    const double r = working.lo + working.width() * (i + 0.5) / kRows;
    std::printf("%-24.17g %-24.17g\n", r, c.factor.f(Jet4(r))[0]);
  }
  const ResidualReport rep = sweep(c, default_grid(c, n), c.tolerance);
  print_report(rep);
  return rep.verdict == Verdict::pass ? kOk : kMismatch;
}

struct OdeOptions {
  std::string p;
  std::string q;
  double r0 = 0.0;
  double y0 = 0.0;
  double dy0 = 0.0;
  double to = 1.0;
  int rows = 21;
};

int run_solve_ode(const OdeOptions& o) {
  if (o.to == o.r0) throw Error(Errc::invalid_override, "--to must differ from --r0");
  const Interval span(std::min(o.r0, o.to), std::max(o.r0, o.to));
  const double pad = 1e-6 * (1.0 + span.width());
  const Interval domain(span.lo - pad, span.hi + pad);
  LinearODE2 sys{compile_profile(parse_expr(o.p), domain), compile_profile(parse_expr(o.q), domain), domain};
  const ODESolution sol = solve_ivp(sys, o.r0, o.y0, o.dy0, span);
  std::printf("# steps %zu\n%-24s %-24s %-24s\n", sol.steps, "r", "y", "dy");
  const int rows = std::max(2, o.rows);
  for (int i = 0; i < rows; ++i) {
    const double r = o.r0 + (o.to - o.r0) * i / (rows - 1);
    const Jet4 y = sol.y(Jet4::variable(r));
    std::printf("%-24.17g %-24.17g %-24.17g\n", r, y[0], y[1]);
  }
  return kOk;
}

struct ResidualOptions {
  std::string sigma;
  std::string lambda;
  std::string rho;
  std::string f;
  std::string k = "1";
  double lo = 0.0;
  double hi = 1.0;
  std::string mode;
  double tol = kJetTol;
  std::size_t grid_n = kDefaultGridN;
  std::string csv_path;
};

int run_residual(const ResidualOptions& o) {
  const Interval domain(o.lo, o.hi);
  const Interval target(-kHalfLine, kHalfLine);
  const double k = evaluate(parse_expr(o.k, "__no_variable__"), Jet4(0.0))[0];
  RotSymMap m{{domain, compile_profile(parse_expr(o.sigma), domain), "sigma = " + o.sigma},
              {target, compile_profile(parse_expr(o.lambda, "rho"), target), "lambda = " + o.lambda},
              compile_profile(parse_expr(o.rho), domain),
              k};
  ConformalFactor cf = ConformalFactor::identity(domain);
  if (!o.f.empty()) cf = ConformalFactor{compile_profile(parse_expr(o.f), domain), {{domain, +1}}};
  const Mode mode = !o.mode.empty() ? mode_from_string(o.mode) : o.f.empty() ? Mode::biharmonic : Mode::f_biharmonic;
  if (mode == Mode::riccati) throw Error(Errc::invalid_override, "riccati mode needs a catalog case");
  VerificationCase c{"ad-hoc", m, cf, mode, Expected::pass, {domain}, {}, "user supplied", o.tol, std::nullopt, {}, {}};
  c.working_intervals = c.working(kDefaultExclusion);
  const ResidualReport rep = sweep(c, default_grid(c, o.grid_n), o.tol);
  print_report(rep);
  if (!o.csv_path.empty()) emit_report(rep, ReportFormat::csv, o.csv_path);
  return rep.verdict == Verdict::pass ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for biharmonic and f-biharmonic rotationally symmetric maps"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "Inspect the case catalog");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List case names, modes and anchors");
  std::string show_name;
  auto* catalog_show = catalog->add_subcommand("show", "Show one case and its parameters");
  catalog_show->add_option("case", show_name, "Case name")->required();

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Sweep one case and report its verdict");
  verify->add_option("case", vo.name, "Case name")->required();
  verify->add_option("--tol", vo.tol, "Tolerance (default: the case's)");
  verify->add_option("--grid-n", vo.grid_n, "Points per smooth piece")->check(CLI::PositiveNumber);
  verify->add_option("--exclusion", vo.exclusion, "Exclusion radius")->check(CLI::NonNegativeNumber);
  verify->add_option("--json", vo.json_path, "Write a JSON report");
  verify->add_option("--csv", vo.csv_path, "Write a CSV report");
  verify->add_option("--set", vo.sets, "Parameter override key=value");
  verify->add_option("--mode", vo.mode, "Override the residual mode");

  std::string all_json;
  auto* verify_all = app.add_subcommand("verify-all", "Sweep every case and compare with the oracle");
  std::size_t all_n = kDefaultGridN;
  verify_all->add_option("--json", all_json, "Write all reports as a JSON array");
  verify_all->add_option("--grid-n", all_n, "Points per smooth piece")->check(CLI::PositiveNumber);

  std::string oracle_name;
  std::size_t oracle_n = kDefaultGridN;
  double oracle_ex = kDefaultExclusion;
  std::vector<std::string> oracle_sets;
  auto* oracle = app.add_subcommand("oracle", "Compare closed forms with the Christoffel-symbol oracle");
  oracle->add_option("case", oracle_name, "Case name")->required();
  oracle->add_option("--grid-n", oracle_n, "Points per smooth piece")->check(CLI::PositiveNumber);
  oracle->add_option("--exclusion", oracle_ex, "Exclusion radius")->check(CLI::NonNegativeNumber);
  oracle->add_option("--set", oracle_sets, "Parameter override key=value");

  std::string cf_name;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> basepoint;
  std::size_t cf_n = kDefaultGridN;
  std::vector<std::string> cf_sets;
  auto* construct = app.add_subcommand("construct-f", "Build f = c1 + c2 int x^-2 sigma^-1 for a biharmonic case");
  construct->add_option("case", cf_name, "Case name")->required();
  construct->add_option("--c1", c1, "Additive constant")->required();
  construct->add_option("--c2", c2, "Integral multiplier")->required();
  construct->add_option("--basepoint", basepoint, "Base point of the integral");
  construct->add_option("--grid-n", cf_n, "Points per smooth piece")->check(CLI::PositiveNumber);
  construct->add_option("--set", cf_sets, "Parameter override key=value");

  OdeOptions oo;
  auto* ode = app.add_subcommand("solve-ode", "Solve y'' + p y' + q y = 0 and print a dense-output table");
  ode->add_option("--p", oo.p, "p(r) expression")->required();
  ode->add_option("--q", oo.q, "q(r) expression")->required();
  ode->add_option("--r0", oo.r0, "Initial point")->required();
  ode->add_option("--y0", oo.y0, "y(r0)")->required();
  ode->add_option("--dy0", oo.dy0, "y'(r0)")->required();
  ode->add_option("--to", oo.to, "End point")->required();
  ode->add_option("--rows", oo.rows, "Table rows")->check(CLI::Range(2, 100000));

  ResidualOptions ro;
  auto* residual = app.add_subcommand("residual", "Sweep an ad-hoc map given as expressions");
  residual->add_option("--sigma", ro.sigma, "sigma(r)")->required();
  residual->add_option("--lambda", ro.lambda, "lambda(rho)")->required();
  residual->add_option("--rho", ro.rho, "rho(r)")->required();
  residual->add_option("--k", ro.k, "Winding constant (expression)");
  residual->add_option("--f", ro.f, "f(r); selects the f-biharmonic mode");
  residual->add_option("--lo", ro.lo, "Left end of the domain")->required();
  residual->add_option("--hi", ro.hi, "Right end of the domain")->required();
  residual->add_option("--mode", ro.mode, "Residual mode");
  residual->add_option("--tol", ro.tol, "Tolerance");
  residual->add_option("--grid-n", ro.grid_n, "Grid points")->check(CLI::PositiveNumber);
  residual->add_option("--csv", ro.csv_path, "Write a CSV report");

  VerifyOptions po;
  auto* plot = app.add_subcommand("plot", "Write r, rho, f, x and residual columns for plotting");
  plot->add_option("case", po.name, "Case name")->required();
  plot->add_option("--csv", po.csv_path, "CSV destination")->required();
  plot->add_option("--grid-n", po.grid_n, "Points per smooth piece")->check(CLI::PositiveNumber);
  plot->add_option("--set", po.sets, "Parameter override key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (catalog_list->parsed()) return run_catalog_list();
    if (catalog_show->parsed()) return run_catalog_show(show_name);
    if (verify->parsed()) return run_verify(vo);
    if (verify_all->parsed()) return run_verify_all(all_json, all_n);
    if (oracle->parsed()) return run_oracle(oracle_name, oracle_n, oracle_ex, oracle_sets);
    if (construct->parsed()) return run_construct_f(cf_name, c1, c2, basepoint, cf_n, cf_sets);
    if (ode->parsed()) return run_solve_ode(oo);
    if (residual->parsed()) return run_residual(ro);
    if (plot->parsed()) {
      const VerificationCase c = build_case(po.name, parse_sets(po.sets));
      emit_report(sweep(c, default_grid(c, po.grid_n), c.tolerance), ReportFormat::csv, po.csv_path);
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return e.is_usage_error() ? kUsage : kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
  return kUsage;
}
