#pragma once

// Grid sweeps of a case's residual, verdicts, oracle comparison and reports.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biharm/catalog.hpp"
#include "json.hpp"

namespace biharm {

inline constexpr std::size_t kDefaultGridN = 512;
/// More skipped points than this fraction makes a report inconclusive.
inline constexpr double kMaxSkippedFraction = 0.02;
/// Per-point rounding allowance in units of eps * (magnitude of the summed
/// terms); see Evaluated.
inline constexpr double kRoundingUlps = 64.0;

inline constexpr double kOracleTol = 1e-7;
inline constexpr double kConformalOracleTol = 1e-6;

struct Grid {
  std::vector<double> points;  // ascending, interior to the charts
  double exclusion_radius;
  std::vector<Interval> charts;  // the shrunk pieces the points live on
};

/// n Chebyshev-Gauss points on every piece shrunk by `exclusion`.
Grid default_grid(const VerificationCase& c, std::size_t n = kDefaultGridN,
                  double exclusion = kDefaultExclusion);

enum class Verdict { pass, fail, inconclusive };
std::string_view to_string(Verdict v);
/// IOError on anything else.
Verdict verdict_from_string(std::string_view s);

struct PointResidual {
  double r;
  double rho;
  double f;
  double x;
  double radial;
  double angular;
  double scale;  // magnitude of the summed terms
};

struct GridSummary {
  std::size_t n = 0;
  double lo = 0.0;
  double hi = 0.0;
  double exclusion = 0.0;
  std::vector<double> excluded;  // declared singular points inside the domain
};

struct ResidualReport {
  std::string case_name;
  Mode mode = Mode::harmonic;
  GridSummary grid;
  std::vector<PointResidual> points;  // evaluated points only
  std::size_t skipped_points = 0;
  double sup = 0.0;  // raw sup |radial|
  double rms = 0.0;
  double sup_x = 0.0;
  double sup_x2 = 0.0;
  /// sup |res| / (1 + sup|x| + sup|x''|)
  double normalized_sup = 0.0;
  /// As normalized_sup after removing kRoundingUlps * eps * scale per point;
  /// the verdict compares this with tol.
  double verdict_sup = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::inconclusive;
  Expected expected = Expected::pass;
  std::string anchor;
  std::string branch;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<int> chart_signs;
  std::optional<double> oracle_sup;

  /// True when the verdict is the one the case expects.
  bool as_expected() const;
};

/// Evaluates the mode's residual (or `mode` when given) at every grid
/// point. SingularPoint, OutOfDomain and NonPositiveFactor at a point skip it.
ResidualReport sweep(const VerificationCase& c, const Grid& grid, double tol,
                     std::optional<Mode> mode = std::nullopt);

struct OracleComparison {
  double tension = 0.0;  // sup of |formula - oracle| / (1 + scale)
  double bitension = 0.0;
  std::optional<double> conformal;
  std::size_t points = 0;
  std::size_t skipped = 0;

  double worst() const;
  bool ok() const;
};

/// Closed forms against the Christoffel-symbol oracle on the grid; the
/// conformal path (when the case has a nontrivial factor) reparametrizes
/// each chart once.
OracleComparison compare_oracle(const VerificationCase& c, const Grid& grid);

nlohmann::json to_json(const ResidualReport& rep);
/// IOError on missing or mistyped fields.
ResidualReport report_from_json(const nlohmann::json& j);

/// Columns r, rho, f, x, residual_radial, residual_angular; one row per
/// evaluated point.
void write_csv(const ResidualReport& rep, std::ostream& out);

enum class ReportFormat { json, csv };
/// IOError when the destination cannot be written.
void emit_report(const ResidualReport& rep, ReportFormat format, const std::string& path);

}  // namespace biharm
