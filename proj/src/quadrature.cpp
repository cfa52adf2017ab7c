#include "biharm/quadrature.hpp"

#include <algorithm>
#include <limits>
#include <array>
#include <cmath>
#include <mutex>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace biharm {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "integrand not finite on [" << a << ", " << b << "]";
    throw Error(Errc::singular_point, os.str());
  }
  return {a, b, value, error};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                     std::size_t budget) {
  if (a == b) return {0.0, 0.0, 0};
  if (b < a) {
    QuadResult r = integrate(f, b, a, tol, budget);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b);
  double total = first.value;
  double error = first.error;
  panels.push(first);
  std::size_t count = 1;
  // Error estimates are re-summed periodically to avoid drift from the
  // running subtraction.
  while (error > tol) {
    if (count >= budget) {
      std::ostringstream os;
      os << "quadrature on [" << a << ", " << b << "] did not reach " << tol << " (estimate "
         << error << ")";
      throw Error(Errc::tolerance_not_met, os.str());
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw Error(Errc::tolerance_not_met, "quadrature panel collapsed to machine resolution");
    }
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    panels.push(left);
    panels.push(right);
    ++count;
    if (count % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    } else {
      total += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
    }
  }
  // Sum in a fixed order so the result does not depend on heap layout.
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  total = 0.0;
  error = 0.0;
  for (const Panel& p : all) {
    total += p.value;
    error += p.error;
  }
  return {total, error, count};
}

namespace {

std::function<double(double)> value_of(const Profile& p) {
  return [p](double x) { return p(Jet4(x))[0]; };
}

void check_quad_range(const Profile& p, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!p.domain().contains_closed(lo) || !p.domain().contains_closed(hi)) {
    std::ostringstream os;
    os << "quadrature range [" << lo << ", " << hi << "] leaves the domain of " << p.label();
    throw Error(Errc::out_of_domain, os.str());
  }
  for (double s : p.singularities()) {
    if (s >= lo && s <= hi) {
      std::ostringstream os;
      os << "singularity " << s << " inside quadrature range [" << lo << ", " << hi << "]";
      throw Error(Errc::singular_point, os.str());
    }
  }
}

// Cumulative integral from a basepoint, split on a fixed lattice of knots
// base + j*h. Full lattice segments are cached; the trailing partial segment
// is always recomputed.
class SegmentedIntegral {
 public:
  SegmentedIntegral(Profile integrand, double base, double tol)
      : integrand_(std::move(integrand)),
        f_(value_of(integrand_)),
        base_(base),
        h_(integrand_.domain().width() / 64.0),
        tol_(tol) {}

  double operator()(double x) const {
    if (x == base_) return 0.0;
    if (x > base_) {
      const auto j = static_cast<long long>(std::floor((x - base_) / h_));
      double sum = 0.0;
      for (long long i = 0; i < j; ++i) sum += segment(i);
      return sum + partial(base_ + static_cast<double>(j) * h_, x);
    }
    const auto j = static_cast<long long>(std::ceil((x - base_) / h_));
    double sum = 0.0;
    for (long long i = j; i < 0; ++i) sum += segment(i);
    return -(sum + partial(x, base_ + static_cast<double>(j) * h_));
  }

 private:
  double partial(double a, double b) const {
    check_quad_range(integrand_, a, b);
    return integrate(f_, a, b, tol_).value;
  }

  double segment(long long i) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(i);
      if (it != cache_.end()) return it->second;
    }
    const double a = base_ + static_cast<double>(i) * h_;
    const double b = base_ + static_cast<double>(i + 1) * h_;
    const double v = partial(a, b);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(i, v);
    return v;
  }

  Profile integrand_;
  std::function<double(double)> f_;
  double base_;
  double h_;
  double tol_;
  mutable std::mutex mu_;
  mutable std::unordered_map<long long, double> cache_;
};

}  // namespace

double adaptive_quad(const Profile& p, double a, double b, double tol) {
  check_quad_range(p, a, b);
  return integrate(value_of(p), a, b, tol).value;
}

Profile antiderivative(const Profile& p, double basepoint, double tol, std::string label) {
  if (!p.domain().contains_closed(basepoint)) {
    std::ostringstream os;
    os << "basepoint " << basepoint << " outside the domain of " << p.label();
    throw Error(Errc::out_of_domain, os.str());
  }
  auto cumulative = std::make_shared<const SegmentedIntegral>(p, basepoint, tol);
  if (label.empty()) label = "int(" + p.label() + ")";
  return Profile(
      [p, cumulative](const Jet4& a) {
        const Jet4 slope = p(a) * derivative(a);
        return integrate(slope, (*cumulative)(a[0]));
      },
      p.domain(), p.singularities(), std::move(label), std::min(4, p.valid_order() + 1));
}

MonotoneInverse invert_antiderivative(const Profile& integrand, double basepoint, Interval working,
                                      double tol) {
  Profile forward = antiderivative(integrand.with_domain(working), basepoint, tol);
  forward = forward.with_domain(working);

  constexpr std::size_t kTable = 257;
  auto rs = std::make_shared<std::vector<double>>(kTable);
  auto ss = std::make_shared<std::vector<double>>(kTable);
  for (std::size_t j = 0; j < kTable; ++j) {
    const double r = working.lo + working.width() * static_cast<double>(j) / (kTable - 1);
    (*rs)[j] = r;
    (*ss)[j] = forward(Jet4(r))[0];
    if (!std::isfinite((*ss)[j]) || (j > 0 && !((*ss)[j] > (*ss)[j - 1]))) {
      std::ostringstream os;
      os << "s(r) is not strictly increasing near r = " << r;
      throw Error(Errc::inversion_failure, os.str());
    }
  }
  const Interval s_range((*ss).front(), (*ss).back());

  auto solve = [forward, integrand, rs, ss](double s) {
    const auto& S = *ss;
    const auto& R = *rs;
    if (s < S.front() || s > S.back()) {
      std::ostringstream os;
      os << "value " << s << " outside the range of the inverted map";
      throw Error(Errc::out_of_domain, os.str());
    }
    auto it = std::upper_bound(S.begin(), S.end(), s);
    std::size_t j = it == S.begin() ? 0 : static_cast<std::size_t>(it - S.begin()) - 1;
    if (j >= S.size() - 1) j = S.size() - 2;
    double lo = R[j];
    double hi = R[j + 1];
    auto s_at = [&forward](double r) { return forward(Jet4(r))[0]; };
    const double target_tol = 1e-12 * std::max(1.0, std::abs(s)) + 1e-12;
    // Newton from the table's linear interpolant, kept inside a shrinking
    // bracket; bisection whenever a step leaves it.
    double r = lo + (hi - lo) * (s - S[j]) / (S[j + 1] - S[j]);
    bool converged = false;
    for (int iter = 0; iter < 100 && !converged; ++iter) {
      const Jet4 fr = forward(Jet4::variable(r));
      const double err = fr[0] - s;
      converged = std::abs(err) <= target_tol;
      if (converged) break;
      if (err < 0.0)
        lo = r;
      else
        hi = r;
      const double next = r - err / fr[1];
      r = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r))) break;
    }
    if (!converged && !(std::abs(s_at(r) - s) <= target_tol)) {
      std::ostringstream os;
      os << "monotone inversion did not converge at s = " << s;
      throw Error(Errc::inversion_failure, os.str());
    }
    return r;
  };

  Profile inverse(
      [integrand, solve](const Jet4& a) {
        const double r0 = solve(a[0]);
        // Picard iteration on dr/ds = 1 / integrand(r) fixes one more
        // coefficient per pass.
        Jet4 series(r0);
        for (std::size_t pass = 0; pass < Jet4::order; ++pass)
          series = integrate(1.0 / integrand(series), r0);
        return compose(series, a);
      },
      s_range, {}, "inverse(" + forward.label() + ")", std::min(4, integrand.valid_order() + 1));
  return {forward, inverse, basepoint};
}

}  // namespace biharm
