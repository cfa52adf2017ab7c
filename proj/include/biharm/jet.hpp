#pragma once

// Truncated Taylor series ("jets") with the usual arithmetic recurrences.
//
// A Jet<N> stores normalized coefficients c[k] = f^(k)(a) / k! of a function
// expanded around some point a. Operations propagate these coefficients
// exactly up to order N, so evaluating an expression on Jet::variable(a)
// returns the value and the first N derivatives of that expression at a.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>

namespace biharm {

template <std::size_t N>
class Jet {
 public:
  static constexpr std::size_t order = N;

  constexpr Jet() { c_.fill(0.0); }
  constexpr explicit Jet(double value) {
    c_.fill(0.0);
    c_[0] = value;
  }

  /// The identity function expanded around `at`.
  static constexpr Jet variable(double at) {
    Jet j(at);
    if constexpr (N >= 1) j.c_[1] = 1.0;
    return j;
  }

  static constexpr Jet nan() {
    Jet j;
    j.c_.fill(std::numeric_limits<double>::quiet_NaN());
    return j;
  }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }

  constexpr double value() const { return c_[0]; }

  /// k-th derivative, i.e. k! * c[k].
  constexpr double derivative(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return fact * c_[k];
  }

  bool finite() const {
    for (double v : c_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  /// True when every coefficient above order 0 vanishes.
  constexpr bool is_constant() const {
    for (std::size_t k = 1; k <= N; ++k)
      if (c_[k] != 0.0) return false;
    return true;
  }

  constexpr const std::array<double, N + 1>& coefficients() const { return c_; }

  constexpr Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr Jet& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const Jet&, const Jet&) = default;

 private:
  std::array<double, N + 1> c_;
};

using Jet4 = Jet<4>;

template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a) {
  a *= -1.0;
  return a;
}

template <std::size_t N>
constexpr Jet<N> operator+(Jet<N> a, const Jet<N>& b) {
  return a += b;
}
template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a, const Jet<N>& b) {
  return a -= b;
}
template <std::size_t N>
constexpr Jet<N> operator+(Jet<N> a, double b) {
  a[0] += b;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator+(double a, Jet<N> b) {
  b[0] += a;
  return b;
}
template <std::size_t N>
constexpr Jet<N> operator-(Jet<N> a, double b) {
  a[0] -= b;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator-(double a, const Jet<N>& b) {
  return a + (-b);
}
template <std::size_t N>
constexpr Jet<N> operator*(Jet<N> a, double s) {
  a *= s;
  return a;
}
template <std::size_t N>
constexpr Jet<N> operator*(double s, Jet<N> a) {
  a *= s;
  return a;
}

template <std::size_t N>
constexpr Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
    r[k] = s;
  }
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  for (std::size_t k = 0; k <= N; ++k) {
    double s = a[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b[j] * r[k - j];
    r[k] = s / b[0];
  }
  return r;
}

template <std::size_t N>
constexpr Jet<N> operator/(const Jet<N>& a, double s) {
  return a * (1.0 / s);
}

template <std::size_t N>
constexpr Jet<N> operator/(double a, const Jet<N>& b) {
  return Jet<N>(a) / b;
}

/// Series of the derivative: d[k] = (k+1) c[k+1]. The top coefficient is
/// unknown at this order and is set to zero.
template <std::size_t N>
constexpr Jet<N> derivative(const Jet<N>& a) {
  Jet<N> d;
  for (std::size_t k = 0; k < N; ++k) d[k] = static_cast<double>(k + 1) * a[k + 1];
  return d;
}

/// Series of the antiderivative with constant term `c0`.
template <std::size_t N>
constexpr Jet<N> integrate(const Jet<N>& g, double c0) {
  Jet<N> r(c0);
  for (std::size_t k = 1; k <= N; ++k) r[k] = g[k - 1] / static_cast<double>(k);
  return r;
}

/// Composition of series: treats `outer` as the Taylor series of some
/// function around inner[0] and returns the series of outer(inner(.)).
template <std::size_t N>
constexpr Jet<N> compose(const Jet<N>& outer, const Jet<N>& inner) {
  Jet<N> delta = inner;
  delta[0] = 0.0;
  Jet<N> r(outer[N]);
  for (std::size_t k = N; k-- > 0;) r = r * delta + outer[k];
  return r;
}

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  Jet<N> e;
  e[0] = std::exp(a[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return e;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
  Jet<N> l;
  l[0] = std::log(a[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * a[k - j];
    l[k] = (a[k] - s / static_cast<double>(k)) / a[0];
  }
  return l;
}

namespace detail {

template <std::size_t N>
void sin_cos(const Jet<N>& a, Jet<N>& s, Jet<N>& c) {
  s[0] = std::sin(a[0]);
  c[0] = std::cos(a[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double ja = static_cast<double>(j) * a[j];
      ss += ja * c[k - j];
      cc += ja * s[k - j];
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = -cc / static_cast<double>(k);
  }
}

}  // namespace detail

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sin_cos(a, s, c);
  return s;
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sin_cos(a, s, c);
  return c;
}

template <std::size_t N>
Jet<N> tan(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sin_cos(a, s, c);
  return s / c;
}

template <std::size_t N>
Jet<N> cot(const Jet<N>& a) {
  Jet<N> s, c;
  detail::sin_cos(a, s, c);
  return c / s;
}

/// a^p for a real exponent. Small non-negative integer powers use repeated
/// multiplication so that a zero base is allowed.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
  if (p >= 0.0 && p <= 16.0 && p == std::floor(p)) {
    Jet<N> result(1.0);
    Jet<N> base = a;
    auto n = static_cast<unsigned>(p);
    while (n) {
      if (n & 1u) result = result * base;
      base = base * base;
      n >>= 1u;
    }
    return result;
  }
  Jet<N> w;
  w[0] = std::pow(a[0], p);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * w[k - j];
    w[k] = s / (static_cast<double>(k) * a[0]);
  }
  return w;
}

template <std::size_t N>
Jet<N> pow(const Jet<N>& a, const Jet<N>& b) {
  if (b.is_constant()) return pow(a, b[0]);
  return exp(b * log(a));
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
  return pow(a, 0.5);
}

template <std::size_t N>
Jet<N> atan(const Jet<N>& a) {
  const Jet<N> g = derivative(a) / (1.0 + a * a);
  return integrate(g, std::atan(a[0]));
}

template <std::size_t N>
Jet<N> acos(const Jet<N>& a) {
  if (!(std::abs(a[0]) < 1.0)) {
    // acos is not differentiable at +-1
    Jet<N> r = Jet<N>::nan();
    r[0] = std::acos(a[0]);
    return a.is_constant() ? Jet<N>(r[0]) : r;
  }
  const Jet<N> g = -derivative(a) / sqrt(1.0 - a * a);
  return integrate(g, std::acos(a[0]));
}

/// |a|, smooth on either side of a zero. At an exact zero the result is
/// non-finite so callers can report a singular point.
template <std::size_t N>
Jet<N> abs(const Jet<N>& a) {
  if (a[0] > 0.0) return a;
  if (a[0] < 0.0) return -a;
  return a.is_constant() ? Jet<N>(0.0) : Jet<N>::nan();
}

template <std::size_t N>
std::ostream& operator<<(std::ostream& os, const Jet<N>& a) {
  os << '[';
  for (std::size_t k = 0; k <= N; ++k) os << (k ? ", " : "") << a[k];
  return os << ']';
}

}  // namespace biharm
