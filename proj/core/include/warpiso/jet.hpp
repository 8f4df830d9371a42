#pragma once

/// \file
/// Second-order forward-mode jets: a value with its gradient and Hessian
/// with respect to N independent variables.
///
/// Profiles, weights and graph functions in the catalog are written once as
/// generic expressions and evaluated on jets to obtain exact first and second
/// derivatives. This is not a general differentiation facility; it covers the
/// closed set of elementary functions the catalog needs.

#include <array>
#include <cmath>
#include <cstddef>

namespace warpiso {

template <std::size_t N>
struct Jet {
  double v = 0.0;
  std::array<double, N> d{};
  std::array<double, N * N> h{};  // row-major, symmetric

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet variable(std::size_t index, double value) {
    Jet j(value);
    j.d[index] = 1.0;
    return j;
  }

  double dd(std::size_t i, std::size_t k) const { return h[i * N + k]; }
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;

/// Value, first and second derivative of a scalar function at a point.
struct Deriv2 {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

inline Deriv2 to_deriv(const Jet1& j) { return {j.v, j.d[0], j.h[0]}; }

namespace jet_detail {

// Chain rule for a scalar function with derivatives (f0, f1, f2) at a.v.
template <std::size_t N>
Jet<N> chain(const Jet<N>& a, double f0, double f1, double f2) {
  Jet<N> r(f0);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = f1 * a.d[i];
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      r.h[i * N + k] = f1 * a.h[i * N + k] + f2 * a.d[i] * a.d[k];
  return r;
}

}  // namespace jet_detail

template <std::size_t N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.v + b.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
  for (std::size_t i = 0; i < N * N; ++i) r.h[i] = a.h[i] + b.h[i];
  return r;
}

template <std::size_t N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r(-a.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  for (std::size_t i = 0; i < N * N; ++i) r.h[i] = -a.h[i];
  return r;
}

template <std::size_t N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  return a + (-b);
}

template <std::size_t N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r(a.v * b.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      r.h[i * N + k] = a.v * b.h[i * N + k] + b.v * a.h[i * N + k] +
                       a.d[i] * b.d[k] + b.d[i] * a.d[k];
  return r;
}

template <std::size_t N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  const double x = b.v;
  return a * jet_detail::chain(b, 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

template <std::size_t N> Jet<N> operator+(const Jet<N>& a, double c) { return a + Jet<N>(c); }
template <std::size_t N> Jet<N> operator+(double c, const Jet<N>& a) { return a + Jet<N>(c); }
template <std::size_t N> Jet<N> operator-(const Jet<N>& a, double c) { return a - Jet<N>(c); }
template <std::size_t N> Jet<N> operator-(double c, const Jet<N>& a) { return Jet<N>(c) - a; }
template <std::size_t N> Jet<N> operator*(const Jet<N>& a, double c) { return a * Jet<N>(c); }
template <std::size_t N> Jet<N> operator*(double c, const Jet<N>& a) { return a * Jet<N>(c); }
template <std::size_t N> Jet<N> operator/(const Jet<N>& a, double c) { return a * Jet<N>(1.0 / c); }
template <std::size_t N> Jet<N> operator/(double c, const Jet<N>& a) { return Jet<N>(c) / a; }

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_detail::chain(a, s, c, -s);
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return jet_detail::chain(a, c, -s, -c);
}

template <std::size_t N>
Jet<N> tan(const Jet<N>& a) {
  const double t = std::tan(a.v);
  const double sec2 = 1.0 + t * t;
  return jet_detail::chain(a, t, sec2, 2.0 * t * sec2);
}

template <std::size_t N>
Jet<N> sinh(const Jet<N>& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_detail::chain(a, s, c, s);
}

template <std::size_t N>
Jet<N> cosh(const Jet<N>& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return jet_detail::chain(a, c, s, c);
}

template <std::size_t N>
Jet<N> tanh(const Jet<N>& a) {
  const double t = std::tanh(a.v);
  const double sech2 = 1.0 - t * t;
  return jet_detail::chain(a, t, sech2, -2.0 * t * sech2);
}

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  const double e = std::exp(a.v);
  return jet_detail::chain(a, e, e, e);
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
  return jet_detail::chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
  const double s = std::sqrt(a.v);
  return jet_detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

/// a^p for real p. At a = 0 the derivatives follow the one-sided limits of
/// x^p, which are finite only for p = 0, 1 or p >= 2.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
  const double x = a.v;
  if (p == 0.0) return Jet<N>(1.0);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (x == 0.0) {
    const double f1 = (p == 1.0) ? 1.0 : (p > 1.0 ? 0.0 : INFINITY);
    const double f2 = (p == 2.0) ? 2.0 : (p > 2.0 ? 0.0 : INFINITY);
    return jet_detail::chain(a, 0.0, f1, f2);
  }
  const double f0 = std::pow(x, p);
  return jet_detail::chain(a, f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x));
}

/// max(a, 0) with the derivatives of the active branch.
template <std::size_t N>
Jet<N> positive_part(const Jet<N>& a) {
  return a.v > 0.0 ? a : Jet<N>(0.0);
}

}  // namespace warpiso
