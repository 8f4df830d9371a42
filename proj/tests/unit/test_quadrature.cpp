#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "warpiso/errors.hpp"
#include "warpiso/quadrature.hpp"
#include "warpiso/spectral.hpp"

using namespace warpiso;
constexpr double kPi = std::numbers::pi;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre(8);
  double sum = 0.0, s14 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i];
    s14 += rule.weights[i] * std::pow(rule.nodes[i], 14);
  }
  EXPECT_NEAR(sum, 2.0, 1e-15);
  EXPECT_NEAR(s14, 2.0 / 15.0, 1e-15);
}

TEST(FiberGrid, NodeCountsAndWeights) {
  const auto c8 = fiber_grid(FiberSpec::circle(1.0), {8, 0});
  ASSERT_EQ(c8.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(c8.weight(i), 2 * kPi / 8, 1e-15);
  double total = 0.0;
  const auto s2 = fiber_grid(FiberSpec::sphere(1.0), {16, 32});
  for (double w : s2.weights()) total += w;
  EXPECT_NEAR(total, 4 * kPi, 1e-13);
  total = 0.0;
  const auto c2 = fiber_grid(FiberSpec::circle(2.0), {8, 0});
  for (double w : c2.weights()) total += w;
  EXPECT_NEAR(total, 4 * kPi, 1e-14);
  EXPECT_THROW(fiber_grid(FiberSpec::abstract(3, 1.0), {8, 8}), UnsupportedError);
}

TEST(FiberIntegral, Examples) {
  const auto circle = fiber_grid(FiberSpec::circle(1.0), {16, 0});
  EXPECT_NEAR(integrate_fiber(circle, [&](std::size_t i) { return std::pow(std::cos(circle.coords(i)[0]), 2); }), kPi,
              1e-14);
  const auto sphere = fiber_grid(FiberSpec::sphere(1.0), {16, 32});
  EXPECT_NEAR(integrate_fiber(sphere, [&](std::size_t i) { return std::pow(std::cos(sphere.coords(i)[0]), 2); }),
              4 * kPi / 3, 1e-13);
  const auto big = fiber_grid(FiberSpec::sphere(2.0), {16, 32});
  EXPECT_NEAR(integrate_fiber(big, [](std::size_t) { return 1.0; }), 16 * kPi, 1e-12);
}

TEST(FiberIntegral, SpectralConvergenceOnCircle) {
  auto integral = [](int n) {
    const auto g = fiber_grid(FiberSpec::circle(1.0), {n, 0});
    return integrate_fiber(g, [&](std::size_t i) { return std::exp(std::cos(g.coords(i)[0])); });
  };
  EXPECT_NEAR(integral(16), integral(32), 1e-12);
  EXPECT_NEAR(integral(32), 2 * kPi * std::cyl_bessel_i(0.0, 1.0), 1e-13);
}

TEST(RadialIntegral, Examples) {
  EXPECT_NEAR(integrate_radial([](double r) { return r * r; }, 0.0, 1.0), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(integrate_radial([](double r) { return std::sinh(r); }, 0.0, 1.0), std::cosh(1.0) - 1.0, 1e-14);
  EXPECT_NEAR(integrate_radial([](double r) { return 1.0 / r; }, 1.0, std::exp(1.0)), 1.0, 1e-14);
}

TEST(RadialIntegral, HandlesEndpointSingularity) {
  const auto res = integrate_radial_detailed([](double r) { return 1.0 / std::sqrt(r); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(res.value, 2.0, 1e-8);
  EXPECT_GT(res.panels, 1);
}

TEST(CompensatedSumTest, RecoversSmallTerms) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-14, 1e-20);
}

TEST(Spectral, PeriodicDerivativesOfTrigPolynomial) {
  const int n = 32;
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    f[i] = std::sin(3 * t) + 0.5 * std::cos(t);
  }
  const auto d = periodic_derivatives(f);
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    EXPECT_NEAR(d.d1[i], 3 * std::cos(3 * t) - 0.5 * std::sin(t), 1e-12);
    EXPECT_NEAR(d.d2[i], -9 * std::sin(3 * t) - 0.5 * std::cos(t), 1e-11);
  }
}

TEST(Spectral, SphereDerivativesOfLowDegreeHarmonics) {
  const auto g = fiber_grid(FiberSpec::sphere(1.0), {12, 24});
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto [p, a] = g.coords(i);
    f[i] = std::sin(p) * std::cos(a) + std::pow(std::cos(p), 2) + std::sin(p) * std::sin(p) * std::sin(2 * a);
  }
  const auto d = sphere_derivatives(g, f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto [p, a] = g.coords(i);
    const double sp = std::sin(p), cp = std::cos(p);
    EXPECT_NEAR(d.value[i], f[i], 1e-12);
    EXPECT_NEAR(d.d_colat[i], cp * std::cos(a) - 2 * cp * sp + 2 * sp * cp * std::sin(2 * a), 1e-11);
    EXPECT_NEAR(d.d_azim[i], -sp * std::sin(a) + 2 * sp * sp * std::cos(2 * a), 1e-11);
    EXPECT_NEAR(d.d_colat2[i], -sp * std::cos(a) - 2 * std::cos(2 * p) + 2 * std::cos(2 * p) * std::sin(2 * a), 1e-10);
    EXPECT_NEAR(d.d_colat_azim[i], -cp * std::sin(a) + 4 * sp * cp * std::cos(2 * a), 1e-10);
    EXPECT_NEAR(d.d_azim2[i], -sp * std::cos(a) - 4 * sp * sp * std::sin(2 * a), 1e-10);
  }
}

TEST(Spectral, ZonalSeriesInterpolatesAndDifferentiates) {
  const auto g = fiber_grid(FiberSpec::sphere(1.0), {16, 8});
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = 1.0 + 0.3 * std::cos(2 * g.coords(i)[0]);
  const auto z = ZonalSeries::fit(g, f);
  for (double p : {0.1, 0.9, 2.0, 3.0}) {
    const Deriv2 d = z(p);
    EXPECT_NEAR(d.f, 1.0 + 0.3 * std::cos(2 * p), 1e-12);
    EXPECT_NEAR(d.df, -0.6 * std::sin(2 * p), 1e-11);
    EXPECT_NEAR(d.d2f, -1.2 * std::cos(2 * p), 1e-10);
  }
  EXPECT_THROW(z(0.0), RangeError);
}
