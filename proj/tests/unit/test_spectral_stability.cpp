#include <cmath>
#include <functional>
#include <numbers>

#include <gtest/gtest.h>

#include "warpiso/errors.hpp"
#include "warpiso/graph_catalog.hpp"
#include "warpiso/profile_catalog.hpp"
#include "warpiso/spectral_stability.hpp"

using namespace warpiso;
constexpr double kPi = std::numbers::pi;

namespace {

// Smallest positive root of f on (lo, hi) found by scanning then bisecting.
double first_root(const std::function<double(double)>& f, double lo, double hi, int steps = 4000) {
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double x1 = lo + (hi - lo) * i / steps;
    const double f1 = f(x1);
    if (f0 == 0.0) return x0;
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
    f0 = f1;
  }
  return NAN;
}

}  // namespace

TEST(SliceStability, Examples) {
  const auto sin_s1_2 = slice_stability({sphere_profile(), FiberSpec::circle(2.0)}, 1.0);
  EXPECT_NEAR(sin_s1_2.curvature_term, 1.0, 1e-14);
  EXPECT_NEAR(sin_s1_2.lambda1, 0.25, 1e-14);
  EXPECT_FALSE(sin_s1_2.stable);

  const auto exp_s1 = slice_stability({exponential_profile(), FiberSpec::circle(1.0)}, 1.0);
  EXPECT_NEAR(exp_s1.curvature_term, 0.0, 1e-12);
  EXPECT_TRUE(exp_s1.stable);
  EXPECT_FALSE(exp_s1.marginal);

  const auto hyp = slice_stability({hyperbolic_profile(), FiberSpec::circle(1.0)}, 1.0);
  EXPECT_TRUE(hyp.marginal);
  EXPECT_TRUE(hyp.stable);

  EXPECT_THROW(slice_stability({euclidean_profile(), FiberSpec::abstract(1, 1.0)}, 1.0), UnsupportedError);
}

TEST(SecondVariation, ProbeMatchesFormula) {
  for (double R : {2.0, 0.5}) {
    const WarpedSpace space(sphere_profile(), FiberSpec::circle(R));
    const auto p = second_variation_probe(space, 1.0);
    // (1/R^2 - 1) * pi R / sin(1)
    const double expected = (1.0 / (R * R) - 1.0) * kPi * R / std::sin(1.0);
    EXPECT_NEAR(p.formula, expected, 1e-12 * std::abs(expected));
    EXPECT_NEAR(p.fd, p.formula, 1e-6 * std::abs(p.formula)) << R;
    EXPECT_EQ(p.volume_shifts.size(), 4u);
  }
  const auto exp_probe = second_variation_probe({exponential_profile(), FiberSpec::circle(1.0)}, 1.0);
  EXPECT_GT(exp_probe.fd, 0.0);
  EXPECT_NEAR(exp_probe.fd, exp_probe.formula, 1e-6 * exp_probe.formula);
  EXPECT_THROW(second_variation_probe({euclidean_profile(), FiberSpec::sphere(1.0)}, 1.0), UnsupportedError);
}

TEST(SmallBall, Threshold) {
  const auto unit = small_ball_threshold({euclidean_profile(), FiberSpec::circle(1.0)});
  EXPECT_NEAR(unit.threshold, 1.0, 1e-14);
  EXPECT_FALSE(unit.violated);

  const auto scaled = small_ball_threshold({scaled_profile(euclidean_profile(), 2.0), FiberSpec::circle(4.0)});
  // (2 pi / (2 pi * 4))^1
  EXPECT_NEAR(scaled.threshold, 0.25, 1e-14);
  EXPECT_NEAR(scaled.s_prime0, 2.0, 1e-14);
  EXPECT_TRUE(scaled.violated);

  EXPECT_THROW(small_ball_threshold({exponential_profile(), FiberSpec::circle(1.0)}), PreconditionError);
}

TEST(PowerAnnulus, RatioDecays) {
  const auto a = power_counterexample(3, 100.0);
  EXPECT_NEAR(a.volume_ratio, 1.0, 1e-10);
  EXPECT_NEAR(a.volume_closed_form, 1.0, 1e-15);
  EXPECT_NEAR(a.area_ratio, 1.0 / 100.0 + 1.0 / (100.0 * std::numbers::e), 1e-14);
  const auto b = power_counterexample(3, 1000.0);
  EXPECT_LT(b.area_ratio, a.area_ratio);
  EXPECT_NEAR(b.volume_ratio, 1.0, 1e-10);
  EXPECT_THROW(power_counterexample(3, 0.5), RangeError);
}

TEST(Lambda1, CircleAndSphereEquality) {
  const WarpedSpace plane(euclidean_profile(), FiberSpec::circle(1.0));
  const auto circle = lambda1_bound_check(slice_graph(plane, 2.0, fiber_grid(plane.fiber())), 0);
  EXPECT_NEAR(circle.eigenvalue, 0.25, 1e-12);
  EXPECT_TRUE(circle.equality);

  const WarpedSpace r3(euclidean_profile(), FiberSpec::sphere(1.0));
  const auto g = slice_graph(r3, 1.5, fiber_grid(r3.fiber()));
  for (int k : {0, 1}) {
    const auto sphere = lambda1_bound_check(g, k);
    // C(1, k) rho^-k * 2 / rho^2
    const double expected = (k == 0 ? 1.0 : 1.0 / 1.5) * 2.0 / (1.5 * 1.5);
    EXPECT_NEAR(sphere.eigenvalue, expected, 1e-12) << k;
    EXPECT_TRUE(sphere.equality) << k;
  }
}

TEST(Lambda1, EllipseStrict) {
  const WarpedSpace plane(euclidean_profile(), FiberSpec::circle(1.0));
  const auto g = build_star_graph(plane, ellipse_graph(2.0, 1.0), fiber_grid(plane.fiber()));
  const auto rec = lambda1_bound_check(g, 0);
  EXPECT_NEAR(rec.eigenvalue, std::pow(2 * kPi / surface_area(g), 2), 1e-12);
  EXPECT_TRUE(rec.holds);
  EXPECT_FALSE(rec.equality);
  EXPECT_THROW(lambda1_bound_check(build_star_graph({hyperbolic_profile(), FiberSpec::circle(1.0)},
                                                    constant_graph(1.0), fiber_grid(FiberSpec::circle(1.0))),
                                   0),
               UnsupportedError);
}

TEST(Steklov, Balls) {
  const auto ball = steklov_bound_check(BallDomain{2.0, 3});
  EXPECT_NEAR(ball.eigenvalue, 0.5, 1e-15);
  EXPECT_TRUE(ball.equality);
  const auto disk = steklov_bound_check(BallDomain{1.0, 2});
  EXPECT_NEAR(disk.eigenvalue, 1.0, 1e-15);
  EXPECT_TRUE(disk.equality);
}

TEST(Steklov, AnnulusAgainstModeDeterminants) {
  const double a = 0.5, b = 1.0;
  // Mode 0: u = A + B log r.
  const auto det0 = [&](double p) {
    return (-p) * (-1.0 / a - p * std::log(a)) - (1.0 / b - p * std::log(b)) * (-p);
  };
  // Mode j: u = A r^j + B r^-j.
  const auto detj = [&](int j) {
    return [=](double p) {
      const double m00 = j * std::pow(b, j - 1) - p * std::pow(b, j);
      const double m01 = -j * std::pow(b, -j - 1) - p * std::pow(b, -j);
      const double m10 = -j * std::pow(a, j - 1) - p * std::pow(a, j);
      const double m11 = j * std::pow(a, -j - 1) - p * std::pow(a, -j);
      return m00 * m11 - m01 * m10;
    };
  };
  double expected = first_root([&](double p) { return det0(p) / p; }, 1e-9, 20.0);
  for (int j = 1; j <= 4; ++j) expected = std::min(expected, first_root(detj(j), 1e-9, 20.0));
  const auto rec = steklov_bound_check(AnnulusDomain{a, b, 32});
  EXPECT_NEAR(rec.eigenvalue, expected, 1e-9);
  EXPECT_TRUE(rec.holds);
  EXPECT_THROW(steklov_bound_check(AnnulusDomain{1.0, 0.5, 8}), PreconditionError);
}
