#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "warpiso/errors.hpp"
#include "warpiso/profile_catalog.hpp"
#include "warpiso/warp_model.hpp"

using namespace warpiso;
constexpr double kPi = std::numbers::pi;

namespace {

void expect_deriv(const Deriv2& d, double f, double df, double d2f, double tol = 1e-15) {
  EXPECT_NEAR(d.f, f, tol);
  EXPECT_NEAR(d.df, df, tol);
  EXPECT_NEAR(d.d2f, d2f, tol);
}

WarpedSpace r2() { return {euclidean_profile(), FiberSpec::circle(1.0)}; }
WarpedSpace r3() { return {euclidean_profile(), FiberSpec::sphere(1.0)}; }
WarpedSpace h2() { return {hyperbolic_profile(), FiberSpec::circle(1.0)}; }

RadialFunction cosh_c() { return cosh_weight(); }

}  // namespace

TEST(Profile, ClosedFormValues) {
  expect_deriv(eval_profile(hyperbolic_profile(), 0.0), 0.0, 1.0, 0.0);
  expect_deriv(eval_profile(euclidean_profile(), 2.0), 2.0, 1.0, 0.0);
  expect_deriv(eval_profile(power_profile(-1.0), 1.0), 1.0, -1.0, 2.0);
}

TEST(Profile, OutsideDomainThrows) {
  EXPECT_THROW(eval_profile(hemisphere_profile(), 2.0), RangeError);
  EXPECT_THROW(eval_profile(power_profile(-1.0), 0.5), RangeError);
  EXPECT_THROW(eval_profile(euclidean_profile(), -0.1), RangeError);
}

TEST(Profile, DerivativesMatchCentredDifferences) {
  for (const char* name : {"euclidean", "hyperbolic", "hemisphere", "sphere", "exponential", "power(-0.5)"}) {
    const WarpProfile p = make_profile(name);
    const double lo = std::max(p.domain_start(), 0.0) + 0.1;
    const double hi = std::isfinite(p.domain_end()) ? p.domain_end() - 0.1 : 3.0;
    for (int i = 0; i <= 10; ++i) {
      const double r = lo + (hi - lo) * i / 10.0, h = 1e-4;
      const Deriv2 s = p.eval(r);
      const double d1 = (p.eval(r + h).f - p.eval(r - h).f) / (2 * h);
      const double d2 = (p.eval(r + h).f - 2 * s.f + p.eval(r - h).f) / (h * h);
      EXPECT_NEAR(s.df, d1, 1e-6 * (1 + std::abs(d1))) << name << " r=" << r;
      EXPECT_NEAR(s.d2f, d2, 1e-5 * (1 + std::abs(d2))) << name << " r=" << r;
    }
  }
}

TEST(Profile, SplineReproducesCubicsAndRejectsBadInput) {
  std::vector<double> r, s;
  for (int i = 0; i <= 40; ++i) {
    r.push_back(0.05 * i);
    s.push_back(std::sinh(0.05 * i));
  }
  const WarpProfile p = spline_profile("sinh-spline", r, s);
  EXPECT_NEAR(p.eval(1.03).f, std::sinh(1.03), 1e-6);
  EXPECT_NEAR(p.eval(1.03).df, std::cosh(1.03), 1e-4);
  EXPECT_THROW(spline_profile("bad", {0, 1, 0.5, 2}, {0, 1, 1, 2}), ConstructionError);
}

TEST(AreaCoefficient, Examples) {
  EXPECT_DOUBLE_EQ(area_coefficient(r3(), 2.0), 4.0);
  EXPECT_NEAR(area_coefficient(h2(), 1.0), std::sinh(1.0), 1e-15);
  const WarpedSpace multi({{euclidean_profile(), FiberSpec::circle(1.0)},
                           {exponential_profile(), FiberSpec::sphere(1.0)}});
  EXPECT_NEAR(area_coefficient(multi, 1.0), std::exp(2.0), 1e-13);
  EXPECT_EQ(multi.dimension(), 4);
  EXPECT_NEAR(multi.fiber_volume(), 2 * kPi * 4 * kPi, 1e-12);
}

TEST(VolumeProfile, Examples) {
  EXPECT_NEAR(volume_profile(r3(), 3.0), 9.0, 1e-12);
  EXPECT_NEAR(total_volume_profile(r3(), 3.0), 36 * kPi, 1e-11);
  EXPECT_NEAR(volume_profile(h2(), 1.0, cosh_c()), std::sinh(1.0) * std::sinh(1.0) / 2, 1e-12);
  EXPECT_NEAR(volume_profile(h2(), 1.0, cosh_c()), 0.6905489227709, 1e-12);
}

TEST(VolumeProfile, PowerLawAnnulus) {
  const WarpedSpace space(power_profile(-1.0), FiberSpec::abstract(1, 1.0));
  const double R1 = 2.0, R2 = 7.0;
  EXPECT_NEAR(volume_profile(space, R2) - volume_profile(space, R1), std::log(R2 / R1), 1e-10);
}

TEST(InvertVolume, Examples) {
  EXPECT_NEAR(invert_volume(r3(), 9.0), 3.0, 1e-10);
  EXPECT_NEAR(invert_volume(h2(), 2.0, cosh_c()), std::asinh(2.0), 1e-10);
  EXPECT_NEAR(invert_volume(h2(), 2.0, cosh_c()), 1.443635, 1e-6);
}

TEST(InvertVolume, RoundTripAndMonotone) {
  for (const auto& space : {r2(), r3(), h2(), WarpedSpace(exponential_profile(), FiberSpec::sphere(1.0))}) {
    double prev = -1.0;
    for (int i = 1; i <= 30; ++i) {
      const double r = 0.1 * i;
      const double v = volume_profile(space, r);
      EXPECT_GT(v, prev);
      prev = v;
      EXPECT_NEAR(invert_volume(space, v), r, 1e-10);
    }
  }
}

TEST(InvertVolume, FiniteDomainCapacity) {
  const WarpedSpace hemi(hemisphere_profile(), FiberSpec::circle(1.0));
  // v(pi/2) = 1 - cos(pi/2) = 1.
  EXPECT_THROW(invert_volume(hemi, 1.5), RangeError);
  EXPECT_NEAR(invert_volume(hemi, 0.5), std::acos(0.5), 1e-10);
}

TEST(Convexity, LogConvexityMarginExamples) {
  const WarpedSpace e(exponential_profile(), FiberSpec::circle(1.0));
  const WarpedSpace sn(sphere_profile(), FiberSpec::circle(1.0));
  for (double r : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(log_convexity_margin(e, r), 0.0, 1e-12 * std::exp(2 * r));
    EXPECT_NEAR(log_convexity_margin(sn, r), -1.0, 1e-14);
    EXPECT_NEAR(log_convexity_margin(r2(), r), -1.0, 1e-14);
  }
}

TEST(Convexity, SecantTestAgreesWithMarginSign) {
  std::mt19937_64 rng(5);
  for (const char* name : {"euclidean", "hyperbolic", "hemisphere", "exponential"}) {
    const WarpedSpace space(make_profile(name), FiberSpec::circle(1.0));
    const double vmax = std::isfinite(space.domain_end()) ? volume_profile(space, space.domain_end() - 1e-3) : 5.0;
    std::uniform_real_distribution<double> u(0.01 * vmax, 0.9 * vmax), d(0.001, 0.05);
    for (int i = 0; i < 100; ++i) {
      const double u1 = u(rng), h = d(rng) * vmax;
      const double u0 = std::max(1e-6, u1 - h), u2 = u1 + h;
      const double gap = secant_convexity_gap(space, u0, u1, u2);
      const double margin = log_convexity_margin(space, invert_volume(space, u1));
      if (margin < -1e-9) EXPECT_LT(gap, 1e-12) << name;
      if (std::abs(margin) < 1e-9) EXPECT_NEAR(gap, 0.0, 1e-8 * vmax) << name;
    }
  }
}

TEST(Convexity, WeightedMarginSymbolicOracle) {
  // For s = r and b = r^l: (l - 1)(l + m) r^l.
  for (const auto& space : {r2(), r3()}) {
    const int m = space.fiber_dimension();
    for (double l : {0.5, 1.0, 2.0, 3.0}) {
      const WeightPair w(power_weight(l));
      for (double r : {0.2, 1.0, 2.7}) {
        const double oracle = (l - 1) * (l + m) * std::pow(r, l);
        EXPECT_NEAR(weighted_convexity_margin(space, w, r), oracle, 1e-9 * (1 + std::abs(oracle)));
      }
    }
  }
  EXPECT_NEAR(weighted_convexity_margin(r3(), WeightPair(power_weight(2.0)), 1.0), 4.0, 1e-12);
  EXPECT_NEAR(weighted_convexity_margin(r3(), WeightPair(power_weight(0.5)), 1.0), -1.25, 1e-12);
}

TEST(Convexity, CompositeMarginDetectsConvexity) {
  // f = A for s = r in R^2: A(v^-1(u)) = sqrt(2u), concave.
  const RadialFunction A = [](double r) { return Deriv2{r, 1.0, 0.0}; };
  EXPECT_LT(composite_convexity_margin(r2(), A, 1.0), 0.0);
  // f = r^3 A in R^2 is 4u^2: convex.
  const RadialFunction f = [](double r) { return Deriv2{std::pow(r, 4), 4 * std::pow(r, 3), 12 * r * r}; };
  EXPECT_GT(composite_convexity_margin(r2(), f, 1.0), 0.0);
}

TEST(WeightPairTest, OffsetVanishesAtOrigin) {
  const WeightPair w(cosh_weight());
  EXPECT_DOUBLE_EQ(w.b(0.0).f, 0.0);
  EXPECT_NEAR(w.b(1.0).f, std::cosh(1.0) - 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(w.c(0.7).f, 1.0);
  EXPECT_FALSE(w.has_volume_weight());
}

TEST(Regime, Examples) {
  const auto e = classify_regime(WarpedSpace(exponential_profile(), FiberSpec::circle(1.0)), std::nullopt, 3.0);
  EXPECT_EQ(e.regime, Regime::SlicesIsoperimetric);
  EXPECT_TRUE(e.s_monotone);
  const auto glw = classify_regime(WarpedSpace(sphere_profile(), FiberSpec::circle(1.0)), 1.0);
  EXPECT_EQ(glw.regime, Regime::GLWRegime);
  const auto bad = classify_regime(WarpedSpace(sphere_profile(), FiberSpec::circle(2.0)), 0.25);
  EXPECT_EQ(bad.regime, Regime::SlicesNotIsoperimetric);
  EXPECT_TRUE(bad.s_vanishes_at_zero);
  EXPECT_FALSE(bad.s_monotone);
}

TEST(Regime, MissingDataIsIndeterminate) {
  // Positive defect but no curvature bound and no lambda1 to compare with.
  const auto rep = classify_regime(WarpedSpace(hyperbolic_profile(), FiberSpec::abstract(2, 1.0)), std::nullopt, 2.0);
  EXPECT_EQ(rep.regime, Regime::Indeterminate);
  EXPECT_FALSE(rep.explanation.empty());
  EXPECT_THROW(classify_regime(r2(), std::nullopt, std::nullopt), PreconditionError);
}

TEST(Fiber, VolumesAndParsing) {
  EXPECT_NEAR(unit_ball_volume(3), 4 * kPi / 3, 1e-15);
  EXPECT_NEAR(sphere_volume(2, 2.0), 16 * kPi, 1e-13);
  EXPECT_NEAR(make_fiber("circle(2)").total_volume(), 4 * kPi, 1e-14);
  EXPECT_EQ(make_fiber("round-sphere(3, 1)").dimension(), 3);
  EXPECT_FALSE(make_fiber("round-sphere(3, 1)").is_realized());
  EXPECT_EQ(*make_fiber("abstract(2, 5, 3, 1)").lambda1(), 3.0);
  EXPECT_THROW(make_fiber("torus(1)"), PreconditionError);
  EXPECT_THROW(make_fiber("circle(x)"), PreconditionError);
}
