#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "warpiso/errors.hpp"
#include "warpiso/graph_catalog.hpp"
#include "warpiso/minkowski_chain.hpp"
#include "warpiso/profile_catalog.hpp"

using namespace warpiso;
constexpr double kPi = std::numbers::pi;

namespace {

WarpedSpace r3() { return {euclidean_profile(), FiberSpec::sphere(1.0)}; }
const RadialFunction kOne = [](double) { return Deriv2{1.0, 0.0, 0.0}; };
const RadialFunction kR2 = [](double r) { return Deriv2{r * r, 2 * r, 2.0}; };

}  // namespace

TEST(HsiungMinkowski, UnitSphere) {
  const auto space = r3();
  const auto res = hm_residual(slice_graph(space, 1.0, fiber_grid(space.fiber())), kOne, 1);
  EXPECT_NEAR(res.terms[0], 4 * kPi, 1e-12);
  EXPECT_NEAR(res.terms[1], 4 * kPi, 1e-12);
  EXPECT_NEAR(res.terms[2], 0.0, 1e-14);
  EXPECT_NEAR(res.residual, 0.0, 1e-14);
}

TEST(HsiungMinkowski, ProlateEllipsoid) {
  const auto space = r3();
  const StarGraph g = build_star_graph(space, spheroid_graph(1.0, 2.0), fiber_grid(space.fiber(), {64, 16}));
  EXPECT_LE(std::abs(hm_residual(g, kOne, 1).residual), 1e-6);
  EXPECT_LE(std::abs(hm_residual(g, kR2, 2).residual), 1e-5);
}

TEST(HsiungMinkowski, EveryModelAndCurve) {
  std::mt19937_64 rng(11);
  for (const char* model : {"euclidean", "hyperbolic", "exponential"}) {
    const WarpedSpace space(make_profile(model), FiberSpec::circle(1.0));
    for (int t = 0; t < 3; ++t) {
      const StarGraph g = build_star_graph(space, random_star_curve(rng, 1.0, 0.2), fiber_grid(space.fiber()));
      EXPECT_LE(std::abs(hm_residual(g, kR2, 1).residual), 1e-6) << model;
    }
  }
}

TEST(HsiungMinkowski, HigherOrderNeedsRevolution) {
  const auto space = r3();
  const StarGraph g = build_star_graph(space, ellipsoid_graph(2.0, 1.5, 1.0), fiber_grid(space.fiber(), {64, 32}));
  EXPECT_THROW(hm_residual(g, kOne, 2), UnsupportedError);
  EXPECT_LE(std::abs(hm_residual(g, kOne, 1).residual), 1e-6);
}

TEST(Positivity, SphereEllipsoidDumbbell) {
  const auto space = r3();
  const auto sphere = cone_positivity(slice_graph(space, 1.0, fiber_grid(space.fiber(), {8, 16})), 2);
  EXPECT_TRUE(sphere.positive);
  EXPECT_NEAR(sphere.min_newton_eigenvalue.at(1), 1.0, 1e-12);
  EXPECT_NEAR(sphere.min_H.at(1), 1.0, 1e-12);
  const auto ell = cone_positivity(
      build_star_graph(space, ellipsoid_graph(2.0, 1.5, 1.0), fiber_grid(space.fiber(), {24, 48})), 2);
  EXPECT_TRUE(ell.positive);
  for (double v : ell.min_newton_eigenvalue) EXPECT_GT(v, 0.0);
  const auto bell = cone_positivity(build_star_graph(space, dumbbell_graph(0.6), fiber_grid(space.fiber(), {32, 8})), 2);
  EXPECT_FALSE(bell.positive);
  EXPECT_FALSE(bell.location.empty());
  EXPECT_NE(bell.certification.find("not certified"), std::string::npos);
}

TEST(Chain, SphereAllEqual) {
  const auto space = r3();
  const auto rep = chain_margins(slice_graph(space, 1.0, fiber_grid(space.fiber())), 2, 1);
  ASSERT_EQ(rep.entries.size(), 3u);
  ASSERT_EQ(rep.margins.size(), 3u);
  for (double e : rep.entries) EXPECT_NEAR(e, 4 * kPi, 1e-11);
  for (double m : rep.margins) EXPECT_NEAR(m, 0.0, 1e-11);
}

TEST(Chain, EllipsoidStrict) {
  const auto space = r3();
  const StarGraph g = build_star_graph(space, ellipsoid_graph(2.0, 1.5, 1.0), fiber_grid(space.fiber()));
  const auto rep = chain_margins(g, 2, 1);
  for (double m : rep.margins) EXPECT_GT(m, 0.0);
  // For l = 1 in R^3 (c = 1) the base is n int_Omega dv.
  EXPECT_NEAR(rep.base, 3 * enclosed_volume(g), 1e-10 * rep.base);
  EXPECT_NEAR(rep.weighted_volume, 4 * kPi, 1e-9);
  EXPECT_TRUE(rep.hypotheses_hold());
  EXPECT_TRUE(rep.nondecreasing());
}

TEST(Chain, HyperbolicSliceEquality) {
  const WarpedSpace space(hyperbolic_profile(), FiberSpec::sphere(1.0));
  const auto rep = chain_margins(slice_graph(space, 1.0, fiber_grid(space.fiber(), {16, 32})), 1, 1);
  for (double m : rep.margins) EXPECT_NEAR(m, 0.0, 1e-9 * (1 + rep.base));
}

TEST(Corollary, SphereAndEllipse) {
  const auto space = r3();
  const auto sphere = corollary_run("euclidean", slice_graph(space, 1.0, fiber_grid(space.fiber())), 1, 1);
  EXPECT_NEAR(sphere.lhs, 4 * kPi, 1e-11);
  EXPECT_NEAR(sphere.rhs, 4 * kPi, 1e-11);
  EXPECT_TRUE(sphere.equality_flag);
  const WarpedSpace plane(euclidean_profile(), FiberSpec::circle(1.0));
  const auto ell = corollary_run("euclidean",
                                 build_star_graph(plane, ellipse_graph(2.0, 1.0), fiber_grid(plane.fiber())), 1, 1);
  EXPECT_NEAR(ell.rhs, 4 * kPi, 1e-9);
  EXPECT_GT(ell.margin, 1e-6);
}

TEST(Corollary, HyperbolicSliceEquality) {
  const WarpedSpace space(hyperbolic_profile(), FiberSpec::sphere(1.0));
  const auto rec = corollary_run("hyperbolic", slice_graph(space, 1.0, fiber_grid(space.fiber(), {16, 32})), 1, 1);
  EXPECT_LE(std::abs(rec.margin), 1e-9 * (1 + rec.rhs));
}
