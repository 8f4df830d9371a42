#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "warpiso/errors.hpp"
#include "warpiso/graph_catalog.hpp"
#include "warpiso/iso_lab.hpp"
#include "warpiso/profile_catalog.hpp"

using namespace warpiso;
constexpr double kPi = std::numbers::pi;

namespace {

WarpedSpace r2() { return {euclidean_profile(), FiberSpec::circle(1.0)}; }
WarpedSpace r3() { return {euclidean_profile(), FiberSpec::sphere(1.0)}; }
WarpedSpace h2() { return {hyperbolic_profile(), FiberSpec::circle(1.0)}; }

const Hypothesis* find(const VerificationRecord& rec, const std::string& name) {
  for (const auto& h : rec.hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

bool has_theorem(const VerificationRecord& rec, const std::string& id) {
  return std::find(rec.theorems.begin(), rec.theorems.end(), id) != rec.theorems.end();
}

}  // namespace

TEST(SharpRadius, Examples) {
  EXPECT_NEAR(omega_sharp_radius(r3(), 36 * kPi), 3.0, 1e-10);
  EXPECT_NEAR(omega_sharp_radius(r2(), kPi), 1.0, 1e-10);
  EXPECT_NEAR(omega_sharp_radius(h2(), kPi * std::pow(std::sinh(1.0), 2), cosh_weight()), 1.0, 1e-10);
  EXPECT_THROW(omega_sharp_radius(r2(), 0.0), RangeError);
  const WarpedSpace hemi(hemisphere_profile(), FiberSpec::circle(1.0));
  EXPECT_THROW(omega_sharp_radius(hemi, 10.0), RangeError);
}

TEST(VerifyIso, OffsetCircleClosedForm) {
  const auto space = r2();
  const StarGraph g = build_star_graph(space, offset_circle_graph(1.0, 1.0), fiber_grid(space.fiber()));
  const auto rec = verify_weighted_iso(g, WeightPair(power_weight(2.0)));
  EXPECT_NEAR(rec.lhs, 4 * kPi, 1e-10);
  EXPECT_NEAR(rec.sharp_radius, 1.0, 1e-10);
  EXPECT_NEAR(rec.rhs, 2 * kPi, 1e-10);
  EXPECT_NEAR(rec.margin, 2 * kPi, 1e-8);
  EXPECT_FALSE(rec.equality_flag);
  EXPECT_TRUE(has_theorem(rec, "weighted-classical"));
}

TEST(VerifyIso, RhsRecomputableFromSharpRadius) {
  std::mt19937_64 rng(3);
  const auto space = h2();
  const WeightPair w(sinh_power_weight(2.0));
  for (int t = 0; t < 5; ++t) {
    const StarGraph g = build_star_graph(space, random_star_curve(rng, 1.0, 0.2), fiber_grid(space.fiber()));
    const auto rec = verify_weighted_iso(g, w);
    const double R = rec.sharp_radius;
    const double expected = space.fiber_volume() * std::pow(std::sinh(R), 2) * std::sinh(R);
    EXPECT_NEAR(rec.rhs, expected, 1e-12 * (1 + std::abs(rec.rhs)));
    EXPECT_TRUE(rec.inequality_holds());
  }
}

TEST(VerifyIso, SliceIsFlaggedAsEquality) {
  const auto space = r3();
  const auto rec = verify_weighted_iso(slice_graph(space, 1.4, fiber_grid(space.fiber())), WeightPair(power_weight(1.0)));
  EXPECT_TRUE(rec.equality_flag);
  EXPECT_EQ(rec.equality_note, "slice");
  EXPECT_LE(std::abs(rec.margin), 1e-9 * (1 + rec.rhs));
}

TEST(VerifyIso, ConvexityFailureIsReportedNotThrown) {
  const auto space = r2();
  const StarGraph g = build_star_graph(space, ellipse_graph(2.0, 1.0), fiber_grid(space.fiber()));
  const auto rec = verify_weighted_iso(g, WeightPair(power_weight(0.5)));
  const Hypothesis* h = find(rec, "b(V^-1) A(V^-1) convex");
  ASSERT_NE(h, nullptr);
  EXPECT_FALSE(h->passed);
  EXPECT_FALSE(h->evidence.empty());
  EXPECT_FALSE(has_theorem(rec, "weighted-classical"));
  EXPECT_TRUE(std::isfinite(rec.margin));
}

TEST(VerifyIso, WeightedVolumeVariant) {
  const auto space = h2();
  const StarGraph g = build_star_graph(space, ellipse_graph(1.2, 0.8), fiber_grid(space.fiber()));
  const WeightPair w(sinh_power_weight(1.0), cosh_weight());
  const auto rec = verify_weighted_iso(g, w);
  EXPECT_NEAR(rec.volume, enclosed_volume(g, cosh_weight()), 1e-12);
  EXPECT_TRUE(rec.inequality_holds());
  // a = sinh vanishes at the origin, so only the unweighted-volume theorems could apply.
  const Hypothesis* pos = find(rec, "a positive");
  ASSERT_NE(pos, nullptr);
  EXPECT_FALSE(pos->passed);
  EXPECT_TRUE(rec.theorems.empty());
}

TEST(Catalog, EuclideanEllipseMatchesExplicitForm) {
  const auto space = r2();
  const StarGraph g = build_star_graph(space, ellipse_graph(2.0, 1.0), fiber_grid(space.fiber()));
  const auto recs = model_weight_catalog("euclidean", g, 2);
  ASSERT_EQ(recs.size(), 2u);
  const double vol = 2 * kPi;
  // n beta_n^{-(k-1)/n} Vol^{(n-1+k)/n} with n = 2, k = 2, beta_2 = pi.
  const double explicit_rhs = 2 * std::pow(kPi, -0.5) * std::pow(vol, 1.5);
  EXPECT_NEAR(recs[1].rhs, explicit_rhs, 1e-9 * explicit_rhs);
  EXPECT_NEAR(recs[0].rhs, recs[1].rhs, 1e-9 * explicit_rhs);
  EXPECT_GT(recs[0].margin, 0.0);
}

TEST(Catalog, HyperbolicSliceCoshIsEquality) {
  const auto space = h2();
  const auto recs = model_weight_catalog("hyperbolic", slice_graph(space, 1.0, fiber_grid(space.fiber())), 1);
  ASSERT_FALSE(recs.empty());
  for (const auto& r : recs) {
    EXPECT_LE(std::abs(r.margin), 1e-9 * (1 + r.rhs)) << r.weight;
    EXPECT_TRUE(r.equality_flag) << r.weight;
  }
}

TEST(Catalog, HemisphereWave) {
  const WarpedSpace space(hemisphere_profile(), FiberSpec::circle(1.0));
  const StarGraph g = build_star_graph(space, wave_graph(0.6, 0.1, 3), fiber_grid(space.fiber()));
  for (const auto& r : model_weight_catalog("hemisphere", g, 1)) EXPECT_GE(r.margin, -1e-9) << r.weight;
  EXPECT_THROW(model_weight_catalog("hyperbolic", g, 1), PreconditionError);
}

TEST(Jensen, ConstantFieldHasZeroGap) {
  const auto space = r3();
  const auto grid = fiber_grid(space.fiber(), {8, 16});
  std::vector<double> rho(grid.size(), 0.8);
  EXPECT_NEAR(jensen_gap(space, WeightPair(power_weight(2.0)), rho, grid).gap, 0.0, 1e-12);
}

TEST(Jensen, PlanarCosineFieldPositive) {
  const auto space = r2();
  const auto grid = fiber_grid(space.fiber(), {64, 0});
  std::vector<double> rho(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rho[i] = 1 + 0.5 * std::cos(grid.coords(i)[0]);
  const auto res = jensen_gap(space, WeightPair(power_weight(2.0)), rho, grid);
  // psi = r^3, V = r^2/2: direct quadrature of both terms.
  double m3 = 0.0, m2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double r = 1 + 0.5 * std::cos(2 * kPi * (i + 0.5) / n);
    m3 += std::pow(r, 3) / n;
    m2 += r * r / 2 / n;
  }
  EXPECT_NEAR(res.gap, m3 - std::pow(2 * m2, 1.5), 1e-9);
  EXPECT_GT(res.gap, 0.0);
  EXPECT_TRUE(res.convexity_holds);
}
