#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "warpiso/graph_catalog.hpp"
#include "warpiso/hypersurface.hpp"
#include "warpiso/iso_lab.hpp"
#include "warpiso/profile_catalog.hpp"
#include "warpiso/quadrature.hpp"
#include "warpiso/spectral.hpp"
#include "warpiso/warp_model.hpp"

using namespace warpiso;

static void BM_IntegrateRadial(benchmark::State& state) {
  const auto f = [](double r) { return std::sinh(r) * std::cosh(r); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_radial(f, 0.0, 3.0, 1e-12));
}
BENCHMARK(BM_IntegrateRadial);

static void BM_InvertVolume(benchmark::State& state) {
  const WarpedSpace space(hyperbolic_profile(), FiberSpec::sphere(1.0));
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_volume(space, u));
    u = u < 50.0 ? u * 1.3 : 0.1;
  }
}
BENCHMARK(BM_InvertVolume);

static void BM_PeriodicDerivatives(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = 1.0 + 0.2 * std::cos(3.0 * 2 * M_PI * i / n);
  for (auto _ : state) benchmark::DoNotOptimize(periodic_derivatives(samples));
}
BENCHMARK(BM_PeriodicDerivatives)->Arg(128)->Arg(512);

static void BM_SphereDerivatives(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto grid = fiber_grid(FiberSpec::sphere(1.0), {2 * n, n});
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = 1.0 + 0.1 * std::cos(grid.coords(i)[0]);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_derivatives(grid, samples));
}
BENCHMARK(BM_SphereDerivatives)->Arg(16)->Arg(32);

static void BM_ShapeFieldEllipsoid(benchmark::State& state) {
  const WarpedSpace space(euclidean_profile(), FiberSpec::sphere(1.0));
  const auto g = build_star_graph(space, ellipsoid_graph(2.0, 1.5, 1.0), fiber_grid(space.fiber()));
  for (auto _ : state) benchmark::DoNotOptimize(shape_field(g));
}
BENCHMARK(BM_ShapeFieldEllipsoid);

static void BM_VerifyWeightedIso(benchmark::State& state) {
  const WarpedSpace space(hyperbolic_profile(), FiberSpec::circle(1.0));
  const auto g = build_star_graph(space, ellipse_graph(1.2, 0.8), fiber_grid(space.fiber()));
  const WeightPair w(sinh_power_weight(2.0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_weighted_iso(g, w));
}
BENCHMARK(BM_VerifyWeightedIso);
BENCHMARK_MAIN();
