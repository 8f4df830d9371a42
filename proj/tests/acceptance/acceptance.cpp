// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Expected values come from closed forms or independent oracles computed here.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "warpiso/graph_catalog.hpp"
#include "warpiso/hypersurface.hpp"
#include "warpiso/iso_lab.hpp"
#include "warpiso/minkowski_chain.hpp"
#include "warpiso/profile_catalog.hpp"
#include "warpiso/spectral_stability.hpp"
#include "warpiso/warp_model.hpp"

namespace fs = std::filesystem;
using namespace warpiso;

namespace {

constexpr double kPi = std::numbers::pi;

// Accumulates failures for one criterion; the first few are kept as detail.
struct Check {
  int failures = 0;
  int checks = 0;
  std::vector<std::string> notes;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 4) notes.push_back(what);
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

double ellipse_perimeter_oracle(double a, double b) {
  auto speed = [=](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(speed, 0.0, 2.0 * kPi, 30, 1e-14);
}

Check slice_geometry() {
  Check c;
  const std::vector<WarpProfile> profiles{euclidean_profile(), hyperbolic_profile(), sphere_profile(),
                                          exponential_profile()};
  double worst = 0.0;
  for (const auto& profile : profiles) {
    for (const FiberSpec& fiber : {FiberSpec::circle(1.0), FiberSpec::sphere(1.0)}) {
      const WarpedSpace space(profile, fiber);
      const FiberGrid grid = fiber_grid(fiber, fiber.is_circle() ? GridResolution{64, 0} : GridResolution{16, 32});
      for (double r0 : {0.5, 1.0, 1.5}) {
        const StarGraph slice = slice_graph(space, r0, grid);
        const ShapeField shape = shape_field(slice);
        const Deriv2 s = profile.eval(r0);
        const int m = fiber.dimension();
        const double kappa = s.df / s.f;
        const double expected = m * (s.df * s.df - s.f * s.d2f) / (s.f * s.f);
        for (std::size_t i = 0; i < slice.size(); ++i) {
          const auto& node = shape.node(i);
          for (int j = 0; j < m; ++j) {
            const double err = std::abs(node.principal(j) - kappa);
            worst = std::max(worst, err);
            c.expect(err <= 1e-8, profile.label() + fmt(" r0=%g: principal curvature off by %.3g", r0, err));
          }
          const double b2 = node.B.squaredNorm();
          const double err = std::abs(b2 + ambient_normal_ricci(slice, i) - expected);
          worst = std::max(worst, err);
          c.expect(err <= 1e-8, profile.label() + fmt(" r0=%g: |B|^2+Ric off by %.3g", r0, err));
        }
      }
    }
  }
  c.summary = fmt("4 profiles x 2 fibers x 3 slices, worst error %.2e", worst);
  return c;
}

Check closed_form_geometry() {
  Check c;
  const WarpedSpace r3(euclidean_profile(), FiberSpec::sphere(1.0));
  const StarGraph sphere = slice_graph(r3, 1.0, fiber_grid(r3.fiber()));
  const double area = surface_area(sphere);
  const double vol = enclosed_volume(sphere);
  const double area_err = std::abs(area - 4.0 * kPi) / (4.0 * kPi);
  const double vol_err = std::abs(vol - 4.0 * kPi / 3.0) / (4.0 * kPi / 3.0);
  c.expect(area_err <= 1e-8, fmt("sphere area rel error %.3g", area_err));
  c.expect(vol_err <= 1e-8, fmt("ball volume rel error %.3g", vol_err));

  const WarpedSpace r2(euclidean_profile(), FiberSpec::circle(1.0));
  const StarGraph ellipse = build_star_graph(r2, ellipse_graph(2.0, 1.0), fiber_grid(r2.fiber()));
  const double perimeter = surface_area(ellipse);
  const double oracle = ellipse_perimeter_oracle(2.0, 1.0);
  c.expect(std::abs(perimeter - oracle) <= 1e-6, fmt("ellipse perimeter %.12g vs %.12g", perimeter, oracle));
  c.summary = fmt("area err %.1e, volume err %.1e, ellipse perimeter err %.1e", area_err, vol_err,
                  std::abs(perimeter - oracle));
  return c;
}

struct ModelCase {
  std::string model;
  FiberSpec fiber;
  double r0;
  double amp;
};

Check weighted_isoperimetric() {
  Check c;
  // Off-centre unit circle through the origin with a = r^2: lhs = 4 pi, R = 1, rhs = 2 pi.
  {
    const WarpedSpace r2(euclidean_profile(), FiberSpec::circle(1.0));
    const StarGraph g = build_star_graph(r2, offset_circle_graph(1.0, 1.0), fiber_grid(r2.fiber()));
    const auto rec = verify_weighted_iso(g, WeightPair(power_weight(2.0)));
    c.expect(std::abs(rec.margin - 2.0 * kPi) <= 1e-8, fmt("offset circle margin %.15g, expected 2 pi", rec.margin));
  }
  const std::vector<ModelCase> models{{"euclidean", FiberSpec::circle(1.0), 1.0, 0.15},
                                      {"euclidean", FiberSpec::sphere(1.0), 1.0, 0.15},
                                      {"hyperbolic", FiberSpec::circle(1.0), 1.0, 0.15},
                                      {"hemisphere", FiberSpec::circle(1.0), 0.8, 0.05}};
  std::mt19937_64 rng(20240611);
  int records = 0;
  double worst = kInfinity;
  for (const auto& mc : models) {
    const WarpedSpace space(make_profile(mc.model), mc.fiber);
    const FiberGrid grid =
        fiber_grid(mc.fiber, mc.fiber.is_circle() ? GridResolution{128, 0} : GridResolution{24, 48});
    for (int trial = 0; trial < 50; ++trial) {
      AnalyticGraph shape =
          mc.fiber.is_circle() ? random_star_curve(rng, mc.r0, mc.amp) : random_star_surface(rng, mc.r0, mc.amp);
      shape.label += "#" + std::to_string(trial);
      const StarGraph g = build_star_graph(space, shape, grid);
      for (int k : {1, 2}) {
        for (const auto& rec : model_weight_catalog(mc.model, g, k)) {
          ++records;
          const double scaled = rec.margin / (1.0 + std::abs(rec.rhs));
          worst = std::min(worst, scaled);
          c.expect(rec.margin >= -1e-9 * (1.0 + rec.rhs),
                   mc.model + " " + shape.label + " " + rec.weight + fmt(": margin %.3g", rec.margin));
        }
      }
    }
    const StarGraph slice = slice_graph(space, mc.r0, grid);
    for (int k : {1, 2}) {
      for (const auto& rec : model_weight_catalog(mc.model, slice, k)) {
        ++records;
        c.expect(std::abs(rec.margin) <= 1e-9 * (1.0 + rec.rhs) && rec.equality_flag,
                 mc.model + " slice " + rec.weight + fmt(": margin %.3g", rec.margin));
      }
    }
  }
  c.summary = std::to_string(records) + " records" + fmt(", smallest scaled margin %.2e", worst);
  return c;
}

Check jensen() {
  Check c;
  const WarpedSpace r3(euclidean_profile(), FiberSpec::sphere(1.0));
  const FiberGrid grid = fiber_grid(r3.fiber(), {16, 32});
  const WeightPair weights(power_weight(1.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.2, 3.0);
  double worst = kInfinity;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> rho(grid.size());
    for (auto& x : rho) x = dist(rng);
    const auto res = jensen_gap(r3, weights, rho, grid);
    worst = std::min(worst, res.gap);
    c.expect(res.gap >= -1e-10, fmt("random field gap %.3g", res.gap));
  }
  const std::vector<double> flat(grid.size(), 1.3);
  const auto res = jensen_gap(r3, weights, flat, grid);
  c.expect(std::abs(res.gap) <= 1e-12, fmt("constant field gap %.3g", res.gap));
  c.summary = fmt("100 random fields, smallest gap %.2e; constant field gap %.1e", worst, res.gap);
  return c;
}

Check hsiung_minkowski() {
  Check c;
  const RadialFunction one = [](double) { return Deriv2{1.0, 0.0, 0.0}; };
  const RadialFunction r2 = [](double r) { return Deriv2{r * r, 2.0 * r, 2.0}; };
  double worst1 = 0.0, worst2 = 0.0;
  std::mt19937_64 rng(99);
  for (const char* model : {"euclidean", "hyperbolic", "exponential"}) {
    const WarpedSpace space(make_profile(model), FiberSpec::sphere(1.0));
    const FiberGrid grid = fiber_grid(space.fiber(), {48, 16});
    std::vector<StarGraph> graphs;
    graphs.push_back(slice_graph(space, 1.0, grid));
    graphs.push_back(build_star_graph(space, spheroid_graph(1.3, 0.8), grid));
    for (int t = 0; t < 20; ++t) {
      AnalyticGraph g = random_revolution(rng, 1.0, 0.15);
      g.label += "#" + std::to_string(t);
      graphs.push_back(build_star_graph(space, g, grid));
    }
    for (const auto& g : graphs) {
      const auto frames = surface_frames(g);
      const ShapeField shape = shape_field(g);
      for (const auto& eta : {one, r2}) {
        const double e1 = std::abs(hm_residual(g, frames, shape, eta, 1).residual);
        const double e2 = std::abs(hm_residual(g, frames, shape, eta, 2).residual);
        worst1 = std::max(worst1, e1);
        worst2 = std::max(worst2, e2);
        c.expect(e1 <= 1e-6, std::string(model) + " " + g.label() + fmt(": k=1 residual %.3g", e1));
        c.expect(e2 <= 1e-5, std::string(model) + " " + g.label() + fmt(": k=2 residual %.3g", e2));
      }
    }
  }
  c.summary = fmt("3 models x 22 revolution graphs, worst k=1 %.2e, worst k=2 %.2e", worst1, worst2);
  return c;
}

Check chain() {
  Check c;
  const WarpedSpace r3(euclidean_profile(), FiberSpec::sphere(1.0));
  const FiberGrid grid = fiber_grid(r3.fiber());
  const StarGraph ellipsoid = build_star_graph(r3, ellipsoid_graph(2.0, 1.5, 1.0), grid);
  const auto rep = chain_margins(ellipsoid, 2, 1);
  for (std::size_t j = 0; j < rep.margins.size(); ++j)
    c.expect(rep.margins[j] >= 0.0, fmt("ellipsoid margin %d = %.3g", double(j), rep.margins[j]));
  c.expect(rep.margins.at(0) > 1e-6, fmt("ellipsoid first margin %.3g not strict", rep.margins.at(0)));

  const StarGraph sphere = slice_graph(r3, 1.0, grid);
  const auto eq = chain_margins(sphere, 2, 1);
  double sphere_worst = 0.0;
  for (double m : eq.margins) sphere_worst = std::max(sphere_worst, std::abs(m));
  c.expect(sphere_worst <= 1e-9, fmt("unit sphere margin %.3g", sphere_worst));

  std::mt19937_64 rng(1234);
  int runs = 0;
  for (const FiberSpec& fiber : {FiberSpec::circle(1.0), FiberSpec::sphere(1.0)}) {
    const WarpedSpace space(euclidean_profile(), fiber);
    const int n = space.dimension();
    const FiberGrid g = fiber_grid(fiber, fiber.is_circle() ? GridResolution{128, 0} : GridResolution{24, 48});
    for (int t = 0; t < 50; ++t) {
      const AnalyticGraph shape = fiber.is_circle() ? random_star_curve(rng, 1.0, 0.2) : random_star_surface(rng, 1.0, 0.2);
      const StarGraph graph = build_star_graph(space, shape, g);
      const auto rec = corollary_run("euclidean", graph, 0, 0);
      const double vol = enclosed_volume(graph);
      const double oracle_rhs =
          n * std::pow(unit_ball_volume(n), 1.0 / n) * std::pow(vol, (n - 1.0) / n);
      c.expect(std::abs(rec.rhs - oracle_rhs) <= 1e-12 * oracle_rhs, fmt("corollary rhs %.15g vs %.15g", rec.rhs, oracle_rhs));
      c.expect(std::abs(rec.lhs - surface_area(graph)) <= 1e-12 * rec.lhs, "corollary lhs is not the area");
      c.expect(rec.margin >= -1e-9 * (1.0 + rec.rhs), fmt("random shape isoperimetric margin %.3g", rec.margin));
      ++runs;
    }
  }
  std::ostringstream os;
  os << "ellipsoid margins";
  for (double m : rep.margins) os << ' ' << fmt("%.4g", m);
  os << fmt("; sphere max |margin| %.1e; ", sphere_worst) << runs << " classical runs";
  c.summary = os.str();
  return c;
}

Check stability() {
  Check c;
  const double r0 = kPi / 2.0;
  std::ostringstream os;
  for (double R : {2.0, 0.5}) {
    const WarpedSpace space(sphere_profile(), FiberSpec::circle(R));
    const auto probe = second_variation_probe(space, r0);
    const double rel = std::abs(probe.fd - probe.formula) / std::abs(probe.formula);
    c.expect(rel <= 0.05, fmt("R=%g: fd %.6g vs formula %.6g", R, probe.fd, probe.formula));
    const bool want_negative = R > 1.0;
    c.expect(want_negative ? probe.fd < 0.0 : probe.fd > 0.0, fmt("R=%g: wrong sign %.6g", R, probe.fd));
    c.expect(slice_stability(space, r0).stable != want_negative, fmt("R=%g: verdict wrong", R));
    os << fmt("R=%g fd %.6g formula %.6g; ", R, probe.fd, probe.formula);
  }
  // Bisect the stability verdict in R.
  double lo = 0.5, hi = 2.0;
  auto stable = [&](double R) { return slice_stability(WarpedSpace(sphere_profile(), FiberSpec::circle(R)), r0).stable; };
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  c.expect(std::abs(crossing - 1.0) <= 1e-6, fmt("verdict flips at R=%.10g", crossing));
  os << fmt("flip at R=%.9f", crossing);
  c.summary = os.str();
  return c;
}

Check power_law() {
  Check c;
  const double expected[] = {1.367879, 0.136788, 0.013679};
  const double radii[] = {1.0, 10.0, 100.0};
  std::ostringstream os;
  double previous = kInfinity;
  for (int i = 0; i < 3; ++i) {
    const auto rec = power_counterexample(1, radii[i]);
    c.expect(std::abs(rec.volume_ratio - 1.0) <= 1e-10, fmt("R1=%g volume ratio %.15g", radii[i], rec.volume_ratio));
    c.expect(std::abs(rec.area_ratio - expected[i]) <= 1e-6, fmt("R1=%g area ratio %.9g", radii[i], rec.area_ratio));
    c.expect(rec.area_ratio < previous, "area ratio does not decrease");
    previous = rec.area_ratio;
    os << (i ? "; " : "") << fmt("R1=%g: vol %.12f area %.7f", radii[i], rec.volume_ratio, rec.area_ratio);
  }
  c.summary = os.str();
  return c;
}

Check small_ball() {
  Check c;
  const std::vector<FiberSpec> unit{FiberSpec::circle(1.0), FiberSpec::sphere(1.0), FiberSpec::round_sphere(3, 1.0)};
  for (const auto& fiber : unit) {
    const auto rep = small_ball_threshold(WarpedSpace(euclidean_profile(), fiber));
    c.expect(std::abs(rep.threshold - 1.0) <= 1e-15, fmt("n=%g threshold %.17g", rep.n, rep.threshold));
    c.expect(!rep.violated, fmt("n=%g flagged as violated", rep.n));
  }
  for (double R : {0.5, 2.0, 3.7}) {
    const auto rep = small_ball_threshold(WarpedSpace(euclidean_profile(), FiberSpec::circle(R)));
    c.expect(std::abs(rep.threshold - 1.0 / R) <= 1e-12, fmt("S1(%g) threshold %.17g", R, rep.threshold));
    c.expect(rep.violated == (R > 1.0), fmt("S1(%g) violation flag wrong", R));
  }
  c.summary = "unit spheres n=2,3,4 give 1; S1(R) gives 1/R";
  return c;
}

Check eigenvalues() {
  Check c;
  const WarpedSpace r2(euclidean_profile(), FiberSpec::circle(1.0));
  const WarpedSpace r3(euclidean_profile(), FiberSpec::sphere(1.0));
  const auto circle = lambda1_bound_check(slice_graph(r2, 1.7, fiber_grid(r2.fiber())), 0);
  c.expect(std::abs(circle.eigenvalue - circle.bound) <= 1e-9 * circle.bound,
           fmt("circle lambda1 %.15g bound %.15g", circle.eigenvalue, circle.bound));
  for (int k : {0, 1}) {
    const auto sphere = lambda1_bound_check(slice_graph(r3, 1.3, fiber_grid(r3.fiber())), k);
    c.expect(std::abs(sphere.eigenvalue - sphere.bound) <= 1e-9 * sphere.bound,
             fmt("sphere k=%g lambda1 %.15g bound %.15g", k, sphere.eigenvalue, sphere.bound));
  }
  const auto ellipse = lambda1_bound_check(build_star_graph(r2, ellipse_graph(2.0, 1.0), fiber_grid(r2.fiber())), 0);
  const double L = ellipse_perimeter_oracle(2.0, 1.0);
  const double lambda_oracle = std::pow(2.0 * kPi / L, 2);
  const double bound_oracle = std::sqrt(kPi) * L / (2.0 * std::pow(2.0 * kPi, 1.5));
  c.expect(std::abs(ellipse.eigenvalue - lambda_oracle) <= 1e-8, fmt("ellipse lambda1 %.12g vs %.12g", ellipse.eigenvalue, lambda_oracle));
  c.expect(std::abs(ellipse.bound - bound_oracle) <= 1e-8, fmt("ellipse bound %.12g vs %.12g", ellipse.bound, bound_oracle));
  c.expect(std::abs(ellipse.eigenvalue - 0.4206) <= 5e-5 && std::abs(ellipse.bound - 0.5452) <= 5e-5,
           fmt("ellipse values %.6g, %.6g", ellipse.eigenvalue, ellipse.bound));
  c.expect(ellipse.holds && !ellipse.equality, "ellipse should satisfy the bound strictly");
  for (int n : {2, 3, 4}) {
    const auto ball = steklov_bound_check(BallDomain{1.4, n});
    c.expect(ball.equality, fmt("ball n=%g p1 %.15g bound %.15g", n, ball.eigenvalue, ball.bound));
  }
  const auto ann = steklov_bound_check(AnnulusDomain{0.5, 1.0});
  c.expect(ann.eigenvalue < std::sqrt(4.0 / 3.0) && ann.eigenvalue > 0.0, fmt("annulus p1 %.12g", ann.eigenvalue));
  c.summary = fmt("ellipse lambda1 %.6f <= %.6f; annulus p1 %.6f < sqrt(4/3)", ellipse.eigenvalue, ellipse.bound,
                  ann.eigenvalue);
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Check reproducibility(const std::string& cli, const std::string& configs) {
  Check c;
  if (cli.empty() || configs.empty()) {
    c.expect(false, "usage: warpiso_acceptance <warpiso-cli> <configs-dir>");
    return c;
  }
  const fs::path root = fs::temp_directory_path() / ("warpiso_repro_" + std::to_string(std::random_device{}()));
  std::vector<fs::path> cfgs;
  for (const auto& e : fs::directory_iterator(configs))
    if (e.path().extension() == ".cfg") cfgs.push_back(e.path());
  std::sort(cfgs.begin(), cfgs.end());
  int compared = 0;
  for (const auto& cfg : cfgs) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = root / ("run" + std::to_string(run)) / cfg.stem();
      const std::string cmd = "\"" + cli + "\" run --config \"" + cfg.string() + "\" --out \"" + out.string() +
                              "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      c.expect(status == 0, cfg.filename().string() + ": run " + std::to_string(run) + " failed");
      outputs[run] = slurp(out / "report.json");
    }
    c.expect(!outputs[0].empty() && outputs[0] == outputs[1], cfg.filename().string() + ": report.json differs");
    ++compared;
  }
  c.expect(compared > 0, "no configs found");
  fs::remove_all(root);
  c.summary = std::to_string(compared) + " configs run twice, report.json compared byte for byte";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string configs = argc > 2 ? argv[2] : "";
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"slice geometry", slice_geometry},
      {"closed-form geometry", closed_form_geometry},
      {"weighted isoperimetric", weighted_isoperimetric},
      {"Jensen oracle", jensen},
      {"Hsiung-Minkowski identity", hsiung_minkowski},
      {"mean curvature chain", chain},
      {"slice stability", stability},
      {"power-law counterexample", power_law},
      {"small-ball threshold", small_ball},
      {"eigenvalue bounds", eigenvalues},
      {"reproducibility", [&] { return reproducibility(cli, configs); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const bool pass = c.failures == 0;
    failed += !pass;
    std::printf("[%s] %2zu %s: %s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.summary.c_str());
    if (!pass) {
      std::printf("       %d of %d checks failed\n", c.failures, c.checks);
      for (const auto& n : c.notes) std::printf("       %s\n", n.c_str());
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
