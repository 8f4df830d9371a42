#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "warpiso/errors.hpp"
#include "warpiso/graph_catalog.hpp"
#include "warpiso/graph_io.hpp"
#include "warpiso/hypersurface.hpp"
#include "warpiso/iso_lab.hpp"
#include "warpiso/minkowski_chain.hpp"
#include "warpiso/profile_catalog.hpp"
#include "warpiso/spectral_stability.hpp"
#include "warpiso/warp_model.hpp"

#ifndef WARPISO_VERSION
#define WARPISO_VERSION "unknown"
#endif

namespace warpiso::cli {

using nlohmann::json;

bool Bundle::passed() const {
  return std::all_of(expectations.begin(), expectations.end(), [](const Expectation& e) { return e.passed; });
}

void Bundle::expect(std::string name, bool ok, std::string detail) {
  expectations.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

std::string g17(double x) { return format_double(x); }

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Broadcasts a length-1 list to n entries; ConfigError otherwise.
template <class T>
std::vector<T> broadcast(std::vector<T> v, std::size_t n, const std::string& key) {
  if (v.size() == n) return v;
  if (v.size() == 1) return std::vector<T>(n, v[0]);
  throw ConfigError("key '" + key + "' needs 1 or " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
}

GridResolution resolve_grid(Config& cfg, const FiberSpec& fiber, Bundle& bundle) {
  GridResolution res = default_resolution(fiber);
  const std::vector<int> given = cfg.get_ints("resolution", {});
  if (given.size() > 2) throw ConfigError("key 'resolution' takes [n] or [n_colatitude, n_azimuth]");
  if (!given.empty()) {
    res.primary = given[0];
    res.secondary = fiber.is_circle() ? 0 : (given.size() == 2 ? given[1] : 2 * given[0]);
  }
  cfg.record("resolution", given.empty() ? json(std::vector<int>{}) : json(given));
  const std::string text = fiber.describe() + ": " + res.describe();
  if (std::find(bundle.resolutions.begin(), bundle.resolutions.end(), text) == bundle.resolutions.end())
    bundle.resolutions.push_back(text);
  return res;
}

std::mt19937_64 rng_from(Config& cfg) {
  return std::mt19937_64(static_cast<std::uint64_t>(cfg.get_int("seed", 1)));
}

struct GraphSet {
  WarpedSpace space;
  FiberGrid grid;
  std::vector<StarGraph> graphs;
};

// Named graphs from "graph", then "random" random ones.
GraphSet load_graphs(Config& cfg, Bundle& bundle, const std::string& default_model, const std::string& default_fiber,
                     const std::vector<std::string>& default_graphs, bool revolution_only = false) {
  const std::string model = cfg.get_string("model", default_model);
  const FiberSpec fiber = make_fiber(cfg.get_string("fiber", default_fiber));
  WarpedSpace space(make_profile(model), fiber);
  FiberGrid grid = fiber_grid(fiber, resolve_grid(cfg, fiber, bundle));
  GraphSet set{space, grid, {}};
  for (const auto& spec : cfg.get_strings("graph", default_graphs)) {
    if (spec.starts_with("file(") && spec.ends_with(")")) {
      StarGraph g = load_star_graph(spec.substr(5, spec.size() - 6));
      if (g.space().profile().label() != space.profile().label() ||
          g.space().fiber().describe() != fiber.describe())
        throw PreconditionError("graph " + spec + " lives in " + g.space().label() + ", not " + space.label());
      set.graphs.push_back(std::move(g));
      continue;
    }
    set.graphs.push_back(build_star_graph(space, make_graph(spec, fiber), grid));
  }
  const int count = cfg.get_int("random", 0);
  if (count > 0) {
    const double r0 = cfg.get_number("r0", 1.0);
    const double amp = cfg.get_number("amplitude", 0.15);
    auto rng = rng_from(cfg);
    for (int i = 0; i < count; ++i) {
      AnalyticGraph g = fiber.is_circle()   ? random_star_curve(rng, r0, amp)
                        : revolution_only ? random_revolution(rng, r0, amp)
                                          : random_star_surface(rng, r0, amp);
      g.label += "#" + std::to_string(i);
      set.graphs.push_back(build_star_graph(space, g, grid));
    }
  }
  return set;
}

json with_context(json j, const std::string& key, const std::string& value) {
  j[key] = value;
  return j;
}

// ---------------------------------------------------------------- classify

void run_classify(Config& cfg, Bundle& b) {
  const auto models = cfg.get_strings("model", {"euclidean", "hyperbolic", "exponential"});
  const std::size_t n = models.size();
  const auto fibers = broadcast(cfg.get_strings("fiber", {"circle(1)"}), n, "fiber");
  const auto Ks = cfg.get_numbers("K", {});
  const auto expects = cfg.get_strings("expect", {});
  const double working = cfg.get_number("working_radius", 3.0);
  const int samples = cfg.get_int("samples", 4096);
  const auto Kb = Ks.empty() ? Ks : broadcast(Ks, n, "K");
  const auto eb = expects.empty() ? expects : broadcast(expects, n, "expect");
  for (std::size_t i = 0; i < n; ++i) {
    const WarpedSpace space(make_profile(models[i]), make_fiber(fibers[i]));
    const std::optional<double> K = Kb.empty() ? std::nullopt : std::optional<double>(Kb[i]);
    const std::optional<double> radius =
        space.profile().finite_domain() ? std::nullopt : std::optional<double>(working);
    const RegimeReport rep = classify_regime(space, K, radius, samples);
    json j = rep;
    j["model"] = models[i];
    j["fiber"] = space.fiber().describe();
    b.records.push_back(j);
    const double margin = rep.K ? *rep.K - rep.max_defect : -rep.max_defect;
    b.rows.push_back({b.experiment, models[i], space.fiber().describe(), "", rep.min_defect, rep.max_defect, margin,
                      to_string(rep.regime)});
    if (!eb.empty())
      b.expect(models[i] + " on " + space.fiber().describe() + " is " + eb[i], to_string(rep.regime) == eb[i],
               "classified as " + to_string(rep.regime) + ": " + rep.explanation);

    SvgPlot plot("s(r) for " + models[i] + ", shaded where s s'' - s'^2 >= 0", "r", "s(r)");
    std::vector<double> xs, ys;
    const int pts = 200;
    const double lo = rep.r_min, hi = rep.r_max;
    bool in_band = false;
    double band_start = lo;
    for (int k = 0; k <= pts; ++k) {
      const double r = lo + (hi - lo) * (k + 1) / (pts + 2);
      xs.push_back(r);
      ys.push_back(space.profile().eval(r).f);
      const bool convex = log_convexity_margin(space, r) >= -1e-12;
      if (convex && !in_band) band_start = r;
      if (!convex && in_band) plot.band(band_start, r, "#4caf50");
      in_band = convex;
    }
    if (in_band) plot.band(band_start, xs.back(), "#4caf50");
    plot.line(xs, ys, "#1f4e9c", "s(r)");
    b.plots.emplace_back("classify_" + std::to_string(i) + "_" + models[i], std::move(plot));
  }
}

// --------------------------------------------------------------- verify-iso

void run_verify_iso(Config& cfg, Bundle& b) {
  GraphSet set = load_graphs(cfg, b, "euclidean", "circle(1)", {"offset-circle(d=1, rho=1)"});
  const std::string weight = cfg.get_string("weight", "1");
  const auto volume_weight = cfg.get_optional_string("volume_weight");
  const std::string expect = cfg.get_string("expect", "auto");
  const auto expect_margin = cfg.get_optional_number("expect_margin");
  const double tol = cfg.get_number("margin_tolerance", 1e-8);
  VerifyOptions opts;
  opts.weight_label = weight;
  if (auto K = cfg.get_optional_number("K")) opts.K = *K;
  std::optional<RadialFunction> c;
  if (volume_weight) c = make_weight(*volume_weight);
  const WeightPair weights(make_weight(weight), c, set.space.domain_start(), std::nullopt,
                           volume_weight ? weight + " | c=" + *volume_weight : weight);
  if (expect != "auto" && expect != "holds" && expect != "equality" && expect != "violated")
    throw ConfigError("key 'expect' must be one of auto, holds, equality, violated");
  SvgPlot plot("margin per graph", "graph index", "lhs - rhs");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < set.graphs.size(); ++i) {
    const auto& g = set.graphs[i];
    const VerificationRecord rec = verify_weighted_iso(g, weights, opts);
    b.records.push_back(rec);
    b.rows.push_back(csv_row(b.experiment, rec));
    xs.push_back(static_cast<double>(i));
    ys.push_back(rec.margin);
    const std::string name = g.label() + " with a = " + weight;
    if (expect == "holds" || (expect == "auto" && !rec.theorems.empty()))
      b.expect(name + ": inequality holds", rec.inequality_holds(), "margin " + g17(rec.margin));
    else if (expect == "equality")
      b.expect(name + ": equality", rec.equality_flag, "margin " + g17(rec.margin));
    else if (expect == "violated")
      b.expect(name + ": inequality fails", !rec.inequality_holds(), "margin " + g17(rec.margin));
    if (expect_margin)
      b.expect(name + ": margin " + g17(*expect_margin), std::abs(rec.margin - *expect_margin) <= tol,
               "margin " + g17(rec.margin));
  }
  plot.points(xs, ys, "#c0392b", "margin");
  plot.hline(0.0, "black");
  b.plots.emplace_back("verify_iso_margins", std::move(plot));
}

// ----------------------------------------------------------------- catalog4

void run_catalog4(Config& cfg, Bundle& b) {
  const std::string model = cfg.get_string("model", "euclidean");
  GraphSet set = load_graphs(cfg, b, model, "circle(1)", {"slice(1)"});
  const auto ks = cfg.get_ints("k", {1, 2});
  std::vector<double> xs, ys;
  for (const auto& g : set.graphs) {
    const bool slice = g.relative_variation() == 0.0;
    for (int k : ks) {
      for (const auto& rec : model_weight_catalog(model, g, k)) {
        b.records.push_back(rec);
        b.rows.push_back(csv_row(b.experiment, rec));
        xs.push_back(static_cast<double>(xs.size()));
        ys.push_back(rec.margin / (1.0 + std::abs(rec.rhs)));
        const std::string name = g.label() + " with " + rec.weight;
        b.expect(name + ": hypotheses of a theorem hold", !rec.theorems.empty(), "");
        b.expect(name + ": inequality holds", rec.inequality_holds(), "margin " + g17(rec.margin));
        if (slice) b.expect(name + ": slice is an equality case", rec.equality_flag, "margin " + g17(rec.margin));
      }
    }
  }
  SvgPlot plot("scaled margins over the catalog", "record", "margin / (1 + rhs)");
  plot.points(xs, ys, "#8e44ad", "margin");
  plot.hline(0.0, "black");
  b.plots.emplace_back("catalog4_margins", std::move(plot));
}

// ----------------------------------------------------------------- hm-check

void run_hm_check(Config& cfg, Bundle& b) {
  GraphSet set = load_graphs(cfg, b, "euclidean", "sphere(1)", {"sphere(1)", "spheroid(1.3, 0.8)"}, true);
  const auto ks = cfg.get_ints("k", set.space.fiber_dimension() == 1 ? std::vector<int>{1} : std::vector<int>{1, 2});
  const auto etas = cfg.get_strings("eta", {"1", "r^2"});
  const double tol1 = cfg.get_number("tolerance", 1e-6);
  const double tol2 = cfg.get_number("tolerance_higher", 1e-5);
  double worst = 0.0;
  for (const auto& g : set.graphs) {
    const auto frames = surface_frames(g);
    const ShapeField shape = shape_field(g);
    for (int k : ks) {
      for (const auto& eta_spec : etas) {
        const HMResult res = hm_residual(g, frames, shape, make_weight(eta_spec), k);
        json j = res;
        j["shape"] = g.label();
        j["eta"] = eta_spec;
        j["model"] = set.space.profile().label();
        b.records.push_back(j);
        const double tol = k == 1 ? tol1 : tol2;
        const bool ok = std::abs(res.residual) <= tol;
        worst = std::max(worst, std::abs(res.residual));
        b.rows.push_back({b.experiment, set.space.profile().label(), g.label(), "eta=" + eta_spec + " k=" + std::to_string(k),
                          res.raw, 0.0, res.residual, ok ? "identity" : "residual too large"});
        b.expect(g.label() + " k=" + std::to_string(k) + " eta=" + eta_spec + ": residual <= " + short_num(tol), ok,
                 "residual " + g17(res.residual));
      }
    }
  }
}

// -------------------------------------------------------------------- chain

void run_chain(Config& cfg, Bundle& b) {
  const std::string model = cfg.get_string("model", "euclidean");
  GraphSet set = load_graphs(cfg, b, model, "sphere(1)", {"ellipsoid(2, 1.5, 1)"});
  const int k = cfg.get_int("k", 2);
  const int l = cfg.get_int("l", 1);
  const auto K = cfg.get_optional_number("K");
  const auto expects = broadcast(cfg.get_strings("expect", {"nondecreasing"}), set.graphs.size(), "expect");
  const bool corollary = cfg.get_int("corollary", 0) != 0;
  for (std::size_t i = 0; i < set.graphs.size(); ++i) {
    const auto& g = set.graphs[i];
    const ChainReport rep = chain_margins(g, k, l, K);
    b.records.push_back(with_context(rep, "shape", g.label()));
    double prev = rep.base;
    for (std::size_t j = 0; j < rep.entries.size(); ++j) {
      b.rows.push_back({b.experiment, model, g.label(), "j=" + std::to_string(j) + " l=" + std::to_string(l),
                        rep.entries[j], prev, rep.margins[j], rep.margins[j] >= -1e-9 * (1.0 + std::abs(rep.base)) ? "nondecreasing" : "decreasing"});
      prev = rep.entries[j];
    }
    const std::string& e = expects[i];
    const double tol = 1e-9 * (1.0 + std::abs(rep.base));
    if (e == "nondecreasing" || e == "strict") {
      b.expect(g.label() + ": chain hypotheses hold", rep.hypotheses_hold(), "");
      b.expect(g.label() + ": chain nondecreasing", rep.nondecreasing(), "");
      if (e == "strict")
        b.expect(g.label() + ": first step strict", rep.margins.at(0) > tol, "margin " + g17(rep.margins.at(0)));
    } else if (e == "equality") {
      double worst = 0.0;
      for (double m : rep.margins) worst = std::max(worst, std::abs(m));
      b.expect(g.label() + ": every step is an equality", worst <= tol, "largest |margin| " + g17(worst));
    } else if (e != "none") {
      throw ConfigError("key 'expect' entries must be nondecreasing, strict, equality or none");
    }
    if (corollary) {
      const VerificationRecord rec = corollary_run(model, g, k, l);
      b.records.push_back(rec);
      b.rows.push_back(csv_row(b.experiment, rec));
      b.expect(g.label() + ": corollary inequality holds", rec.inequality_holds(), "margin " + g17(rec.margin));
    }
    SvgPlot plot("chain for " + g.label(), "j (base at 0, entry j at j + 1)", "value");
    std::vector<double> values{rep.base};
    values.insert(values.end(), rep.entries.begin(), rep.entries.end());
    plot.steps(values, "#d35400", "base, entries j = 0.." + std::to_string(k));
    b.plots.emplace_back("chain_" + std::to_string(i), std::move(plot));
  }
}

// ---------------------------------------------------------------- stability

void run_stability(Config& cfg, Bundle& b) {
  const std::string model = cfg.get_string("model", "sphere");
  const auto radii = cfg.get_numbers("fiber_radius", {0.5, 0.75, 0.9, 1.1, 1.5, 2.0});
  const double r0 = cfg.get_number("r0", std::numbers::pi / 2.0);
  const int mode = cfg.get_int("mode", 1);
  const bool probe = cfg.get_int("probe", 1) != 0;
  ProbeOptions opts;
  opts.h = cfg.get_number("h", 0.0);
  opts.resolution = cfg.get_int("resolution", 512);
  const double agreement = cfg.get_number("agreement", 0.05);
  const auto flip = cfg.get_optional_number("expect_flip");
  const double flip_tol = cfg.get_number("flip_tolerance", 1e-6);
  b.resolutions.push_back("S1(R): " + std::to_string(opts.resolution) + " nodes");
  const WarpProfile profile = make_profile(model);
  std::vector<double> xs, margins, fds, formulas;
  for (double R : radii) {
    const WarpedSpace space(profile, FiberSpec::circle(R));
    const StabilityVerdict v = slice_stability(space, r0);
    json j;
    j["fiber_radius"] = R;
    j["verdict"] = v;
    const std::string shape = "slice(" + short_num(r0) + ") in S1(" + short_num(R) + ")";
    double fd = std::nan(""), formula = std::nan("");
    if (probe) {
      const ProbeResult p = second_variation_probe(space, r0, mode, opts);
      j["probe"] = p;
      fd = p.fd;
      formula = p.formula;
      if (std::abs(p.formula) > 1e-8) {
        b.expect(shape + ": finite difference within " + short_num(100 * agreement) + "% of the formula",
                 std::abs(p.fd - p.formula) <= agreement * std::abs(p.formula),
                 "fd " + g17(p.fd) + ", formula " + g17(p.formula));
        b.expect(shape + ": verdict matches the sign of the second variation", v.stable == (p.fd > 0.0),
                 v.stable ? "stable" : "unstable");
      }
    }
    b.records.push_back(j);
    b.rows.push_back({b.experiment, model, shape, "mode=" + std::to_string(mode), fd, formula,
                      v.lambda1 - v.curvature_term, v.marginal ? "marginal" : (v.stable ? "stable" : "unstable")});
    xs.push_back(R);
    margins.push_back(v.lambda1 - v.curvature_term);
    fds.push_back(fd);
    formulas.push_back(formula);
  }
  if (flip && radii.size() >= 2) {
    double lo = *std::min_element(radii.begin(), radii.end());
    double hi = *std::max_element(radii.begin(), radii.end());
    auto stable = [&](double R) { return slice_stability(WarpedSpace(profile, FiberSpec::circle(R)), r0).stable; };
    const bool stable_lo = stable(lo);
    bool found = stable_lo != stable(hi);
    if (found) {
      while (hi - lo > 1e-3 * flip_tol) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) == stable_lo ? lo : hi) = mid;
      }
    }
    const double at = 0.5 * (lo + hi);
    json j;
    j["verdict_flip_radius"] = found ? json(at) : json(nullptr);
    b.records.push_back(j);
    b.expect("verdict flips within " + short_num(flip_tol) + " of R = " + short_num(*flip),
             found && std::abs(at - *flip) <= flip_tol, found ? "flip at " + g17(at) : "no sign change in range");
  }
  SvgPlot plot("slice stability sweep at r0 = " + short_num(r0), "fiber radius R", "value");
  plot.line(xs, margins, "#1f4e9c", "lambda1 - m(s'^2 - s s'')");
  if (probe) {
    plot.points(xs, fds, "#c0392b", "second variation (fd)");
    plot.line(xs, formulas, "#27ae60", "second variation (formula)");
  }
  plot.hline(0.0, "black");
  if (flip) plot.vline(*flip, "#7f8c8d");
  b.plots.emplace_back("stability_sweep", std::move(plot));
}

// --------------------------------------------------------------- small-ball

void run_small_ball(Config& cfg, Bundle& b) {
  const std::string model = cfg.get_string("model", "euclidean");
  const auto fibers = cfg.get_strings("fiber", {"circle(1)", "sphere(1)", "round-sphere(3, 1)"});
  const double r = cfg.get_number("r", 0.01);
  const auto expected = cfg.get_numbers("expect_threshold", {});
  const double tol = cfg.get_number("tolerance", 1e-12);
  if (!expected.empty() && expected.size() != fibers.size())
    throw ConfigError("key 'expect_threshold' needs one entry per fiber");
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const WarpedSpace space(make_profile(model), make_fiber(fibers[i]));
    const ThresholdReport rep = small_ball_threshold(space, r);
    b.records.push_back(with_context(with_context(rep, "fiber", space.fiber().describe()), "model", model));
    b.rows.push_back({b.experiment, model, space.fiber().describe(), "", rep.s_prime0, rep.threshold,
                      rep.threshold - rep.s_prime0, rep.violated ? "threshold exceeded" : "within threshold"});
    if (!expected.empty())
      b.expect(space.fiber().describe() + ": threshold " + g17(expected[i]),
               std::abs(rep.threshold - expected[i]) <= tol * (1.0 + std::abs(expected[i])), "threshold " + g17(rep.threshold));
    // Leading-order areas agree with the threshold: the coordinate ball is smaller iff s'(0) < threshold.
    const bool larger = rep.area_at_origin > rep.area_geodesic * (1.0 + 1e-12);
    b.expect(space.fiber().describe() + ": area comparison consistent with the threshold",
             rep.violated == larger, "");
  }
}

// ------------------------------------------------------------ power-annulus

void run_power_annulus(Config& cfg, Bundle& b) {
  const int m = cfg.get_int("m", 1);
  const auto radii = cfg.get_numbers("R1", {1.0, 10.0, 100.0});
  const auto expected = cfg.get_numbers("expect_area", {});
  const double tol = cfg.get_number("tolerance", 1e-6);
  if (!expected.empty() && expected.size() != radii.size())
    throw ConfigError("key 'expect_area' needs one entry per R1");
  std::vector<double> ratios;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const AnnulusRecord rec = power_counterexample(m, radii[i]);
    b.records.push_back(rec);
    const std::string shape = "annulus(" + short_num(rec.R1) + ", e*" + short_num(rec.R1) + ")";
    b.rows.push_back({b.experiment, "power(-1/" + std::to_string(m) + ")", shape, "", rec.area_ratio,
                      rec.area_closed_form, rec.area_ratio - rec.area_closed_form, "volume ratio " + short_num(rec.volume_ratio)});
    b.expect(shape + ": volume ratio is 1", std::abs(rec.volume_ratio - rec.volume_closed_form) <= 1e-10,
             "volume ratio " + g17(rec.volume_ratio));
    if (!expected.empty())
      b.expect(shape + ": area ratio " + g17(expected[i]), std::abs(rec.area_ratio - expected[i]) <= tol,
               "area ratio " + g17(rec.area_ratio));
    ratios.push_back(rec.area_ratio);
  }
  SvgPlot plot("area / |N| of unit-volume annuli", "R1", "area ratio");
  plot.line(radii, ratios, "#1f4e9c", "area ratio");
  b.plots.emplace_back("power_annulus", std::move(plot));
}

// ------------------------------------------------------------- eigen-lambda

void run_eigen_lambda(Config& cfg, Bundle& b) {
  GraphSet set = load_graphs(cfg, b, "euclidean", "circle(1)", {"slice(1)", "ellipse(2, 1)"});
  const auto ks = cfg.get_ints("k", {0});
  for (const auto& g : set.graphs) {
    const bool slice = g.relative_variation() == 0.0;
    for (int k : ks) {
      const EigenBoundRecord rec = lambda1_bound_check(g, k);
      b.records.push_back(rec);
      const std::string verdict = rec.equality ? "equality" : (rec.holds ? "holds" : "violated");
      b.rows.push_back({b.experiment, set.space.profile().label(), g.label(), "k=" + std::to_string(k), rec.eigenvalue,
                        rec.bound, rec.bound - rec.eigenvalue, verdict});
      const std::string name = g.label() + " k=" + std::to_string(k);
      b.expect(name + ": lambda1 <= bound", rec.holds, "lambda1 " + g17(rec.eigenvalue) + ", bound " + g17(rec.bound));
      if (slice) b.expect(name + ": round sphere attains the bound", rec.equality, "");
    }
  }
}

// ------------------------------------------------------------ eigen-steklov

void run_eigen_steklov(Config& cfg, Bundle& b) {
  const double radius = cfg.get_number("ball_radius", 1.0);
  const auto dims = cfg.get_ints("n", {2, 3, 4});
  const auto annulus = cfg.get_numbers("annulus", {0.5, 1.0});
  const int max_mode = cfg.get_int("max_mode", 64);
  auto add = [&](const EigenBoundRecord& rec) {
    b.records.push_back(rec);
    const std::string verdict = rec.equality ? "equality" : (rec.holds ? "holds" : "violated");
    b.rows.push_back({b.experiment, "euclidean", rec.shape, "", rec.eigenvalue, rec.bound, rec.bound - rec.eigenvalue, verdict});
  };
  for (int n : dims) {
    const auto rec = steklov_bound_check(BallDomain{radius, n});
    add(rec);
    b.expect(rec.shape + ": ball attains the bound", rec.equality, "p1 " + g17(rec.eigenvalue) + ", bound " + g17(rec.bound));
  }
  if (!annulus.empty()) {
    if (annulus.size() != 2) throw ConfigError("key 'annulus' takes [inner, outer]");
    const auto rec = steklov_bound_check(AnnulusDomain{annulus[0], annulus[1], max_mode});
    add(rec);
    b.expect(rec.shape + ": p1 strictly below the bound", rec.eigenvalue < rec.bound && !rec.equality,
             "p1 " + g17(rec.eigenvalue) + ", bound " + g17(rec.bound));
  }
}

const std::set<std::string> kGraphKeys{"model", "fiber", "graph", "random", "r0", "amplitude"};

std::set<std::string> with_graph_keys(std::set<std::string> keys) {
  keys.insert(kGraphKeys.begin(), kGraphKeys.end());
  return keys;
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> list{
      {"classify", "regime of s'^2 - s s'' against the fiber curvature",
       {"model", "fiber", "K", "working_radius", "samples", "expect"}, run_classify},
      {"verify-iso", "weighted isoperimetric inequality for given graphs and weight",
       with_graph_keys({"weight", "volume_weight", "K", "expect", "expect_margin", "margin_tolerance"}), run_verify_iso},
      {"catalog4", "explicit weights of the model spaces", with_graph_keys({"k"}), run_catalog4},
      {"hm-check", "Hsiung-Minkowski identity residuals",
       with_graph_keys({"k", "eta", "tolerance", "tolerance_higher"}), run_hm_check},
      {"chain", "mean curvature chain inequality", with_graph_keys({"k", "l", "K", "expect", "corollary"}), run_chain},
      {"stability", "slice stability sweep over S1(R) fibers",
       {"model", "fiber_radius", "r0", "mode", "probe", "h", "agreement", "expect_flip", "flip_tolerance"},
       run_stability},
      {"small-ball", "threshold on s'(0) for small-ball isoperimetry",
       {"model", "fiber", "r", "expect_threshold", "tolerance"}, run_small_ball},
      {"power-annulus", "unit-volume annuli in the r^(-1/m) warped space",
       {"m", "R1", "expect_area", "tolerance"}, run_power_annulus},
      {"eigen-lambda", "first eigenvalue of the Newton-tensor Laplacian against its bound",
       with_graph_keys({"k"}), run_eigen_lambda},
      {"eigen-steklov", "first Steklov eigenvalue of balls and an annulus",
       {"ball_radius", "n", "annulus", "max_mode"}, run_eigen_steklov},
  };
  return list;
}

const ExperimentInfo* find_experiment(const std::string& name) {
  for (const auto& e : experiments())
    if (e.name == name) return &e;
  return nullptr;
}

Bundle run_experiment(const ExperimentInfo& info, Config& config) {
  std::set<std::string> allowed = info.keys;
  allowed.insert({"experiment", "resolution", "seed"});
  config.reject_unknown(allowed, info.name);
  Bundle bundle;
  bundle.experiment = info.name;
  config.record("experiment", info.name);
  info.run(config, bundle);
  bundle.config = config.resolved_with_unread();
  return bundle;
}

void emit_plots(const Bundle& bundle, const std::filesystem::path& dir) {
  if (!bundle.plots.empty()) {
    for (const auto& [name, plot] : bundle.plots) plot.write(dir / (name + ".svg"));
    return;
  }
  if (bundle.rows.empty()) {
    std::cerr << "warpiso: " << bundle.experiment << " has no records to plot\n";
    return;
  }
  SvgPlot plot(bundle.experiment + ": lhs and rhs per row", "row", "value");
  std::vector<double> xs, lhs, rhs;
  for (std::size_t i = 0; i < bundle.rows.size(); ++i) {
    xs.push_back(static_cast<double>(i));
    lhs.push_back(bundle.rows[i].lhs);
    rhs.push_back(bundle.rows[i].rhs);
  }
  plot.points(xs, lhs, "#c0392b", "lhs");
  plot.points(xs, rhs, "#1f4e9c", "rhs");
  plot.write(dir / (bundle.experiment + "_rows.svg"));
}

void write_bundle(const Bundle& bundle, const std::filesystem::path& dir, double wall_seconds) {
  std::filesystem::create_directories(dir);
  json report;
  report["schema_version"] = 1;
  report["warpiso_version"] = WARPISO_VERSION;
  report["experiment"] = bundle.experiment;
  report["config"] = bundle.config;
  report["records"] = bundle.records;
  json checks = json::array();
  for (const auto& e : bundle.expectations)
    checks.push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
  report["expectations"] = checks;
  report["passed"] = bundle.passed();
  {
    std::ofstream out(dir / "report.json", std::ios::binary);
    out << dump_json(report);
  }
  {
    std::ofstream out(dir / "report.csv", std::ios::binary);
    write_csv(out, bundle.rows);
  }
  emit_plots(bundle, dir);
  std::ofstream log(dir / "run.log", std::ios::binary);
  log << "warpiso " << WARPISO_VERSION << "\n";
  log << "compiler " << __VERSION__ << "\n";
  log << "eigen " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION << "\n";
  log << "boost " << BOOST_VERSION / 100000 << "." << BOOST_VERSION / 100 % 1000 << "." << BOOST_VERSION % 100 << "\n";
  log << "nlohmann_json " << NLOHMANN_JSON_VERSION_MAJOR << "." << NLOHMANN_JSON_VERSION_MINOR << "."
      << NLOHMANN_JSON_VERSION_PATCH << "\n";
  log << "experiment " << bundle.experiment << "\n";
  for (const auto& r : bundle.resolutions) log << "resolution " << r << "\n";
  log << "records " << bundle.records.size() << "\n";
  for (const auto& e : bundle.expectations)
    log << (e.passed ? "ok   " : "FAIL ") << e.name << (e.detail.empty() ? "" : " (" + e.detail + ")") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall_seconds);
  log << "wall_time_seconds " << buf << "\n";
  log << "verdict " << (bundle.passed() ? "pass" : "fail") << "\n";
}

}  // namespace warpiso::cli
