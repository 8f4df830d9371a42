#include "warpiso/iso_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "warpiso/errors.hpp"
#include "warpiso/profile_catalog.hpp"

namespace warpiso {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Smallest value of (value - tol * scale) over samples in (lo, hi]; reports
// where it occurs. value/scale come from one callback.
struct SampledMin {
  double worst = kInfinity;  // min of value / (1 + scale)
  double value = 0.0;
  double at = 0.0;
  bool finite = true;
  bool passes(double tol) const { return finite && worst >= -tol; }
};

SampledMin sample_min(double lo, double hi, int samples,
                      const std::function<std::pair<double, double>(double)>& f) {
  SampledMin out;
  for (int i = 0; i < samples; ++i) {
    const double r = lo + (hi - lo) * (i + 1.0) / samples;
    const auto [v, scale] = f(r);
    if (!std::isfinite(v) || !std::isfinite(scale)) {
      out.finite = false;
      out.at = r;
      out.value = v;
      return out;
    }
    const double rel = v / (1e-300 + scale);
    const double score = scale == 0.0 ? (v < 0.0 ? -kInfinity : 0.0) : rel;
    if (score < out.worst) {
      out.worst = score;
      out.value = v;
      out.at = r;
    }
  }
  return out;
}

Hypothesis sampled_hypothesis(std::string name, const SampledMin& m, int samples, double lo, double hi) {
  std::ostringstream os;
  if (!m.finite) {
    os << "non-finite value at r=" << fmt(m.at);
    return {std::move(name), false, os.str()};
  }
  os << "min " << fmt(m.value) << " at r=" << fmt(m.at) << " over " << samples << " samples of ("
     << fmt(lo) << ", " << fmt(hi) << "]";
  return {std::move(name), m.passes(1e-9), os.str()};
}

bool is_constant_curvature(const WarpedSpace& space) {
  const std::string& label = space.profile().label();
  const bool space_form_profile =
      label == "euclidean" || label == "hyperbolic" || label == "hemisphere" || label == "sphere";
  const auto& fiber = space.fiber();
  return space_form_profile && fiber.is_realized() && fiber.radius() == 1.0;
}

}  // namespace

bool VerificationRecord::all_hypotheses_pass() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.passed; });
}

bool VerificationRecord::inequality_holds(double tol) const {
  return margin >= -tol * (1.0 + std::abs(rhs));
}

double omega_sharp_radius(const WarpedSpace& space, double volume, const std::optional<RadialFunction>& c) {
  if (!(volume > 0.0)) throw RangeError("omega_sharp_radius: volume must be positive, got " + fmt(volume));
  return invert_volume(space, volume / space.fiber_volume(), c);
}

VerificationRecord verify_weighted_iso(const StarGraph& graph, const WeightPair& weights,
                                       const VerifyOptions& options) {
  const WarpedSpace& space = graph.space();
  const auto& profile = space.profile();
  const int m = space.fiber_dimension();
  const std::optional<RadialFunction> c = weights.volume_weight();

  VerificationRecord rec;
  rec.kind = "weighted-iso";
  rec.model = profile.label();
  rec.shape = graph.label();
  rec.weight = options.weight_label;
  rec.resolution = graph.grid().resolution();
  rec.equality_tolerance = options.equality_tolerance;

  rec.lhs = boundary_integral(graph, [&](double r) { return weights.a(r).f; });
  rec.volume = enclosed_volume(graph, c);
  rec.sharp_radius = omega_sharp_radius(space, rec.volume, c);
  const double R = rec.sharp_radius;
  rec.rhs = space.fiber_volume() * weights.a(R).f * area_coefficient(space, R);
  rec.margin = rec.lhs - rec.rhs;

  // Hypotheses are sampled up to the larger of max psi and R.
  const double lo = profile.domain_start();
  const double hi = std::max(graph.max_psi(), R);
  const int n = options.hypothesis_samples;

  rec.hypotheses.push_back({"star-shaped", true,
                            "graph over the fiber, psi in [" + fmt(graph.min_psi()) + ", " +
                                fmt(graph.max_psi()) + "]"});

  const auto a_min = sample_min(lo, hi, n, [&](double r) { return std::pair{weights.a(r).f, 0.0}; });
  const bool a_nonneg = a_min.finite && a_min.value >= 0.0 && weights.a(lo).f >= 0.0;
  const bool a_pos = a_min.finite && a_min.value > 0.0 && weights.a(lo).f > 0.0;
  rec.hypotheses.push_back({"a nonnegative", a_nonneg, "min a = " + fmt(std::min(a_min.value, weights.a(lo).f))});
  rec.hypotheses.push_back({"a positive", a_pos, "min a = " + fmt(std::min(a_min.value, weights.a(lo).f))});

  auto product_slope = [&](const std::function<Deriv2(double)>& w) {
    return [&, w](double r) {
      const Deriv2 A = space.area_jet(r);
      const Deriv2 wv = w(r);
      return std::pair{wv.df * A.f + wv.f * A.df, std::abs(wv.df) * A.f + std::abs(wv.f * A.df)};
    };
  };
  const auto bA_mono = sample_min(lo, hi, n, product_slope([&](double r) { return weights.b(r); }));
  rec.hypotheses.push_back(sampled_hypothesis("bA non-decreasing", bA_mono, n, lo, hi));

  const auto b_convex = sample_min(lo, hi, n, [&](double r) {
    const Deriv2 s = profile.eval(r);
    const Deriv2 b = weights.b(r);
    const double scale = s.f * s.f * std::abs(b.d2f) + m * s.f * std::abs(s.df * b.df) +
                         m * std::abs(b.f) * (s.df * s.df + s.f * std::abs(s.d2f));
    return std::pair{weighted_convexity_margin(space, weights, r), scale};
  });
  rec.hypotheses.push_back(sampled_hypothesis("b(V^-1) A(V^-1) convex", b_convex, n, lo, hi));

  const auto aA_mono = sample_min(lo, hi, n, product_slope([&](double r) { return weights.a(r); }));
  rec.hypotheses.push_back(sampled_hypothesis("aA non-decreasing", aA_mono, n, lo, hi));

  const RadialFunction aA = [&](double r) {
    const Deriv2 A = space.area_jet(r);
    const Deriv2 a = weights.a(r);
    return Deriv2{a.f * A.f, a.df * A.f + a.f * A.df, a.d2f * A.f + 2.0 * a.df * A.df + a.f * A.d2f};
  };
  const auto aA_convex = sample_min(lo, hi, n, [&](double r) {
    const Deriv2 A = space.area_jet(r);
    const Deriv2 cw = weights.c(r);
    const Deriv2 f = aA(r);
    const double scale = std::abs(f.d2f) * cw.f * A.f + std::abs(f.df) * (std::abs(cw.df * A.f) + std::abs(cw.f * A.df));
    return std::pair{composite_convexity_margin(space, aA, r, c), scale};
  });
  rec.hypotheses.push_back(sampled_hypothesis(c ? "aA(V~^-1) convex" : "aA(V^-1) convex", aA_convex, n, lo, hi));

  const auto s_mono = sample_min(lo, hi, n, [&](double r) {
    const Deriv2 s = profile.eval(r);
    return std::pair{s.df, std::abs(s.df)};
  });
  rec.hypotheses.push_back(sampled_hypothesis("s non-decreasing", s_mono, n, lo, hi));

  const auto log_convex = sample_min(lo, hi, n, [&](double r) {
    const Deriv2 s = profile.eval(r);
    return std::pair{log_convexity_margin(space, r), std::abs(s.f * s.d2f) + s.df * s.df};
  });
  rec.hypotheses.push_back(sampled_hypothesis("A(v^-1) convex", log_convex, n, lo, hi));

  // The classical isoperimetric inequality on the model.
  const RegimeReport regime = classify_regime(space, options.K, hi, n);
  Hypothesis classical{"classical isoperimetric inequality", false, ""};
  if (is_constant_curvature(space)) {
    classical = {classical.name, true, "constant-curvature model"};
  } else if (log_convex.passes(1e-9)) {
    classical = {classical.name, true, "log-convex profile, star-shaped boundary"};
  } else if (regime.regime == Regime::GLWRegime) {
    classical = {classical.name, true, "GLW-assumed"};
  } else {
    classical.evidence = "not established (" + to_string(regime.regime) + ")";
  }
  rec.hypotheses.push_back(classical);

  auto pass = [&](std::string_view name) {
    for (const auto& h : rec.hypotheses)
      if (h.name == name) return h.passed;
    return false;
  };
  const bool convex_bA = b_convex.passes(1e-9);
  const bool convex_aA = aA_convex.passes(1e-9);
  if (!c) {
    if (log_convex.passes(1e-9) && s_mono.passes(1e-9)) rec.theorems.push_back("classical-surjective");
    if (log_convex.passes(1e-9)) rec.theorems.push_back("classical-star-shaped");
    if (classical.passed && a_nonneg && pass("bA non-decreasing") && convex_bA)
      rec.theorems.push_back("weighted-classical");
    if (regime.regime == Regime::GLWRegime && a_pos && convex_bA) rec.theorems.push_back("glw-weighted");
  }
  if (a_pos && convex_aA && pass("aA non-decreasing")) rec.theorems.push_back("weighted-volume-surjective");
  if (a_pos && convex_aA) rec.theorems.push_back("weighted-volume-star-shaped");

  const bool margin_zero = std::abs(rec.margin) <= options.equality_tolerance * (1.0 + std::abs(rec.rhs));
  if (margin_zero) {
    if (graph.relative_variation() <= options.slice_tolerance) {
      rec.equality_flag = true;
      rec.equality_note = "slice";
    } else {
      rec.equality_note = "non-slice equality candidate";
    }
  }
  return rec;
}

std::vector<VerificationRecord> model_weight_catalog(std::string_view model, const StarGraph& graph, int k,
                                                 const VerifyOptions& options) {
  if (k < 1) throw PreconditionError("catalog exponent k must be >= 1");
  const std::string& label = graph.space().profile().label();
  if (label != model)
    throw PreconditionError("graph lives in model '" + label + "', not '" + std::string(model) + "'");
  const double kk = k;
  const std::string ks = std::to_string(k);
  std::vector<std::pair<std::string, RadialFunction>> catalog;
  if (model == "euclidean") {
    catalog = {{"r^" + ks, power_weight(kk)}};
  } else if (model == "hyperbolic") {
    catalog = {{"sinh^" + ks, sinh_power_weight(kk)},
               {"cosh", cosh_weight()},
               {"(cosh-1)^" + ks, cosh_minus_one_power_weight(kk)}};
  } else if (model == "hemisphere") {
    if (!(graph.max_psi() < std::numbers::pi / 2))
      throw RangeError("hemisphere graph must satisfy max psi < pi/2");
    catalog = {{"tan^" + ks, tan_power_weight(kk)}, {"1-cos", one_minus_cos_weight()}};
  } else {
    throw PreconditionError("catalog model must be euclidean, hyperbolic or hemisphere");
  }
  std::vector<VerificationRecord> out;
  for (const auto& [wlabel, a] : catalog) {
    VerifyOptions opt = options;
    opt.weight_label = wlabel;
    auto rec = verify_weighted_iso(graph, WeightPair(a, std::nullopt, 0.0, std::nullopt, wlabel), opt);
    rec.kind = "catalog";
    out.push_back(std::move(rec));
  }
  if (model == "euclidean") {
    VerificationRecord rec = out.front();
    const int dim = graph.space().dimension();
    const double nd = dim;
    const double beta = unit_ball_volume(dim);
    rec.kind = "catalog-explicit";
    rec.rhs = nd * std::pow(beta, -(kk - 1.0) / nd) * std::pow(rec.volume, (nd - 1.0 + kk) / nd);
    rec.margin = rec.lhs - rec.rhs;
    rec.equality_flag = false;
    rec.equality_note.clear();
    if (std::abs(rec.margin) <= options.equality_tolerance * (1.0 + std::abs(rec.rhs))) {
      rec.equality_flag = graph.relative_variation() <= options.slice_tolerance;
      rec.equality_note = rec.equality_flag ? "slice" : "non-slice equality candidate";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

JensenResult jensen_gap(const WarpedSpace& space, const WeightPair& weights, std::span<const double> rho,
                        const FiberGrid& grid, int hypothesis_samples) {
  if (rho.size() != grid.size()) throw PreconditionError("jensen_gap: rho must have one value per node");
  const double total = space.fiber_volume();
  auto psi = [&](double r) { return weights.b(r).f * area_coefficient(space, r); };
  std::vector<double> psi_vals(rho.size()), v_vals(rho.size());
  double lo = kInfinity, hi = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] >= space.domain_start()) || !(rho[i] < space.domain_end()))
      throw RangeError("jensen_gap: rho outside the domain at node " + std::to_string(i));
    psi_vals[i] = psi(rho[i]);
    v_vals[i] = rho[i] == space.domain_start() ? 0.0 : volume_profile(space, rho[i]);
    lo = std::min(lo, rho[i]);
    hi = std::max(hi, rho[i]);
  }
  JensenResult out;
  out.mean_psi = integrate_fiber(grid, psi_vals) / total;
  const double mean_v = integrate_fiber(grid, v_vals) / total;
  out.psi_at_mean_volume = psi(invert_volume(space, mean_v));
  out.gap = out.mean_psi - out.psi_at_mean_volume;
  if (hi > lo) {
    const auto convex = sample_min(lo, hi, hypothesis_samples, [&](double r) {
      const Deriv2 s = space.profile().eval(r);
      const Deriv2 b = weights.b(r);
      const int m = space.fiber_dimension();
      const double scale = s.f * s.f * std::abs(b.d2f) + m * s.f * std::abs(s.df * b.df) +
                           m * std::abs(b.f) * (s.df * s.df + s.f * std::abs(s.d2f));
      return std::pair{weighted_convexity_margin(space, weights, r), scale};
    });
    out.convexity_holds = convex.passes(1e-9);
  } else {
    out.convexity_holds = true;
  }
  return out;
}

}  // namespace warpiso
