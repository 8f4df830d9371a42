#include "warpiso/minkowski_chain.hpp"

#include <algorithm>
#include <cmath>
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

std::string node_location(const StarGraph& graph, std::size_t i) {
  const auto y = graph.grid().coords(i);
  std::ostringstream os;
  os.precision(10);
  os << "node " << i << " (";
  if (graph.fiber_dimension() == 1) os << "theta=" << y[0];
  else os << "colatitude=" << y[0] << ", azimuth=" << y[1];
  os << ", psi=" << graph.psi(i) << ")";
  return os.str();
}

double sum_nodes(std::size_t n, const std::function<double(std::size_t)>& f) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s.add(f(i));
  return s.value();
}

}  // namespace

HMResult hm_residual(const StarGraph& graph, const RadialFunction& eta, int k) {
  return hm_residual(graph, surface_frames(graph), shape_field(graph), eta, k);
}

HMResult hm_residual(const StarGraph& graph, const std::vector<SurfaceFrame>& frames,
                     const ShapeField& shape, const RadialFunction& eta, int k) {
  const int m = graph.fiber_dimension();
  if (k < 1 || k > m) throw PreconditionError("hm_residual: k must be in 1..m");
  if (k >= 2 && !graph.is_revolution())
    throw UnsupportedError("hm_residual: k >= 2 needs a surface of revolution");
  const auto& profile = graph.space().profile();
  const std::size_t n = graph.size();

  std::vector<double> divergence(n, 0.0);
  if (k >= 2) {
    // One meridian evaluation per colatitude ring.
    const int n_lon = graph.grid().resolution().secondary;
    for (std::size_t ring = 0; ring * n_lon < n; ++ring) {
      const double d = revolution_divergence_t1(graph, graph.grid().coords(ring * n_lon)[0]);
      for (int j = 0; j < n_lon; ++j) divergence[ring * n_lon + j] = d;
    }
  }

  HMResult out;
  out.k = k;
  double abs_first = 0.0;
  std::array<CompensatedSum, 4> sums;
  CompensatedSum abs_sum;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = shape.node(i);
    const double r = graph.psi(i);
    const Deriv2 s = profile.eval(r);
    const Deriv2 e = eta(r);
    const double dS = frames[i].dS;
    const double first = e.f * s.df * node.H[k - 1] * dS;
    sums[0].add(first);
    abs_sum.add(std::abs(first));
    sums[1].add(e.f * node.H[k] * frames[i].support * dS);
    sums[2].add(e.f * divergence[i] * dS);
    const double quad = node.grad_r.dot(node.newton[k - 1] * node.grad_r);
    sums[3].add(s.f * e.df * quad * dS);
  }
  for (int t = 0; t < 4; ++t) out.terms[t] = sums[t].value();
  abs_first = abs_sum.value();
  const double coef = 1.0 / (k * binomial(m, k));
  out.raw = out.terms[0] - out.terms[1] + coef * (out.terms[2] + out.terms[3]);
  const double largest = std::max({std::abs(out.terms[0]), std::abs(out.terms[1]),
                                   coef * std::abs(out.terms[2]), coef * std::abs(out.terms[3])});
  out.denominator = abs_first + largest;
  out.residual = out.denominator > 0.0 ? out.raw / out.denominator : out.raw;
  return out;
}

PositivityReport cone_positivity(const StarGraph& graph, const ShapeField& shape, int p) {
  const int m = graph.fiber_dimension();
  if (p < 1 || p > m) throw PreconditionError("cone_positivity: p must be in 1..m");
  PositivityReport rep;
  rep.p = p;
  rep.min_H.assign(p, kInfinity);
  rep.min_H_node.assign(p, 0);
  rep.min_newton_eigenvalue.assign(p, kInfinity);
  rep.min_newton_node.assign(p, 0);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const auto& node = shape.node(i);
    for (int j = 1; j <= p; ++j) {
      if (node.H[j] < rep.min_H[j - 1]) {
        rep.min_H[j - 1] = node.H[j];
        rep.min_H_node[j - 1] = i;
      }
    }
    for (int j = 0; j < p; ++j) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(node.newton[j], Eigen::EigenvaluesOnly);
      const double lo = eig.eigenvalues()(0);
      if (lo < rep.min_newton_eigenvalue[j]) {
        rep.min_newton_eigenvalue[j] = lo;
        rep.min_newton_node[j] = i;
      }
    }
  }
  rep.positive = true;
  for (int j = 0; j < p && rep.positive; ++j) {
    if (!(rep.min_H[j] > 0.0)) {
      rep.positive = false;
      rep.location = "H_" + std::to_string(j + 1) + " = " + fmt(rep.min_H[j]) + " at " +
                     node_location(graph, rep.min_H_node[j]);
    }
  }
  for (int j = 0; j < p && rep.positive; ++j) {
    if (!(rep.min_newton_eigenvalue[j] > 0.0)) {
      rep.positive = false;
      rep.location = "T_" + std::to_string(j) + " eigenvalue " + fmt(rep.min_newton_eigenvalue[j]) + " at " +
                     node_location(graph, rep.min_newton_node[j]);
    }
  }
  rep.certification = "sampled at " + std::to_string(shape.size()) + " grid nodes, not certified between them";
  return rep;
}

PositivityReport cone_positivity(const StarGraph& graph, int p) {
  return cone_positivity(graph, shape_field(graph), p);
}

bool ChainReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const Hypothesis& h) { return h.passed; }) &&
         (!positivity || positivity->positive);
}

bool ChainReport::nondecreasing(double tol) const {
  return std::all_of(margins.begin(), margins.end(),
                     [&](double m) { return m >= -tol * (1.0 + std::abs(base)); });
}

ChainReport chain_margins(const StarGraph& graph, int k, int l, std::optional<double> K) {
  const int m = graph.fiber_dimension();
  if (k < 0 || k > m) throw PreconditionError("chain_margins: k must be in 0..m");
  if (l < 0) throw PreconditionError("chain_margins: l must be nonnegative");
  const WarpedSpace& space = graph.space();
  const auto& profile = space.profile();
  const int dim = space.dimension();
  const double nd = dim;

  ChainReport rep;
  rep.k = k;
  rep.l = l;
  const auto frames = surface_frames(graph);
  std::optional<ShapeField> shape;
  if (k >= 1) shape = shape_field(graph);

  rep.weighted_volume = enclosed_volume(graph, profile_derivative_weight(profile));
  rep.base = std::pow(space.fiber_volume(), -(l - 1.0) / nd) *
             std::pow(nd * rep.weighted_volume, (nd + l - 1.0) / nd);
  for (int j = 0; j <= k; ++j) {
    rep.entries.push_back(sum_nodes(graph.size(), [&](std::size_t i) {
      const Deriv2 s = profile.eval(graph.psi(i));
      const double H = j == 0 ? 1.0 : shape->node(i).H[j];
      return H * std::pow(s.f, l + j) * std::pow(s.df, -j) * frames[i].dS;
    }));
  }
  rep.margins.push_back(rep.entries[0] - rep.base);
  for (int j = 1; j <= k; ++j) rep.margins.push_back(rep.entries[j] - rep.entries[j - 1]);

  // Model hypotheses sampled on (start, max psi].
  const double lo = profile.domain_start(), hi = graph.max_psi();
  const int samples = 4096;
  double min_ds = kInfinity, min_defect = kInfinity, max_defect = -kInfinity;
  for (int i = 0; i < samples; ++i) {
    const double r = lo + (hi - lo) * (i + 1.0) / samples;
    const Deriv2 s = profile.eval(r);
    min_ds = std::min(min_ds, s.df);
    const double defect = s.df * s.df - s.f * s.d2f;
    min_defect = std::min(min_defect, defect);
    max_defect = std::max(max_defect, defect);
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(max_defect));
  rep.hypotheses.push_back({"s' > 0", min_ds > 0.0, "min s' = " + fmt(min_ds)});
  rep.hypotheses.push_back({"s'^2 - s s'' >= 0", min_defect >= -tol, "min = " + fmt(min_defect)});
  if (k >= 2) {
    if (!K && space.fiber().is_sphere()) K = space.fiber().sectional_curvature();
    if (K) {
      rep.hypotheses.push_back({"s'^2 - s s'' <= K", max_defect <= *K + tol,
                                "max = " + fmt(max_defect) + ", K = " + fmt(*K)});
    } else {
      rep.hypotheses.push_back({"s'^2 - s s'' <= K", false, "no curvature constant K available"});
    }
  }
  const bool euclidean = profile.label() == "euclidean";
  rep.hypotheses.push_back({euclidean ? "l >= 0" : "l >= 1", euclidean ? l >= 0 : l >= 1,
                            "l = " + std::to_string(l)});
  if (k >= 1) rep.positivity = cone_positivity(graph, *shape, k);
  return rep;
}

VerificationRecord corollary_run(std::string_view model, const StarGraph& graph, int k, int l) {
  const auto& profile = graph.space().profile();
  if (profile.label() != model)
    throw PreconditionError("graph lives in model '" + profile.label() + "', not '" + std::string(model) + "'");
  if (model != "euclidean" && model != "hyperbolic" && model != "hemisphere")
    throw PreconditionError("corollaries exist for euclidean, hyperbolic and hemisphere models");
  const ChainReport chain = chain_margins(graph, k, l);
  const int dim = graph.space().dimension();
  const double nd = dim;
  VerificationRecord rec;
  rec.kind = "corollary";
  rec.model = std::string(model);
  rec.shape = graph.label();
  rec.weight = "H_" + std::to_string(k) + " s^" + std::to_string(l + k) + " c^-" + std::to_string(k);
  rec.resolution = graph.grid().resolution();
  rec.lhs = chain.entries.back();
  rec.volume = chain.weighted_volume;
  rec.rhs = nd * std::pow(unit_ball_volume(dim), -(l - 1.0) / nd) * std::pow(rec.volume, (nd + l - 1.0) / nd);
  rec.margin = rec.lhs - rec.rhs;
  rec.sharp_radius = invert_volume(graph.space(), rec.volume / graph.space().fiber_volume(),
                                   profile_derivative_weight(profile));
  rec.hypotheses = chain.hypotheses;
  if (chain.positivity) {
    const auto& pos = *chain.positivity;
    rec.hypotheses.push_back({"H_j > 0 and T_j > 0", pos.positive,
                              pos.positive ? pos.certification : pos.location});
  }
  if (rec.all_hypotheses_pass()) rec.theorems.push_back("mean-curvature-chain");
  if (std::abs(rec.margin) <= rec.equality_tolerance * (1.0 + std::abs(rec.rhs))) {
    rec.equality_flag = graph.relative_variation() <= 1e-8;
    rec.equality_note = rec.equality_flag ? "slice" : "non-slice equality candidate";
  }
  return rec;
}

}  // namespace warpiso
