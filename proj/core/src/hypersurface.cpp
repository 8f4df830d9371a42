#include "warpiso/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "warpiso/errors.hpp"
#include "warpiso/spectral.hpp"

namespace warpiso {

namespace {

void require_hostable(const WarpedSpace& space, const FiberGrid& grid) {
  if (!space.single_fiber())
    throw UnsupportedError("hypersurfaces need a single-fiber space");
  if (!space.fiber().is_realized())
    throw UnsupportedError("hypersurfaces need a circle or 2-sphere fiber");
  if (space.fiber().dimension() != grid.dimension() ||
      space.fiber().radius() != grid.fiber().radius())
    throw PreconditionError("grid fiber does not match the space's fiber");
}

std::string node_name(const FiberGrid& grid, std::size_t i) {
  std::ostringstream os;
  os.precision(17);
  const auto y = grid.coords(i);
  if (grid.dimension() == 1) {
    os << "node " << i << " (theta=" << y[0] << ")";
  } else {
    os << "node " << i << " (colatitude=" << y[0] << ", azimuth=" << y[1] << ")";
  }
  return os.str();
}

// Inverse fiber metric diagonal at a node: h^{uu}, h^{vv}.
std::array<double, 2> inverse_fiber_metric(const FiberGrid& grid, double colatitude) {
  const double R = grid.fiber().radius();
  const double R2 = R * R;
  if (grid.dimension() == 1) return {1.0 / R2, 0.0};
  const double sn = std::sin(colatitude);
  return {1.0 / R2, 1.0 / (R2 * sn * sn)};
}

}  // namespace

Deriv2 StarGraph::meridian(double colatitude) const {
  if (!meridian_) throw UnsupportedError("graph '" + label_ + "' is not a surface of revolution");
  return (*meridian_)(colatitude);
}

double StarGraph::relative_variation() const noexcept {
  return max_psi_ > 0.0 ? (max_psi_ - min_psi_) / max_psi_ : 0.0;
}

void StarGraph::validate(bool allow_origin_contact) {
  const auto& profile = space_.profile();
  const bool contact_ok = allow_origin_contact && profile.vanishing_at_zero() &&
                          profile.domain_start() == 0.0;
  min_psi_ = kInfinity;
  max_psi_ = -kInfinity;
  origin_contacts_ = 0;
  for (std::size_t i = 0; i < psi_.size(); ++i) {
    const double p = psi_[i];
    const bool inside = std::isfinite(p) && p > profile.domain_start() && p < profile.domain_end();
    if (!inside) {
      if (p == 0.0 && contact_ok) {
        ++origin_contacts_;
      } else {
        std::ostringstream os;
        os.precision(17);
        os << "graph '" << label_ << "': psi = " << p << " at " << node_name(grid_, i)
           << " is outside (" << profile.domain_start() << ", " << profile.domain_end() << ")";
        throw ConstructionError(os.str());
      }
    }
    min_psi_ = std::min(min_psi_, p);
    max_psi_ = std::max(max_psi_, p);
  }
}

StarGraph build_star_graph(const WarpedSpace& space, const AnalyticGraph& graph,
                           const FiberGrid& grid) {
  require_hostable(space, grid);
  if (!graph.psi) throw ConstructionError("graph '" + graph.label + "' has no function");
  StarGraph g(space, grid, graph.label);
  const std::size_t n = grid.size();
  g.psi_.resize(n);
  g.grad_.resize(n);
  g.hess_.resize(n);
  g.analytic_ = true;
  bool azimuth_free = grid.dimension() == 2;
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = grid.coords(i);
    const Jet2 j = graph.psi(Jet2::variable(0, y[0]), Jet2::variable(1, y[1]));
    g.psi_[i] = j.v;
    if (grid.dimension() == 1) {
      g.grad_[i] = {j.d[0], 0.0};
      g.hess_[i] = {j.dd(0, 0), 0.0, 0.0};
    } else {
      g.grad_[i] = {j.d[0], j.d[1]};
      g.hess_[i] = {j.dd(0, 0), j.dd(0, 1), j.dd(1, 1)};
      if (std::abs(j.d[1]) > 1e-13 * (1.0 + std::abs(j.v))) azimuth_free = false;
    }
  }
  g.validate(graph.allow_origin_contact);
  if (grid.dimension() == 2 && (graph.zonal || azimuth_free)) {
    const GraphFunction fn = graph.psi;
    g.meridian_ = std::make_shared<const std::function<Deriv2(double)>>([fn](double colat) {
      const Jet2 j = fn(Jet2::variable(0, colat), Jet2::variable(1, 0.0));
      return Deriv2{j.v, j.d[0], j.dd(0, 0)};
    });
  }
  return g;
}

StarGraph build_star_graph(const WarpedSpace& space, std::string label, std::vector<double> samples,
                           const FiberGrid& grid) {
  require_hostable(space, grid);
  if (samples.size() != grid.size())
    throw ConstructionError("graph '" + label + "': sample count does not match the grid");
  StarGraph g(space, grid, std::move(label));
  const std::size_t n = grid.size();
  g.psi_ = std::move(samples);
  g.validate(false);
  g.grad_.resize(n);
  g.hess_.resize(n);
  if (grid.dimension() == 1) {
    const auto d = periodic_derivatives(g.psi_);
    for (std::size_t i = 0; i < n; ++i) {
      g.grad_[i] = {d.d1[i], 0.0};
      g.hess_[i] = {d.d2[i], 0.0, 0.0};
    }
    return g;
  }
  const auto d = sphere_derivatives(grid, g.psi_);
  for (std::size_t i = 0; i < n; ++i) {
    g.grad_[i] = {d.d_colat[i], d.d_azim[i]};
    g.hess_[i] = {d.d_colat2[i], d.d_colat_azim[i], d.d_azim2[i]};
  }
  const int n_lat = grid.resolution().primary, n_lon = grid.resolution().secondary;
  double ring_spread = 0.0;
  for (int i = 0; i < n_lat; ++i) {
    const auto ring = std::span<const double>(g.psi_).subspan(static_cast<std::size_t>(i) * n_lon, n_lon);
    const auto [lo, hi] = std::minmax_element(ring.begin(), ring.end());
    ring_spread = std::max(ring_spread, *hi - *lo);
  }
  if (ring_spread <= 1e-12 * g.max_psi_) {
    const auto series = std::make_shared<const ZonalSeries>(ZonalSeries::fit(grid, g.psi_));
    g.meridian_ = std::make_shared<const std::function<Deriv2(double)>>(
        [series](double colat) { return (*series)(colat); });
  }
  return g;
}

StarGraph build_star_graph(const WarpedSpace& space, std::string label,
                           const std::function<double(std::array<double, 2>)>& psi,
                           const FiberGrid& grid) {
  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = psi(grid.coords(i));
  return build_star_graph(space, std::move(label), std::move(samples), grid);
}

StarGraph slice_graph(const WarpedSpace& space, double r0, const FiberGrid& grid) {
  std::ostringstream os;
  os.precision(17);
  os << "slice(" << r0 << ")";
  AnalyticGraph g{os.str(), [r0](const Jet2&, const Jet2&) { return Jet2(r0); }, true};
  return build_star_graph(space, g, grid);
}

std::vector<SurfaceFrame> surface_frames(const StarGraph& graph) {
  const auto& grid = graph.grid();
  const auto& profile = graph.space().profile();
  const int m = graph.fiber_dimension();
  std::vector<SurfaceFrame> frames(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    SurfaceFrame& f = frames[i];
    const auto y = grid.coords(i);
    const auto hinv = inverse_fiber_metric(grid, y[0]);
    const auto& p = graph.gradient(i);
    const double s = profile.eval(graph.psi(i)).f;
    const double q = hinv[0] * p[0] * p[0] + hinv[1] * p[1] * p[1];
    const double s2 = s * s;
    const double root = std::sqrt(s2 + q);
    f.dS = std::pow(s, m - 1) * root * grid.weight(i);
    if (!(s > 0.0)) {
      f.degenerate = true;
      continue;
    }
    f.support = s2 / root;
    f.W = root / s;
    f.grad_r_norm2 = q / (s2 + q);
    f.x_tangent_norm2 = s2 * q / (s2 + q);
    const double h_uu = 1.0 / hinv[0];
    if (m == 1) {
      const double g = p[0] * p[0] + s2 * h_uu;
      f.metric = {g, 0.0, 0.0};
      f.x_tangent = {s * p[0] / g, 0.0};
    } else {
      const double h_vv = 1.0 / hinv[1];
      const double guu = p[0] * p[0] + s2 * h_uu;
      const double guv = p[0] * p[1];
      const double gvv = p[1] * p[1] + s2 * h_vv;
      const double det = guu * gvv - guv * guv;
      f.metric = {guu, guv, gvv};
      f.x_tangent = {s * (gvv * p[0] - guv * p[1]) / det, s * (guu * p[1] - guv * p[0]) / det};
    }
  }
  return frames;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

double ShapeField::newton_identity_residual() const {
  double worst = 0.0;
  for (const auto& node : nodes_) {
    for (int k = 0; k < m_; ++k) {
      const auto& T = node.newton[k];
      const double tr = T.trace();
      const double want_tr = (m_ - k) * binomial(m_, k) * node.H[k];
      worst = std::max(worst, std::abs(tr - want_tr) / (1.0 + std::abs(want_tr)));
      const double tb = (T * node.B).trace();
      const double want_tb = (k + 1) * binomial(m_, k + 1) * node.H[k + 1];
      worst = std::max(worst, std::abs(tb - want_tb) / (1.0 + std::abs(want_tb)));
    }
  }
  return worst;
}

ShapeField shape_field(const StarGraph& graph) {
  const auto& grid = graph.grid();
  const auto& profile = graph.space().profile();
  const int m = graph.fiber_dimension();
  ShapeField field;
  field.m_ = m;
  field.nodes_.resize(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto y = grid.coords(i);
    const auto hinv = inverse_fiber_metric(grid, y[0]);
    const auto& p = graph.gradient(i);
    const auto& hs = graph.hessian(i);
    const Deriv2 sj = profile.eval(graph.psi(i));
    const double s = sj.f, ds = sj.df;
    if (!(s > 0.0)) throw NumericError("degenerate induced metric at " + node_name(grid, i));
    const double s2 = s * s;
    const double q = hinv[0] * p[0] * p[0] + hinv[1] * p[1] * p[1];
    const double W = std::sqrt(1.0 + q / s2);

    Eigen::MatrixXd g(m, m), B(m, m);
    Eigen::VectorXd grad(m);
    if (m == 1) {
      const double h = 1.0 / hinv[0];
      g(0, 0) = p[0] * p[0] + s2 * h;
      B(0, 0) = (s * ds * h + 2.0 * ds / s * p[0] * p[0] - hs[0]) / W;
      grad(0) = p[0];
    } else {
      const double h_uu = 1.0 / hinv[0], h_vv = 1.0 / hinv[1];
      const double sn = std::sin(y[0]), cs = std::cos(y[0]);
      // psi_ab - Gamma^c_ab psi_c on the round sphere.
      const double c_uu = hs[0];
      const double c_uv = hs[1] - (cs / sn) * p[1];
      const double c_vv = hs[2] + sn * cs * p[0];
      g << p[0] * p[0] + s2 * h_uu, p[0] * p[1], p[0] * p[1], p[1] * p[1] + s2 * h_vv;
      const double k = 2.0 * ds / s;
      B << s * ds * h_uu + k * p[0] * p[0] - c_uu, k * p[0] * p[1] - c_uv,
          k * p[0] * p[1] - c_uv, s * ds * h_vv + k * p[1] * p[1] - c_vv;
      B /= W;
      grad << p[0], p[1];
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
      throw NumericError("degenerate induced metric at " + node_name(grid, i));
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::MatrixXd Linv = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(m, m));
    Eigen::MatrixXd Bhat = Linv * B * Linv.transpose();
    Bhat = 0.5 * (Bhat + Bhat.transpose());

    NodeShape& node = field.nodes_[i];
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Bhat, Eigen::EigenvaluesOnly);
    node.principal = eig.eigenvalues();
    std::vector<double> sigma(m + 1, 0.0);
    sigma[0] = 1.0;
    for (int a = 0; a < m; ++a)
      for (int k = a + 1; k >= 1; --k) sigma[k] += node.principal(a) * sigma[k - 1];
    node.H.resize(m + 1);
    for (int k = 0; k <= m; ++k) node.H[k] = sigma[k] / binomial(m, k);
    node.H[0] = 1.0;
    node.newton.resize(m);
    node.newton[0] = Eigen::MatrixXd::Identity(m, m);
    for (int k = 1; k < m; ++k)
      node.newton[k] = sigma[k] * Eigen::MatrixXd::Identity(m, m) - Bhat * node.newton[k - 1];
    node.B = Bhat;
    // Coordinates of grad r are g^{-1} d psi; orthonormal components L^T g^{-1} d psi.
    node.grad_r = L.transpose() * llt.solve(grad);
  }
  return field;
}

double ambient_normal_ricci(const StarGraph& graph, std::size_t i) {
  const auto& grid = graph.grid();
  const auto& fiber = graph.space().fiber();
  const int m = graph.fiber_dimension();
  const auto hinv = inverse_fiber_metric(grid, grid.coords(i)[0]);
  const auto& p = graph.gradient(i);
  const Deriv2 sj = graph.space().profile().eval(graph.psi(i));
  const double s = sj.f, ds = sj.df, dds = sj.d2f;
  const double q = hinv[0] * p[0] * p[0] + hinv[1] * p[1] * p[1];
  const double radial = -m * dds / s;
  const double fiberwise = ((m - 1) * fiber.sectional_curvature() - s * dds - (m - 1) * ds * ds) * q /
                           (s * s * s * s);
  return (radial + fiberwise) * s * s / (s * s + q);
}

double boundary_integral(const StarGraph& graph, const std::vector<SurfaceFrame>& frames,
                         const std::function<double(double)>& a) {
  return integrate_fiber(graph.grid(), [&](std::size_t i) {
    return frames[i].dS == 0.0 ? 0.0 : a(graph.psi(i)) * frames[i].dS / graph.grid().weight(i);
  });
}

double boundary_integral(const StarGraph& graph, const std::function<double(double)>& a) {
  return boundary_integral(graph, surface_frames(graph), a);
}

double surface_area(const StarGraph& graph) {
  return boundary_integral(graph, [](double) { return 1.0; });
}

double enclosed_volume(const StarGraph& graph, const std::optional<RadialFunction>& c) {
  const auto& space = graph.space();
  std::vector<double> v(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const double p = graph.psi(i);
    v[i] = p == space.domain_start() ? 0.0 : volume_profile(space, p, c);
  }
  return integrate_fiber(graph.grid(), v);
}

RevolutionSection revolution_section(const StarGraph& graph, double colatitude) {
  if (graph.fiber_dimension() != 2) throw UnsupportedError("revolution sections need an S^2 fiber");
  const Deriv2 mer = graph.meridian(colatitude);
  const Deriv2 sj = graph.space().profile().eval(mer.f);
  const double R = graph.space().fiber().radius();
  const double R2 = R * R;
  const double sn = std::sin(colatitude), cs = std::cos(colatitude);
  RevolutionSection sec;
  sec.psi = mer.f;
  sec.dpsi = mer.df;
  sec.s = sj.f;
  sec.ds = sj.df;
  const double s = sj.f, ds = sj.df;
  sec.E = mer.df * mer.df + s * s * R2;
  sec.G = s * s * R2 * sn * sn;
  const double W = std::sqrt(sec.E) / (s * R);
  const double b_mer = (s * ds * R2 + 2.0 * ds / s * mer.df * mer.df - mer.d2f) / W;
  const double b_par = (s * ds * R2 * sn * sn - sn * cs * mer.df) / W;
  sec.kappa_meridian = b_mer / sec.E;
  sec.kappa_parallel = b_par / sec.G;
  return sec;
}

double revolution_divergence_t1(const StarGraph& graph, double colatitude) {
  // T_1 is diagonal in the (meridian, parallel) frame with eigenvalues
  // tau_mer = kappa_parallel and tau_par = kappa_meridian.
  const RevolutionSection sec = revolution_section(graph, colatitude);
  const double h = std::min(1e-3, 0.25 * std::min(colatitude, std::numbers::pi - colatitude));
  auto tau = [&](double phi) { return revolution_section(graph, phi).kappa_parallel; };
  const double dtau = (-tau(colatitude + 2 * h) + 8 * tau(colatitude + h) - 8 * tau(colatitude - h) +
                       tau(colatitude - 2 * h)) /
                      (12 * h);
  const double log_g = sec.ds * sec.dpsi / sec.s + std::cos(colatitude) / std::sin(colatitude);
  const double div = dtau + log_g * (sec.kappa_parallel - sec.kappa_meridian);
  return sec.s * sec.dpsi / sec.E * div;
}

}  // namespace warpiso
