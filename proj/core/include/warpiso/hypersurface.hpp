#pragma once

/// \file
/// Star-shaped hypersurfaces r = psi(y) over a realized fiber: construction,
/// first-order frame data, the second fundamental form with H_k and Newton
/// tensors, and boundary/volume integrals.
///
/// Fiber coordinates y are the angle theta on S^1(R) and (colatitude,
/// azimuth) on S^2(R). Normals point outward (<nu, d/dr> > 0).

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "warpiso/jet.hpp"
#include "warpiso/quadrature.hpp"
#include "warpiso/warp_model.hpp"

namespace warpiso {

/// psi as a function of the fiber coordinates, evaluated on jets to get
/// exact first and second coordinate derivatives. On S^1 the second
/// argument is present but must be ignored.
using GraphFunction = std::function<Jet2(const Jet2& u, const Jet2& v)>;

struct AnalyticGraph {
  std::string label;
  GraphFunction psi;
  /// S^2 only: psi depends on colatitude alone (surface of revolution).
  bool zonal = false;
  /// Permit psi = 0 at nodes when s(0) = 0 (a curve through the origin, such
  /// as a circle whose boundary passes through the center of the model).
  /// Such nodes carry zero area and volume and have no curvature.
  bool allow_origin_contact = false;
};

class StarGraph {
 public:
  const WarpedSpace& space() const noexcept { return space_; }
  const FiberGrid& grid() const noexcept { return grid_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return psi_.size(); }
  int fiber_dimension() const noexcept { return grid_.dimension(); }

  std::span<const double> psi() const noexcept { return psi_; }
  double psi(std::size_t i) const noexcept { return psi_[i]; }
  /// Coordinate gradient (psi_u, psi_v); psi_v = 0 on S^1.
  const std::array<double, 2>& gradient(std::size_t i) const noexcept { return grad_[i]; }
  /// Coordinate Hessian (psi_uu, psi_uv, psi_vv).
  const std::array<double, 3>& hessian(std::size_t i) const noexcept { return hess_[i]; }

  bool analytic() const noexcept { return analytic_; }
  bool is_revolution() const noexcept { return meridian_ != nullptr; }
  /// (psi, dpsi/dcolat, d2psi/dcolat2) at any colatitude in (0, pi);
  /// UnsupportedError unless is_revolution().
  Deriv2 meridian(double colatitude) const;

  double min_psi() const noexcept { return min_psi_; }
  double max_psi() const noexcept { return max_psi_; }
  /// (max psi - min psi) / max psi.
  double relative_variation() const noexcept;
  /// Nodes with psi = 0 (only possible with allow_origin_contact).
  std::size_t origin_contacts() const noexcept { return origin_contacts_; }

 private:
  friend StarGraph build_star_graph(const WarpedSpace&, const AnalyticGraph&, const FiberGrid&);
  friend StarGraph build_star_graph(const WarpedSpace&, std::string, std::vector<double>,
                                    const FiberGrid&);
  StarGraph(WarpedSpace space, FiberGrid grid, std::string label)
      : space_(std::move(space)), grid_(std::move(grid)), label_(std::move(label)) {}
  void validate(bool allow_origin_contact);

  WarpedSpace space_;
  FiberGrid grid_;
  std::string label_;
  std::vector<double> psi_;
  std::vector<std::array<double, 2>> grad_;
  std::vector<std::array<double, 3>> hess_;
  bool analytic_ = false;
  std::shared_ptr<const std::function<Deriv2(double)>> meridian_;
  double min_psi_ = 0.0;
  double max_psi_ = 0.0;
  std::size_t origin_contacts_ = 0;
};

/// Analytic path: derivatives from jets. Throws ConstructionError naming
/// the first node where psi is not in (0, domain_end), UnsupportedError for
/// multi-fiber spaces or abstract fibers.
StarGraph build_star_graph(const WarpedSpace& space, const AnalyticGraph& graph,
                           const FiberGrid& grid);

/// Sampled path: psi given at the grid nodes, derivatives by spectral
/// differentiation. Surfaces of revolution are detected from the samples.
StarGraph build_star_graph(const WarpedSpace& space, std::string label, std::vector<double> samples,
                           const FiberGrid& grid);

/// Samples a plain function of the fiber coordinates, then the sampled path.
StarGraph build_star_graph(const WarpedSpace& space, std::string label,
                           const std::function<double(std::array<double, 2>)>& psi,
                           const FiberGrid& grid);

/// The slice psi = r0.
StarGraph slice_graph(const WarpedSpace& space, double r0, const FiberGrid& grid);

struct SurfaceFrame {
  double dS = 0.0;  // area element times quadrature weight
  double support = 0.0;  // <X, nu> with X = s(r) d/dr
  /// Coordinate components of X^T in the basis d/dy^a + psi_a d/dr.
  std::array<double, 2> x_tangent{};
  double x_tangent_norm2 = 0.0;
  /// Induced metric (g_uu, g_uv, g_vv).
  std::array<double, 3> metric{};
  /// W = sqrt(1 + s^-2 |grad_N psi|^2); |grad_Sigma r|^2 = 1 - 1/W^2.
  double W = 1.0;
  double grad_r_norm2 = 0.0;
  bool degenerate = false;  // origin contact
};

std::vector<SurfaceFrame> surface_frames(const StarGraph& graph);

/// Per-node curvature data in an orthonormal tangent frame.
struct NodeShape {
  Eigen::VectorXd principal;  // ascending
  std::vector<double> H;  // H_0..H_m
  std::vector<Eigen::MatrixXd> newton;  // T_0..T_{m-1}
  Eigen::MatrixXd B;  // second fundamental form
  Eigen::VectorXd grad_r;  // grad_Sigma r
};

class ShapeField {
 public:
  int fiber_dimension() const noexcept { return m_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const NodeShape& node(std::size_t i) const noexcept { return nodes_[i]; }
  double H(std::size_t i, int k) const { return nodes_.at(i).H.at(k); }
  /// Largest |tr T_k - (m-k) C(m,k) H_k| and |<T_k, B> - (k+1) C(m,k+1) H_{k+1}|
  /// over nodes and k, relative to 1 + |H|.
  double newton_identity_residual() const;

 private:
  friend ShapeField shape_field(const StarGraph& graph);
  int m_ = 0;
  std::vector<NodeShape> nodes_;
};

/// Throws NumericError at a node with degenerate induced metric (including
/// origin contacts).
ShapeField shape_field(const StarGraph& graph);

/// Ric(nu, nu) of the ambient warped product at node i.
double ambient_normal_ricci(const StarGraph& graph, std::size_t i);

double binomial(int n, int k);

/// int_Sigma a(r) dS.
double boundary_integral(const StarGraph& graph, const std::function<double(double)>& a);
double boundary_integral(const StarGraph& graph, const std::vector<SurfaceFrame>& frames,
                         const std::function<double(double)>& a);
double surface_area(const StarGraph& graph);

/// int_N v(psi) dvol_N, or int_N v~(psi) when c is supplied.
double enclosed_volume(const StarGraph& graph, const std::optional<RadialFunction>& c = std::nullopt);

/// Meridian geometry of a surface of revolution over S^2(R) at one colatitude.
struct RevolutionSection {
  double psi = 0.0;
  double dpsi = 0.0;
  double s = 0.0;
  double ds = 0.0;  // s'(psi)
  double E = 0.0;  // g(d_colat, d_colat)
  double G = 0.0;  // g(d_azim, d_azim)
  double kappa_meridian = 0.0;
  double kappa_parallel = 0.0;
};

RevolutionSection revolution_section(const StarGraph& graph, double colatitude);

/// (div_Sigma T_1)(X^T) at a colatitude of a surface of revolution (m = 2).
double revolution_divergence_t1(const StarGraph& graph, double colatitude);

}  // namespace warpiso
