#include "warpiso/spectral_stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "warpiso/errors.hpp"
#include "warpiso/graph_catalog.hpp"
#include "warpiso/profile_catalog.hpp"

namespace warpiso {

StabilityVerdict slice_stability(const WarpedSpace& space, double r0) {
  const auto lambda1 = space.fiber().lambda1();
  if (!lambda1) throw UnsupportedError("slice_stability: the fiber does not provide lambda1");
  const Deriv2 s = space.profile().eval(r0);
  if (!(r0 > space.domain_start())) throw RangeError("slice_stability: r0 must be interior");
  StabilityVerdict v;
  v.r0 = r0;
  v.curvature_term = space.fiber_dimension() * (s.df * s.df - s.f * s.d2f);
  v.lambda1 = *lambda1;
  v.marginal = std::abs(v.lambda1 - v.curvature_term) <= 1e-10;
  v.stable = v.lambda1 >= v.curvature_term || v.marginal;
  return v;
}

ProbeResult second_variation_probe(const WarpedSpace& space, double r0, int mode, const ProbeOptions& options) {
  const auto& fiber = space.fiber();
  if (!fiber.is_circle()) throw UnsupportedError("second_variation_probe: the fiber must be a circle");
  if (mode < 1) throw PreconditionError("second_variation_probe: mode must be >= 1");
  const double R = fiber.radius();
  const double h = options.h > 0.0 ? options.h : 0.01 * r0;
  const FiberGrid grid = fiber_grid(fiber, {options.resolution, 0});
  const double v0 = enclosed_volume(slice_graph(space, r0, grid));

  ProbeResult out;
  out.mode = mode;
  out.h = h;
  auto graph_for = [&](double t, double q) {
    AnalyticGraph g{"probe", [r0, t, q, mode](const Jet2& th, const Jet2&) {
                      return r0 + q + t * cos(static_cast<double>(mode) * th);
                    }};
    return build_star_graph(space, g, grid);
  };
  auto area_at = [&](double t) {
    auto defect = [&](double q) { return enclosed_volume(graph_for(t, q)) - v0; };
    double q0 = 0.0, q1 = -1e-6 * r0;
    double f0 = defect(q0), f1 = defect(q1);
    int iter = 0;
    while (std::abs(f1) > options.volume_tolerance * v0) {
      if (++iter > 60 || f1 == f0)
        throw NumericError("second_variation_probe: volume correction did not converge", q1,
                           std::abs(f1) / v0);
      const double q2 = q1 - f1 * (q1 - q0) / (f1 - f0);
      q0 = q1;
      f0 = f1;
      q1 = q2;
      f1 = defect(q1);
    }
    out.volume_shifts.push_back(q1);
    return surface_area(graph_for(t, q1));
  };
  const double a0 = surface_area(slice_graph(space, r0, grid));
  const double am = area_at(-h), ap = area_at(h);
  const double am2 = area_at(-0.5 * h), ap2 = area_at(0.5 * h);
  out.fd_h = (ap - 2.0 * a0 + am) / (h * h);
  out.fd_half = (ap2 - 2.0 * a0 + am2) / (0.25 * h * h);
  out.fd = (4.0 * out.fd_half - out.fd_h) / 3.0;

  const Deriv2 s = space.profile().eval(r0);
  out.eigenvalue = mode * mode / (R * R);
  const double defect = s.df * s.df - s.f * s.d2f;
  // int cos^2(mode theta) / s^2 dS over the slice, dS = s R dtheta.
  const double weight = std::numbers::pi * R / s.f;
  out.formula = (out.eigenvalue - space.fiber_dimension() * defect) * weight;
  return out;
}

ThresholdReport small_ball_threshold(const WarpedSpace& space, double r) {
  const auto& profile = space.profile();
  if (!(profile.domain_start() == 0.0 && profile.vanishing_at_zero() && profile.eval(0.0).f == 0.0))
    throw PreconditionError("small_ball_threshold: needs s(0) = 0");
  const Deriv2 s0 = profile.eval(0.0);
  if (!(s0.df > 0.0)) throw PreconditionError("small_ball_threshold: needs s'(0) > 0");
  ThresholdReport rep;
  rep.n = space.dimension();
  const double nd = rep.n;
  const double nbeta = nd * unit_ball_volume(rep.n);
  const double N = space.fiber_volume();
  rep.threshold = std::pow(nbeta / N, 1.0 / (nd - 1.0));
  rep.s_prime0 = s0.df;
  rep.violated = s0.df > rep.threshold * (1.0 + 1e-14);
  rep.r = r;
  rep.area_at_origin = std::pow(N, 1.0 / nd) * std::pow(nbeta, (nd - 1.0) / nd) *
                       std::pow(s0.df, (nd - 1.0) / nd) * std::pow(r, nd - 1.0);
  rep.area_geodesic = nbeta * std::pow(r, nd - 1.0);
  return rep;
}

AnnulusRecord power_counterexample(int m, double R1) {
  if (m < 1) throw PreconditionError("power_counterexample: m must be positive");
  if (!(R1 >= 1.0)) throw RangeError("power_counterexample: R1 must be >= 1");
  const WarpedSpace space(power_profile(-1.0 / m), FiberSpec::abstract(m, 1.0));
  AnnulusRecord rec;
  rec.m = m;
  rec.R1 = R1;
  rec.R2 = std::numbers::e * R1;
  rec.volume_ratio = integrate_radial([&](double r) { return area_coefficient(space, r); }, rec.R1, rec.R2, 1e-13);
  rec.volume_closed_form = std::log(rec.R2 / rec.R1);
  rec.area_ratio = area_coefficient(space, rec.R1) + area_coefficient(space, rec.R2);
  rec.area_closed_form = 1.0 / rec.R1 + 1.0 / rec.R2;
  return rec;
}

namespace {

// Ambient embedding of a graph in the Euclidean model with unit fiber.
struct Embedded {
  std::vector<Eigen::VectorXd> x;  // points
  std::vector<Eigen::MatrixXd> tangent;  // n x m, columns d x / d y^a
};

Embedded embed(const StarGraph& graph) {
  const int m = graph.fiber_dimension();
  const int n = m + 1;
  Embedded e;
  e.x.resize(graph.size());
  e.tangent.resize(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto y = graph.grid().coords(i);
    const double p = graph.psi(i);
    const auto& dp = graph.gradient(i);
    Eigen::VectorXd u(n);
    Eigen::MatrixXd du(n, m);
    if (m == 1) {
      u << std::cos(y[0]), std::sin(y[0]);
      du << -std::sin(y[0]), std::cos(y[0]);
    } else {
      const double sp = std::sin(y[0]), cp = std::cos(y[0]), sa = std::sin(y[1]), ca = std::cos(y[1]);
      u << sp * ca, sp * sa, cp;
      du << cp * ca, -sp * sa, cp * sa, sp * ca, -sp, 0.0;
    }
    e.x[i] = p * u;
    Eigen::MatrixXd t(n, m);
    for (int a = 0; a < m; ++a) t.col(a) = dp[a] * u + p * du.col(a);
    e.tangent[i] = t;
  }
  return e;
}

// Exponent vectors of monomials of total degree 1..max_degree in n variables.
std::vector<std::vector<int>> monomials(int n, int max_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n - 1) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (int d = left; d >= 0; --d) {
      cur[var] = d;
      rec(var + 1, left - d);
    }
  };
  for (int deg = 1; deg <= max_degree; ++deg) rec(0, deg);
  return out;
}

}  // namespace

EigenBoundRecord lambda1_bound_check(const StarGraph& graph, int k) {
  const WarpedSpace& space = graph.space();
  if (space.profile().label() != "euclidean" || space.fiber().radius() != 1.0)
    throw UnsupportedError("lambda1_bound_check: needs the Euclidean model with a unit fiber");
  const int m = graph.fiber_dimension();
  const int n = m + 1;
  if (k < 0 || k > m - 1) throw PreconditionError("lambda1_bound_check: k must be in 0..m-1");

  const auto frames = surface_frames(graph);
  const ShapeField shape = shape_field(graph);
  const Embedded emb = embed(graph);

  EigenBoundRecord rec;
  rec.kind = "lambda1";
  rec.shape = graph.label();
  rec.k = k;
  rec.volume = enclosed_volume(graph);
  CompensatedSum area_sum, hk_sum;
  std::vector<CompensatedSum> moment(n);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    area_sum.add(frames[i].dS);
    hk_sum.add(shape.node(i).H[k] * frames[i].dS);
    for (int d = 0; d < n; ++d) moment[d].add(emb.x[i](d) * frames[i].dS);
  }
  const double area = area_sum.value();
  rec.integral = hk_sum.value();
  Eigen::VectorXd centroid(n);
  for (int d = 0; d < n; ++d) centroid(d) = moment[d].value() / area;
  rec.centroid.assign(centroid.data(), centroid.data() + n);

  const double nd = n;
  rec.bound = (m - k) * binomial(m, k) * std::pow(unit_ball_volume(n), 1.0 / nd) * rec.integral /
              (nd * std::pow(rec.volume, (nd + 1.0) / nd));

  // Round sphere about the centroid?
  double dmin = kInfinity, dmax = 0.0;
  for (const auto& x : emb.x) {
    const double d = (x - centroid).norm();
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (m == 1 && k == 0) {
    rec.eigenvalue = std::pow(2.0 * std::numbers::pi / area, 2);
    rec.method = "exact: closed curve of length L, (2 pi / L)^2";
  } else if (dmax - dmin <= 1e-10 * dmax) {
    const double rho = 0.5 * (dmax + dmin);
    rec.eigenvalue = binomial(m - 1, k) * std::pow(rho, -k) * m / (rho * rho);
    rec.method = "exact: round sphere";
  } else {
    const auto basis = monomials(n, 3);
    const int nb = static_cast<int>(basis.size());
    // Node values and surface gradients (orthonormal frame) of each monomial.
    std::vector<Eigen::VectorXd> values(graph.size(), Eigen::VectorXd(nb));
    std::vector<Eigen::MatrixXd> grads(graph.size(), Eigen::MatrixXd(m, nb));
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(nb);
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const Eigen::VectorXd x = emb.x[i] - centroid;
      Eigen::MatrixXd g(m, m);
      const auto& met = frames[i].metric;
      if (m == 1) g << met[0];
      else g << met[0], met[1], met[1], met[2];
      const Eigen::MatrixXd L = g.llt().matrixL();
      for (int b = 0; b < nb; ++b) {
        double val = 1.0;
        Eigen::VectorXd amb = Eigen::VectorXd::Ones(n);
        for (int d = 0; d < n; ++d) {
          const int e = basis[b][d];
          val *= std::pow(x(d), e);
          for (int dd = 0; dd < n; ++dd) {
            if (dd == d) amb(dd) *= e == 0 ? 0.0 : e * std::pow(x(d), e - 1);
            else amb(dd) *= std::pow(x(d), e);
          }
        }
        values[i](b) = val;
        const Eigen::VectorXd coord = emb.tangent[i].transpose() * amb;
        grads[i].col(b) = L.triangularView<Eigen::Lower>().solve(coord);
      }
      mean += values[i] * frames[i].dS;
    }
    mean /= area;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nb, nb), K = Eigen::MatrixXd::Zero(nb, nb);
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const Eigen::VectorXd f = values[i] - mean;
      M += frames[i].dS * f * f.transpose();
      K += frames[i].dS * grads[i].transpose() * shape.node(i).newton[k] * grads[i];
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> meig(M);
    const double top = meig.eigenvalues().maxCoeff();
    std::vector<int> keep;
    for (int j = 0; j < nb; ++j)
      if (meig.eigenvalues()(j) > 1e-12 * top) keep.push_back(j);
    Eigen::MatrixXd P(nb, static_cast<int>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
      P.col(j) = meig.eigenvectors().col(keep[j]) / std::sqrt(meig.eigenvalues()(keep[j]));
    const Eigen::MatrixXd Kr = P.transpose() * K * P;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> keig(0.5 * (Kr + Kr.transpose()));
    rec.eigenvalue = keig.eigenvalues()(0);
    std::ostringstream os;
    os << "rayleigh-ritz upper estimate: " << keep.size()
       << " mean-free ambient polynomials of degree <= 3";
    rec.method = os.str();
  }
  rec.holds = rec.eigenvalue <= rec.bound + 1e-9 * (1.0 + rec.bound);
  rec.equality = std::abs(rec.eigenvalue - rec.bound) <= 1e-9 * rec.bound;
  return rec;
}

EigenBoundRecord steklov_bound_check(const BallDomain& ball) {
  if (!(ball.radius > 0.0) || ball.n < 2) throw PreconditionError("steklov: ball needs radius > 0 and n >= 2");
  EigenBoundRecord rec;
  rec.kind = "steklov";
  std::ostringstream os;
  os.precision(17);
  os << "ball(" << ball.radius << ", n=" << ball.n << ")";
  rec.shape = os.str();
  rec.volume = unit_ball_volume(ball.n) * std::pow(ball.radius, ball.n);
  rec.eigenvalue = 1.0 / ball.radius;
  rec.bound = std::pow(unit_ball_volume(ball.n) / rec.volume, 1.0 / ball.n);
  rec.method = "exact: linear harmonic functions, p1 = 1 / radius";
  rec.holds = rec.eigenvalue <= rec.bound + 1e-9 * (1.0 + rec.bound);
  rec.equality = std::abs(rec.eigenvalue - rec.bound) <= 1e-9 * rec.bound;
  return rec;
}

EigenBoundRecord steklov_bound_check(const AnnulusDomain& ann) {
  const double a = ann.a, b = ann.b;
  if (!(a > 0.0 && b > a)) throw PreconditionError("steklov: annulus needs 0 < a < b");
  EigenBoundRecord rec;
  rec.kind = "steklov";
  std::ostringstream os;
  os.precision(17);
  os << "annulus(" << a << ", " << b << ")";
  rec.shape = os.str();
  rec.volume = std::numbers::pi * (b * b - a * a);
  // Mode 0: f = A + B log r.
  double best = (1.0 / a + 1.0 / b) / std::log(b / a);
  int best_mode = 0;
  for (int k = 1; k <= ann.max_mode; ++k) {
    // f = (A r^k + B r^-k) cos k theta; outward derivative equals p f on both circles.
    const double kk = k;
    Eigen::Matrix2d D, F;
    D << kk * std::pow(b, kk - 1), -kk * std::pow(b, -kk - 1), -kk * std::pow(a, kk - 1), kk * std::pow(a, -kk - 1);
    F << std::pow(b, kk), std::pow(b, -kk), std::pow(a, kk), std::pow(a, -kk);
    // det(D - p F) = det F p^2 - (D00 F11 + D11 F00 - D01 F10 - D10 F01) p + det D.
    const double qa = F.determinant();
    const double qb = -(D(0, 0) * F(1, 1) + D(1, 1) * F(0, 0) - D(0, 1) * F(1, 0) - D(1, 0) * F(0, 1));
    const double qc = D.determinant();
    const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
    // Stable quadratic roots.
    const double t = -0.5 * (qb + std::copysign(disc, qb));
    for (double p : {t / qa, qc / t}) {
      if (p > 1e-12 && p < best) {
        best = p;
        best_mode = k;
      }
    }
  }
  rec.eigenvalue = best;
  rec.bound = std::pow(1.0 / (b * b - a * a), 0.5);
  std::ostringstream method;
  method << "separation of variables, modes 0.." << ann.max_mode << ", minimum at mode " << best_mode;
  rec.method = method.str();
  rec.holds = rec.eigenvalue <= rec.bound + 1e-9 * (1.0 + rec.bound);
  rec.equality = std::abs(rec.eigenvalue - rec.bound) <= 1e-9 * rec.bound;
  return rec;
}

}  // namespace warpiso
