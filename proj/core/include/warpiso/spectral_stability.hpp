#pragma once

/// \file
/// Eigenvalue bounds on Euclidean hypersurfaces and domains, and the
/// constructions showing the isoperimetric hypotheses cannot be dropped:
/// unstable CMC slices, the small-ball threshold on s'(0) and the r^(-1/m)
/// annulus.

#include <string>
#include <vector>

#include "warpiso/hypersurface.hpp"
#include "warpiso/warp_model.hpp"

namespace warpiso {

struct StabilityVerdict {
  double r0 = 0.0;
  double curvature_term = 0.0;  // m (s'^2 - s s'') at r0
  double lambda1 = 0.0;  // of the fiber
  bool stable = false;  // lambda1 >= curvature_term
  bool marginal = false;  // |lambda1 - curvature_term| <= 1e-10
};

/// UnsupportedError when the fiber has no lambda1.
StabilityVerdict slice_stability(const WarpedSpace& space, double r0);

struct ProbeOptions {
  /// Stencil half-width; defaults to 0.01 r0.
  double h = 0.0;
  int resolution = 512;
  double volume_tolerance = 1e-12;
};

struct ProbeResult {
  int mode = 1;
  double h = 0.0;
  double fd_h = 0.0;  // second difference with step h
  double fd_half = 0.0;  // with step h / 2
  double fd = 0.0;  // Richardson combination (4 fd_half - fd_h) / 3
  double formula = 0.0;  // (lambda_mode - m defect) int u^2 / s(r0)^2 dS
  double eigenvalue = 0.0;  // lambda_mode of the fiber
  /// Constant shifts q(t) for t = -h, +h, -h/2, +h/2.
  std::vector<double> volume_shifts;
};

/// Perturbs the slice r0 by t cos(mode theta) on an S^1(R) fiber, restoring
/// the enclosed volume with a constant shift solved by the secant method.
ProbeResult second_variation_probe(const WarpedSpace& space, double r0, int mode = 1,
                                   const ProbeOptions& options = {});

struct ThresholdReport {
  int n = 0;
  double threshold = 0.0;  // (n beta_n / |N|)^{1/(n-1)}
  double s_prime0 = 0.0;
  bool violated = false;  // s'(0) > threshold
  double r = 0.0;
  /// Leading-order |dB_{r0}(0)| for a coordinate ball with the volume of a
  /// small geodesic ball of radius r, and n beta_n r^{n-1}.
  double area_at_origin = 0.0;
  double area_geodesic = 0.0;
};

/// PreconditionError unless s(0) = 0 and s'(0) > 0.
ThresholdReport small_ball_threshold(const WarpedSpace& space, double r = 0.01);

struct AnnulusRecord {
  int m = 1;
  double R1 = 0.0;
  double R2 = 0.0;
  double volume_ratio = 0.0;  // |Omega| / |N| by quadrature
  double volume_closed_form = 0.0;  // log(R2 / R1)
  double area_ratio = 0.0;  // |dOmega| / |N| from A(R1) + A(R2)
  double area_closed_form = 0.0;  // 1/R1 + 1/R2
};

/// s = r^{-1/m} on [1, inf), Omega = {R1 < r < e R1}. RangeError if R1 < 1.
AnnulusRecord power_counterexample(int m, double R1);

struct EigenBoundRecord {
  std::string kind;  // "lambda1" or "steklov"
  std::string shape;
  int k = 0;
  double eigenvalue = 0.0;
  double bound = 0.0;
  bool holds = false;
  bool equality = false;  // |eigenvalue - bound| <= 1e-9 bound
  std::string method;
  double volume = 0.0;
  double integral = 0.0;  // int H_k dS for lambda1
  std::vector<double> centroid;
};

/// lambda_1 of -div(T_k grad) on a graph in the Euclidean model with a unit
/// fiber. Exact for curves (k = 0) and round spheres; otherwise a
/// Rayleigh-Ritz upper estimate over ambient polynomials of degree <= 3.
EigenBoundRecord lambda1_bound_check(const StarGraph& graph, int k);

struct BallDomain {
  double radius = 1.0;
  int n = 2;
};
struct AnnulusDomain {
  double a = 0.5;
  double b = 1.0;
  int max_mode = 64;
};

EigenBoundRecord steklov_bound_check(const BallDomain& ball);
EigenBoundRecord steklov_bound_check(const AnnulusDomain& annulus);

}  // namespace warpiso
