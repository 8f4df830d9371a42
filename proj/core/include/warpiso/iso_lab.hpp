#pragma once

/// \file
/// Weighted isoperimetric verification: both sides of
/// int_{dOmega} a dS >= int_{dOmega#} a dS on star-shaped graphs, with the
/// hypotheses of each applicable theorem evaluated and reported rather than
/// enforced.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warpiso/hypersurface.hpp"
#include "warpiso/quadrature.hpp"
#include "warpiso/warp_model.hpp"

namespace warpiso {

struct Hypothesis {
  std::string name;
  bool passed = false;
  std::string evidence;
};

struct VerificationRecord {
  std::string kind;
  std::string model;
  std::string shape;
  std::string weight;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double sharp_radius = 0.0;
  double volume = 0.0;  // plain or weighted, whichever fixed R
  std::vector<Hypothesis> hypotheses;
  /// Theorems whose hypotheses all pass for this input.
  std::vector<std::string> theorems;
  bool equality_flag = false;
  /// "slice", "non-slice equality candidate" or empty.
  std::string equality_note;
  GridResolution resolution;
  double quadrature_tolerance = 1e-10;
  double equality_tolerance = 1e-9;

  bool all_hypotheses_pass() const;
  /// margin >= -tol (1 + |rhs|).
  bool inequality_holds(double tol = 1e-9) const;
};

/// R = v^{-1}(volume / |N|), or v~^{-1} when c is given. RangeError when
/// volume is not in (0, |N| v(domain_end)].
double omega_sharp_radius(const WarpedSpace& space, double volume,
                          const std::optional<RadialFunction>& c = std::nullopt);

struct VerifyOptions {
  int hypothesis_samples = 4096;
  /// Relative tolerance for margin ~ 0 (equality) and for psi variation.
  double equality_tolerance = 1e-9;
  double slice_tolerance = 1e-8;
  /// Ricci constant K for the GLW gate; defaults to the fiber's.
  std::optional<double> K;
  std::string weight_label = "a";
};

VerificationRecord verify_weighted_iso(const StarGraph& graph, const WeightPair& weights,
                                       const VerifyOptions& options = {});

/// One record per catalog weight of the model ("euclidean", "hyperbolic",
/// "hemisphere"); for "euclidean" a further record compares against the
/// explicit volume form n beta_n^{-(k-1)/n} Vol^{(n-1+k)/n}.
std::vector<VerificationRecord> model_weight_catalog(std::string_view model, const StarGraph& graph, int k,
                                                 const VerifyOptions& options = {});

struct JensenResult {
  double gap = 0.0;
  double mean_psi = 0.0;  // int psi(rho) dmu
  double psi_at_mean_volume = 0.0;  // psi(V^{-1}(int V(rho) dmu))
  bool convexity_holds = false;  // psi o V^{-1} convex on the range of rho
};

/// Jensen gap for psi = b A and the normalized fiber measure.
JensenResult jensen_gap(const WarpedSpace& space, const WeightPair& weights, std::span<const double> rho,
                        const FiberGrid& grid, int hypothesis_samples = 4096);

}  // namespace warpiso
