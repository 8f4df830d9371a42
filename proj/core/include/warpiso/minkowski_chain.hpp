#pragma once

/// \file
/// Weighted Hsiung-Minkowski identities, Newton-tensor positivity and the
/// chain of mean-curvature integrals
///   base <= int s^l dS <= int H_1 s^{l+1} c^{-1} dS <= ... <= int H_k s^{l+k} c^{-k} dS
/// with c = s' and base = |N|^{-(l-1)/n} (n int_Omega c dv)^{(n+l-1)/n}.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "warpiso/hypersurface.hpp"
#include "warpiso/iso_lab.hpp"

namespace warpiso {

struct HMResult {
  int k = 1;
  /// int eta c H_{k-1}, int eta H_k <X,nu>, int eta (div T_{k-1})(X^T),
  /// int <T_{k-1} X^T, grad eta>.
  std::array<double, 4> terms{};
  double raw = 0.0;
  double denominator = 0.0;
  double residual = 0.0;  // raw / denominator
};

/// eta is a radial function eta(r) on the surface. k = 1 on any graph;
/// k >= 2 needs a surface of revolution (UnsupportedError otherwise).
HMResult hm_residual(const StarGraph& graph, const RadialFunction& eta, int k);
HMResult hm_residual(const StarGraph& graph, const std::vector<SurfaceFrame>& frames,
                     const ShapeField& shape, const RadialFunction& eta, int k);

struct PositivityReport {
  int p = 0;
  std::vector<double> min_H;  // j = 1..p
  std::vector<std::size_t> min_H_node;
  std::vector<double> min_newton_eigenvalue;  // j = 0..p-1
  std::vector<std::size_t> min_newton_node;
  bool positive = false;
  std::string location;  // first failing node, if any
  std::string certification;
};

PositivityReport cone_positivity(const StarGraph& graph, const ShapeField& shape, int p);
PositivityReport cone_positivity(const StarGraph& graph, int p);

struct ChainReport {
  int k = 0;
  int l = 1;
  double base = 0.0;
  double weighted_volume = 0.0;  // int_Omega c dv
  std::vector<double> entries;  // j = 0..k
  std::vector<double> margins;  // entries[0] - base, entries[j] - entries[j-1]
  std::optional<PositivityReport> positivity;
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_hold() const;
  /// margins >= -tol (1 + |base|).
  bool nondecreasing(double tol = 1e-9) const;
};

ChainReport chain_margins(const StarGraph& graph, int k, int l, std::optional<double> K = std::nullopt);

/// Closed-form corollaries in "euclidean", "hyperbolic" and "hemisphere":
/// lhs = int H_k s^{l+k} c^{-k} dS, rhs = n beta_n^{-(l-1)/n} (int_Omega c dv)^{(n+l-1)/n}.
VerificationRecord corollary_run(std::string_view model, const StarGraph& graph, int k, int l);

}  // namespace warpiso
