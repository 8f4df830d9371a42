#pragma once

/// \file
/// Warping profiles, warped-product spaces and their radial quantities:
/// the area coefficient A(r), the (weighted) volume profiles v(r), v~(r) and
/// their inverses, and the convexity/monotonicity margins that gate the
/// isoperimetric theorems.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "warpiso/fiber.hpp"
#include "warpiso/jet.hpp"

namespace warpiso {

/// r -> (f(r), f'(r), f''(r)).
using RadialFunction = std::function<Deriv2(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A warping function s on [domain_start, domain_end) with two derivatives.
///
/// The classical setting has domain_start = 0; the power-law counterexample
/// lives on [1, inf). domain_end may be infinite.
class WarpProfile {
 public:
  WarpProfile(std::string label, double domain_start, double domain_end, RadialFunction eval,
              bool vanishing_at_zero);

  const std::string& label() const noexcept { return label_; }
  double domain_start() const noexcept { return start_; }
  double domain_end() const noexcept { return end_; }
  bool vanishing_at_zero() const noexcept { return vanishing_at_zero_; }
  bool finite_domain() const noexcept { return end_ < kInfinity; }

  /// Throws RangeError unless domain_start <= r < domain_end.
  Deriv2 eval(double r) const;
  /// Like eval but also accepts r == domain_end for finite domains (used for
  /// limits of radial integrals).
  Deriv2 eval_closed(double r) const;

 private:
  std::string label_;
  double start_;
  double end_;
  RadialFunction eval_;
  bool vanishing_at_zero_;
};

/// Free-function form of WarpProfile::eval.
Deriv2 eval_profile(const WarpProfile& profile, double r);

/// (s_q, N_q) pairs sharing one radial domain. Single-fiber spaces host
/// hypersurfaces; multiply warped spaces support radial quantities only.
class WarpedSpace {
 public:
  WarpedSpace(WarpProfile profile, FiberSpec fiber);
  explicit WarpedSpace(std::vector<std::pair<WarpProfile, FiberSpec>> fibers);

  const std::vector<std::pair<WarpProfile, FiberSpec>>& fibers() const noexcept { return fibers_; }
  bool single_fiber() const noexcept { return fibers_.size() == 1; }
  /// The profile of a single-fiber space; UnsupportedError otherwise.
  const WarpProfile& profile() const;
  const FiberSpec& fiber() const;

  /// m = sum of fiber dimensions; the space has dimension n = m + 1.
  int fiber_dimension() const noexcept { return m_; }
  int dimension() const noexcept { return m_ + 1; }
  /// |N|, the product of the fiber volumes.
  double fiber_volume() const noexcept { return fiber_volume_; }
  double domain_start() const noexcept { return start_; }
  double domain_end() const noexcept { return end_; }
  std::string label() const;

  /// A(r) with its first two derivatives.
  Deriv2 area_jet(double r) const;

 private:
  std::vector<std::pair<WarpProfile, FiberSpec>> fibers_;
  int m_ = 0;
  double fiber_volume_ = 1.0;
  double start_ = 0.0;
  double end_ = kInfinity;
};

/// Boundary weight a, its offset b = a - a(origin), and volume weight c.
class WeightPair {
 public:
  struct ContinuityCheck {
    double r_min;
    double r_max;
    int samples;
    double modulus;  // largest admissible |a(r_{i+1}) - a(r_i)|
  };

  explicit WeightPair(RadialFunction a, std::optional<RadialFunction> c = std::nullopt,
                      double origin = 0.0,
                      std::optional<ContinuityCheck> continuity = std::nullopt,
                      std::string label = "a");

  Deriv2 a(double r) const { return a_(r); }
  /// b(r) = a(r) - a(origin); exactly zero at the origin.
  Deriv2 b(double r) const;
  /// c(r); identically 1 when no volume weight was supplied.
  Deriv2 c(double r) const;
  bool has_volume_weight() const noexcept { return c_.has_value(); }
  const std::optional<RadialFunction>& volume_weight() const noexcept { return c_; }
  double origin() const noexcept { return origin_; }
  const std::string& label() const noexcept { return label_; }

 private:
  RadialFunction a_;
  std::optional<RadialFunction> c_;
  double origin_;
  double a_origin_;
  std::string label_;
};

/// A(r) = prod_q s_q(r)^{m_q}.
double area_coefficient(const WarpedSpace& space, double r);

/// v(r) = int_start^r A, or v~(r) = int_start^r c A when c is given.
double volume_profile(const WarpedSpace& space, double r,
                      const std::optional<RadialFunction>& c = std::nullopt);

/// V(r) = |N| v(r) (or |N| v~(r)).
double total_volume_profile(const WarpedSpace& space, double r,
                            const std::optional<RadialFunction>& c = std::nullopt);

/// r with v(r) = u (or v~(r) = u), to |v(r) - u| <= 1e-12 (1 + u).
/// On infinite domains the bracket is grown geometrically from the start.
double invert_volume(const WarpedSpace& space, double u,
                     const std::optional<RadialFunction>& c = std::nullopt);

/// s s'' - s'^2 for a single-fiber space. Its sign is the sign of
/// d^2/du^2 A(v^{-1}(u)).
double log_convexity_margin(const WarpedSpace& space, double r);

/// d^2/du^2 f(v~^{-1}(u)) scaled by (cA)^3 > 0, i.e. f''(cA) - f'(cA)'.
/// Its sign decides convexity of f composed with the inverse volume profile.
double composite_convexity_margin(const WarpedSpace& space, const RadialFunction& f, double r,
                                  const std::optional<RadialFunction>& c = std::nullopt);

/// Chord minus value of A o v^{-1} on the stencil u0 < u1 < u2; nonnegative
/// for convex A o v^{-1}. Needs no derivatives of s.
double secant_convexity_gap(const WarpedSpace& space, double u0, double u1, double u2,
                            const std::optional<RadialFunction>& c = std::nullopt);

/// s^2 b'' + m s s' b' - m b (s'^2 - s s''), single fiber. Nonnegative over
/// the domain iff b o v^{-1} * A o v^{-1} is convex.
double weighted_convexity_margin(const WarpedSpace& space, const WeightPair& weights, double r);

enum class Regime { SlicesIsoperimetric, GLWRegime, SlicesNotIsoperimetric, Indeterminate };

std::string to_string(Regime regime);

struct RegimeReport {
  Regime regime = Regime::Indeterminate;
  std::string explanation;
  bool s_monotone = false;
  bool s_vanishes_at_zero = false;
  /// Extremes of s'^2 - s s'' over the samples.
  double min_defect = 0.0;
  double max_defect = 0.0;
  std::optional<double> K;
  int samples = 0;
  double r_min = 0.0;
  double r_max = 0.0;
};

/// Samples s'^2 - s s'' on the open working interval and classifies the
/// space. K defaults to the fiber's Ricci constant when it has one. A finite
/// working radius is required when the domain is infinite.
RegimeReport classify_regime(const WarpedSpace& space, std::optional<double> K = std::nullopt,
                             std::optional<double> working_radius = std::nullopt,
                             int samples = 4096);

}  // namespace warpiso
