#pragma once

/// \file
/// Compact fibers N of a warped product [0, lambda) x N.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace warpiso {

struct CircleOfRadius {
  double radius = 1.0;
};

struct RoundSphereOfRadius {
  double radius = 1.0;
};

struct AbstractFiber {};

using FiberRealization = std::variant<CircleOfRadius, RoundSphereOfRadius, AbstractFiber>;

/// Dimension, volume and spectral/curvature data of a fiber.
///
/// Circles and 2-spheres are "realized": they carry coordinates and can host
/// hypersurface discretizations. Abstract fibers only feed radial formulas.
class FiberSpec {
 public:
  static FiberSpec circle(double radius);
  static FiberSpec sphere(double radius);  // round S^2
  /// Round S^m of radius R. Realized for m <= 2, abstract otherwise.
  static FiberSpec round_sphere(int m, double radius);
  static FiberSpec abstract(int m, double total_volume,
                            std::optional<double> lambda1 = std::nullopt,
                            std::optional<double> ricci_lower_K = std::nullopt);

  int dimension() const noexcept { return m_; }
  double total_volume() const noexcept { return volume_; }
  std::optional<double> lambda1() const noexcept { return lambda1_; }
  std::optional<double> ricci_lower_K() const noexcept { return ricci_K_; }
  const FiberRealization& realization() const noexcept { return realization_; }

  bool is_circle() const noexcept { return std::holds_alternative<CircleOfRadius>(realization_); }
  bool is_sphere() const noexcept { return std::holds_alternative<RoundSphereOfRadius>(realization_); }
  bool is_realized() const noexcept { return is_circle() || is_sphere(); }
  /// Radius of a realized fiber; throws UnsupportedError for abstract ones.
  double radius() const;
  /// Sectional curvature of a realized fiber (0 for circles, 1/R^2 for S^2).
  double sectional_curvature() const;

  std::string describe() const;

 private:
  FiberSpec(int m, double volume, std::optional<double> lambda1, std::optional<double> K,
            FiberRealization realization);

  int m_;
  double volume_;
  std::optional<double> lambda1_;
  std::optional<double> ricci_K_;
  FiberRealization realization_;
};

/// Parses "circle(R)", "sphere(R)", "round-sphere(m, R)" or
/// "abstract(m, volume[, lambda1[, K]])". PreconditionError on bad input.
FiberSpec make_fiber(std::string_view spec);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

/// Volume of the round sphere S^m of radius R.
double sphere_volume(int m, double radius);

}  // namespace warpiso
