#pragma once

/// \file
/// Deterministic quadrature: Gauss-Legendre rules, adaptive radial
/// integration and product grids on the realized fibers S^1(R) and S^2(R).

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "warpiso/fiber.hpp"

namespace warpiso {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

/// Neumaier-compensated running sum. Reduction order is the call order.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct RadialIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Adaptive composite 15-point Gauss-Legendre integration of f over
/// [r0, r1] by interval bisection. Stops once the summed panel error
/// estimate is at most tol * (1 + |result|); throws NumericError carrying
/// the best estimate if max_panels is reached first.
RadialIntegral integrate_radial_detailed(const std::function<double(double)>& f, double r0,
                                         double r1, double tol = 1e-10, int max_panels = 4096);

double integrate_radial(const std::function<double(double)>& f, double r0, double r1,
                        double tol = 1e-10);

/// Node counts of a fiber grid: {n} on S^1, {n_colatitude, n_azimuth} on S^2.
struct GridResolution {
  int primary = 0;
  int secondary = 0;

  std::string describe() const;
  bool operator==(const GridResolution&) const = default;
};

GridResolution default_resolution(const FiberSpec& fiber);

/// Product quadrature on a realized fiber.
///
/// S^1(R): uniform nodes theta_j = 2 pi j / n, equal weights 2 pi R / n.
/// S^2(R): Gauss-Legendre in cos(colatitude) times uniform azimuth, weights
/// scaled by R^2. Node (i, j) is stored at index i * n_azimuth + j.
/// Coordinates are the angle theta on S^1 and (colatitude, azimuth) on S^2;
/// weights include the fiber volume density.
class FiberGrid {
 public:
  const FiberSpec& fiber() const noexcept { return fiber_; }
  const GridResolution& resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return weights_.size(); }
  int dimension() const noexcept { return fiber_.dimension(); }

  std::array<double, 2> coords(std::size_t i) const noexcept { return coords_[i]; }
  double weight(std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// S^2 only: Gauss-Legendre rule in x = cos(colatitude), ascending in x.
  const GaussLegendreRule& colatitude_rule() const noexcept { return lat_rule_; }

  friend FiberGrid fiber_grid(const FiberSpec& fiber, GridResolution resolution);

 private:
  FiberGrid(FiberSpec fiber, GridResolution resolution) : fiber_(std::move(fiber)), resolution_(resolution) {}

  FiberSpec fiber_;
  GridResolution resolution_;
  std::vector<std::array<double, 2>> coords_;
  std::vector<double> weights_;
  GaussLegendreRule lat_rule_;
};

/// Throws UnsupportedError for abstract fibers and PreconditionError for
/// non-positive resolutions.
FiberGrid fiber_grid(const FiberSpec& fiber, GridResolution resolution);
FiberGrid fiber_grid(const FiberSpec& fiber);

/// Weighted sum of node values; NumericError naming the first non-finite node.
double integrate_fiber(const FiberGrid& grid, std::span<const double> values);
double integrate_fiber(const FiberGrid& grid, const std::function<double(std::size_t)>& field);

}  // namespace warpiso
