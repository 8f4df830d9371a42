#include "warpiso/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "warpiso/errors.hpp"

namespace warpiso {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

const GaussLegendreRule& rule15() {
  static const GaussLegendreRule rule = gauss_legendre(15);
  return rule;
}

struct PanelEstimate {
  double value;
  double abs_value;
};

PanelEstimate gl15(const std::function<double(double)>& f, double a, double b) {
  const auto& rule = rule15();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  CompensatedSum sum, abs_sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = f(mid + half * rule.nodes[i]);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate_radial: non-finite integrand at r = " << (mid + half * rule.nodes[i]);
      throw NumericError(os.str());
    }
    sum.add(rule.weights[i] * y);
    abs_sum.add(rule.weights[i] * std::abs(y));
  }
  return {half * sum.value(), std::abs(half) * abs_sum.value()};
}

struct Panel {
  double a, b;
  double coarse;  // single-panel rule on [a, b]
  double fine;    // rule on both halves
  double left, right;
  double abs_value;
  double error;
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double coarse) {
  const double mid = 0.5 * (a + b);
  const auto l = gl15(f, a, mid);
  const auto r = gl15(f, mid, b);
  Panel p{a, b, coarse, l.value + r.value, l.value, r.value, l.abs_value + r.abs_value, 0.0};
  p.error = std::abs(p.fine - p.coarse);
  return p;
}

}  // namespace

RadialIntegral integrate_radial_detailed(const std::function<double(double)>& f, double r0,
                                         double r1, double tol, int max_panels) {
  if (!std::isfinite(r0) || !std::isfinite(r1))
    throw RangeError("integrate_radial: interval endpoints must be finite");
  if (r0 == r1) return {0.0, 0.0, 0};
  if (r1 < r0) {
    auto flipped = integrate_radial_detailed(f, r1, r0, tol, max_panels);
    flipped.value = -flipped.value;
    return flipped;
  }

  std::vector<Panel> panels;
  panels.push_back(make_panel(f, r0, r1, gl15(f, r0, r1).value));
  constexpr double eps = std::numeric_limits<double>::epsilon();

  while (true) {
    CompensatedSum value_sum, error_sum, abs_sum;
    for (const auto& p : panels) {
      value_sum.add(p.fine);
      error_sum.add(p.error);
      abs_sum.add(p.abs_value);
    }
    const double value = value_sum.value(), error = error_sum.value();
    const double target = std::max(tol * (1.0 + std::abs(value)), 64.0 * eps * abs_sum.value());
    if (error <= target) return {value, error, static_cast<int>(panels.size())};
    if (static_cast<int>(panels.size()) >= max_panels) {
      std::ostringstream os;
      os.precision(6);
      os << "integrate_radial: subdivision limit (" << max_panels
         << " panels) reached; achieved error " << error << " vs target " << target;
      throw NumericError(os.str(), value, error);
    }
    const auto worst_it = std::max_element(
        panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const Panel worst = *worst_it;
    const double mid = 0.5 * (worst.a + worst.b);
    *worst_it = make_panel(f, worst.a, mid, worst.left);
    panels.insert(worst_it + 1, make_panel(f, mid, worst.b, worst.right));
  }
}

double integrate_radial(const std::function<double(double)>& f, double r0, double r1,
                        double tol) {
  return integrate_radial_detailed(f, r0, r1, tol).value;
}

std::string GridResolution::describe() const {
  std::ostringstream os;
  os << primary;
  if (secondary > 0) os << "x" << secondary;
  return os.str();
}

GridResolution default_resolution(const FiberSpec& fiber) {
  if (fiber.is_circle()) return {512, 0};
  if (fiber.is_sphere()) return {64, 128};
  throw UnsupportedError("default_resolution: abstract fibers have no grid");
}

FiberGrid fiber_grid(const FiberSpec& fiber, GridResolution resolution) {
  if (!fiber.is_realized())
    throw UnsupportedError("fiber_grid: abstract fibers admit only radial computations");
  FiberGrid grid(fiber, resolution);
  const double R = fiber.radius();
  const double two_pi = 2.0 * std::numbers::pi;
  if (fiber.is_circle()) {
    const int n = resolution.primary;
    if (n < 1) throw PreconditionError("fiber_grid: S^1 resolution must be positive");
    grid.resolution_.secondary = 0;
    grid.coords_.resize(n);
    grid.weights_.assign(n, two_pi * R / n);
    for (int j = 0; j < n; ++j) grid.coords_[j] = {two_pi * j / n, 0.0};
    return grid;
  }
  const int n_lat = resolution.primary, n_lon = resolution.secondary;
  if (n_lat < 1 || n_lon < 1)
    throw PreconditionError("fiber_grid: S^2 resolution needs positive colatitude and azimuth counts");
  grid.lat_rule_ = gauss_legendre(n_lat);
  grid.coords_.reserve(static_cast<std::size_t>(n_lat) * n_lon);
  grid.weights_.reserve(static_cast<std::size_t>(n_lat) * n_lon);
  for (int i = 0; i < n_lat; ++i) {
    const double colat = std::acos(grid.lat_rule_.nodes[i]);
    const double w = grid.lat_rule_.weights[i] * (two_pi / n_lon) * R * R;
    for (int j = 0; j < n_lon; ++j) {
      grid.coords_.push_back({colat, two_pi * j / n_lon});
      grid.weights_.push_back(w);
    }
  }
  return grid;
}

FiberGrid fiber_grid(const FiberSpec& fiber) { return fiber_grid(fiber, default_resolution(fiber)); }

double integrate_fiber(const FiberGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size())
    throw PreconditionError("integrate_fiber: field size does not match the grid");
  return integrate_fiber(grid, [&values](std::size_t i) { return values[i]; });
}

double integrate_fiber(const FiberGrid& grid, const std::function<double(std::size_t)>& field) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = field(i);
    if (!std::isfinite(y)) {
      const auto c = grid.coords(i);
      std::ostringstream os;
      os.precision(17);
      os << "integrate_fiber: non-finite field value at node " << i << " (" << c[0];
      if (grid.dimension() == 2) os << ", " << c[1];
      os << ")";
      throw NumericError(os.str());
    }
    sum.add(grid.weight(i) * y);
  }
  return sum.value();
}

}  // namespace warpiso
