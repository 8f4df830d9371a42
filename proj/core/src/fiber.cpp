#include "warpiso/fiber.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "warpiso/errors.hpp"

namespace warpiso {

FiberSpec::FiberSpec(int m, double volume, std::optional<double> lambda1,
                     std::optional<double> K, FiberRealization realization)
    : m_(m), volume_(volume), lambda1_(lambda1), ricci_K_(K),
      realization_(std::move(realization)) {
  if (m_ < 1) throw ConstructionError("fiber dimension must be positive");
  if (!(volume_ > 0.0) || !std::isfinite(volume_))
    throw ConstructionError("fiber volume must be positive and finite");
  if (lambda1_ && *lambda1_ < 0.0) throw ConstructionError("fiber lambda1 must be nonnegative");
}

FiberSpec FiberSpec::circle(double radius) {
  if (!(radius > 0.0)) throw ConstructionError("circle radius must be positive");
  return FiberSpec(1, 2.0 * std::numbers::pi * radius, 1.0 / (radius * radius), std::nullopt,
                   CircleOfRadius{radius});
}

FiberSpec FiberSpec::sphere(double radius) {
  if (!(radius > 0.0)) throw ConstructionError("sphere radius must be positive");
  const double K = 1.0 / (radius * radius);
  return FiberSpec(2, 4.0 * std::numbers::pi * radius * radius, 2.0 * K, K,
                   RoundSphereOfRadius{radius});
}

FiberSpec FiberSpec::round_sphere(int m, double radius) {
  if (m == 1) return circle(radius);
  if (m == 2) return sphere(radius);
  if (m < 1) throw ConstructionError("sphere dimension must be positive");
  if (!(radius > 0.0)) throw ConstructionError("sphere radius must be positive");
  const double K = 1.0 / (radius * radius);
  return FiberSpec(m, sphere_volume(m, radius), m * K, K, AbstractFiber{});
}

FiberSpec FiberSpec::abstract(int m, double total_volume, std::optional<double> lambda1,
                              std::optional<double> ricci_lower_K) {
  return FiberSpec(m, total_volume, lambda1, ricci_lower_K, AbstractFiber{});
}

double FiberSpec::radius() const {
  if (const auto* c = std::get_if<CircleOfRadius>(&realization_)) return c->radius;
  if (const auto* s = std::get_if<RoundSphereOfRadius>(&realization_)) return s->radius;
  throw UnsupportedError("abstract fiber has no radius");
}

double FiberSpec::sectional_curvature() const {
  if (is_circle()) return 0.0;
  const double R = radius();
  return 1.0 / (R * R);
}

std::string FiberSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_circle()) {
    os << "S1(" << radius() << ")";
  } else if (is_sphere()) {
    os << "S2(" << radius() << ")";
  } else {
    os << "abstract(m=" << m_ << ", |N|=" << volume_ << ")";
  }
  return os.str();
}

FiberSpec make_fiber(std::string_view spec_in) {
  std::string spec;
  for (char ch : spec_in)
    if (ch != ' ' && ch != '\t') spec.push_back(ch);
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw PreconditionError("fiber spec '" + spec + "' must look like name(args)");
  const std::string name = spec.substr(0, open);
  std::vector<double> args;
  std::istringstream list(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(list, item, ',')) {
    if (const auto eq = item.find('='); eq != std::string::npos) item = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw PreconditionError("fiber spec '" + spec + "': cannot parse '" + item + "'");
    args.push_back(v);
  }
  auto dimension = [&](double v) {
    if (v != std::floor(v) || v < 1) throw PreconditionError("fiber spec '" + spec + "': bad dimension");
    return static_cast<int>(v);
  };
  if (name == "circle" && args.size() == 1) return FiberSpec::circle(args[0]);
  if (name == "sphere" && args.size() == 1) return FiberSpec::sphere(args[0]);
  if (name == "round-sphere" && args.size() == 2) return FiberSpec::round_sphere(dimension(args[0]), args[1]);
  if (name == "abstract" && args.size() >= 2 && args.size() <= 4) {
    std::optional<double> lambda1, K;
    if (args.size() >= 3) lambda1 = args[2];
    if (args.size() == 4) K = args[3];
    return FiberSpec::abstract(dimension(args[0]), args[1], lambda1, K);
  }
  throw PreconditionError("unknown fiber spec '" + spec + "'");
}

double unit_ball_volume(int n) {
  if (n < 1) throw PreconditionError("unit_ball_volume: dimension must be positive");
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double sphere_volume(int m, double radius) {
  // |S^m(R)| = (m + 1) * beta_{m+1} * R^m
  return (m + 1) * unit_ball_volume(m + 1) * std::pow(radius, m);
}

}  // namespace warpiso
