#include "warpiso/graph_catalog.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "warpiso/errors.hpp"

namespace warpiso {

namespace {

std::string format_label(std::string_view name, std::initializer_list<double> args) {
  std::ostringstream os;
  os.precision(17);
  os << name << "(";
  bool first = true;
  for (double a : args) {
    if (!first) os << ",";
    os << a;
    first = false;
  }
  os << ")";
  return os.str();
}

// Unit direction (x, y, z) of (colatitude, azimuth).
std::array<Jet2, 3> direction(const Jet2& colat, const Jet2& azim) {
  const Jet2 sn = sin(colat);
  return {sn * cos(azim), sn * sin(azim), cos(colat)};
}

double uniform(std::mt19937_64& rng, double amp) {
  return std::uniform_real_distribution<double>(-amp, amp)(rng);
}

}  // namespace

AnalyticGraph constant_graph(double r0) {
  return {format_label("slice", {r0}), [r0](const Jet2&, const Jet2&) { return Jet2(r0); }, true};
}

AnalyticGraph ellipse_graph(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw PreconditionError("ellipse: semi-axes must be positive");
  return {format_label("ellipse", {a, b}), [a, b](const Jet2& t, const Jet2&) {
            const Jet2 c = cos(t), s = sin(t);
            return a * b / sqrt(b * b * c * c + a * a * s * s);
          }};
}

AnalyticGraph offset_circle_graph(double d, double rho) {
  if (!(rho > 0.0) || d < 0.0 || d > rho)
    throw PreconditionError("offset-circle: need 0 <= d <= rho (star-shaped about the origin)");
  AnalyticGraph g{format_label("offset-circle", {d, rho}), {}};
  if (d == rho) {
    g.psi = [rho](const Jet2& t, const Jet2&) { return positive_part(2.0 * rho * cos(t)); };
    g.allow_origin_contact = true;
  } else {
    g.psi = [d, rho](const Jet2& t, const Jet2&) {
      const Jet2 s = sin(t);
      return d * cos(t) + sqrt(rho * rho - d * d * s * s);
    };
  }
  return g;
}

AnalyticGraph wave_graph(double r0, double amp, int freq) {
  return {format_label("wave", {r0, amp, static_cast<double>(freq)}),
          [r0, amp, freq](const Jet2& t, const Jet2&) { return r0 + amp * cos(static_cast<double>(freq) * t); }};
}

AnalyticGraph ellipsoid_graph(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw PreconditionError("ellipsoid: semi-axes must be positive");
  return {format_label("ellipsoid", {a, b, c}), [a, b, c](const Jet2& colat, const Jet2& azim) {
            const auto x = direction(colat, azim);
            return 1.0 / sqrt(x[0] * x[0] / (a * a) + x[1] * x[1] / (b * b) + x[2] * x[2] / (c * c));
          }, a == b};
}

AnalyticGraph spheroid_graph(double a, double c) {
  if (!(a > 0.0 && c > 0.0)) throw PreconditionError("spheroid: semi-axes must be positive");
  return {format_label("spheroid", {a, c}), [a, c](const Jet2& colat, const Jet2&) {
            const Jet2 sn = sin(colat), cs = cos(colat);
            return 1.0 / sqrt(sn * sn / (a * a) + cs * cs / (c * c));
          }, true};
}

AnalyticGraph dumbbell_graph(double amp) {
  return {format_label("dumbbell", {amp}),
          [amp](const Jet2& colat, const Jet2&) { return 1.0 + amp * cos(2.0 * colat); }, true};
}

AnalyticGraph zonal_wave_graph(double r0, double amp, int freq) {
  return {format_label("zonal-wave", {r0, amp, static_cast<double>(freq)}),
          [r0, amp, freq](const Jet2& colat, const Jet2&) {
            return r0 + amp * cos(static_cast<double>(freq) * colat);
          },
          true};
}

AnalyticGraph make_graph(std::string_view spec_in, const FiberSpec& fiber) {
  std::string spec;
  for (char ch : spec_in)
    if (!std::isspace(static_cast<unsigned char>(ch))) spec.push_back(ch);
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw PreconditionError("shape spec '" + spec + "' must look like name(args)");
  const std::string name = spec.substr(0, open);
  std::vector<double> args;
  std::istringstream list(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(list, item, ',')) {
    // Named arguments "d=1" are accepted; names are documentation only.
    if (const auto eq = item.find('='); eq != std::string::npos) item = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw PreconditionError("shape spec '" + spec + "': cannot parse '" + item + "'");
    args.push_back(v);
  }
  auto need = [&](std::size_t count, int dimension) {
    if (args.size() != count)
      throw PreconditionError("shape '" + name + "' takes " + std::to_string(count) + " arguments");
    if (dimension != 0 && fiber.dimension() != dimension)
      throw PreconditionError("shape '" + name + "' needs a " +
                              std::string(dimension == 1 ? "circle" : "2-sphere") + " fiber");
  };
  auto as_int = [&](double v) {
    if (v != std::floor(v)) throw PreconditionError("shape '" + name + "': frequency must be an integer");
    return static_cast<int>(v);
  };
  if (name == "slice" || name == "sphere") {
    need(1, 0);
    auto g = constant_graph(args[0]);
    g.label = format_label(name, {args[0]});
    return g;
  }
  if (name == "ellipse") { need(2, 1); return ellipse_graph(args[0], args[1]); }
  if (name == "offset-circle") { need(2, 1); return offset_circle_graph(args[0], args[1]); }
  if (name == "wave") { need(3, 1); return wave_graph(args[0], args[1], as_int(args[2])); }
  if (name == "ellipsoid") { need(3, 2); return ellipsoid_graph(args[0], args[1], args[2]); }
  if (name == "spheroid") { need(2, 2); return spheroid_graph(args[0], args[1]); }
  if (name == "dumbbell") { need(1, 2); return dumbbell_graph(args[0]); }
  if (name == "zonal-wave") { need(3, 2); return zonal_wave_graph(args[0], args[1], as_int(args[2])); }
  throw PreconditionError("unknown shape '" + name + "'");
}

AnalyticGraph random_star_curve(std::mt19937_64& rng, double r0, double amp, int modes) {
  std::vector<double> a(modes), b(modes);
  for (int k = 0; k < modes; ++k) {
    a[k] = uniform(rng, amp) / (k + 1);
    b[k] = uniform(rng, amp) / (k + 1);
  }
  return {format_label("random-curve", {r0, amp}), [r0, a, b](const Jet2& t, const Jet2&) {
            Jet2 e(0.0);
            for (std::size_t k = 0; k < a.size(); ++k) {
              const double f = static_cast<double>(k + 1);
              e = e + a[k] * cos(f * t) + b[k] * sin(f * t);
            }
            return r0 * exp(e);
          }};
}

AnalyticGraph random_star_surface(std::mt19937_64& rng, double r0, double amp) {
  std::array<double, 3> lin{};
  std::array<double, 6> quad{};
  for (auto& v : lin) v = uniform(rng, amp);
  for (auto& v : quad) v = uniform(rng, amp);
  return {format_label("random-surface", {r0, amp}), [r0, lin, quad](const Jet2& colat, const Jet2& azim) {
            const auto x = direction(colat, azim);
            Jet2 e = lin[0] * x[0] + lin[1] * x[1] + lin[2] * x[2];
            e = e + quad[0] * x[0] * x[0] + quad[1] * x[1] * x[1] + quad[2] * x[2] * x[2] +
                quad[3] * x[0] * x[1] + quad[4] * x[0] * x[2] + quad[5] * x[1] * x[2];
            return r0 * exp(e);
          }};
}

AnalyticGraph random_revolution(std::mt19937_64& rng, double r0, double amp, int modes) {
  std::vector<double> a(modes);
  for (int l = 0; l < modes; ++l) a[l] = uniform(rng, amp) / (l + 1);
  return {format_label("random-revolution", {r0, amp}), [r0, a](const Jet2& colat, const Jet2&) {
            Jet2 e(0.0);
            for (std::size_t l = 0; l < a.size(); ++l) e = e + a[l] * cos(static_cast<double>(l + 1) * colat);
            return r0 * exp(e);
          }, true};
}

}  // namespace warpiso
