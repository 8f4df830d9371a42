#include "warpiso/profile_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "warpiso/errors.hpp"

namespace warpiso {

namespace {

template <class F>
RadialFunction jet_function(F f) {
  return [f](double r) { return to_deriv(f(Jet1::variable(0, r))); };
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& text, std::string_view context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw PreconditionError("cannot parse number '" + text + "' in '" + std::string(context) + "'");
  return v;
}

}  // namespace

WarpProfile euclidean_profile() {
  return {"euclidean", 0.0, kInfinity, [](double r) { return Deriv2{r, 1.0, 0.0}; }, true};
}

WarpProfile hyperbolic_profile() {
  return {"hyperbolic", 0.0, kInfinity, jet_function([](Jet1 r) { return sinh(r); }), true};
}

WarpProfile hemisphere_profile() {
  return {"hemisphere", 0.0, std::numbers::pi / 2, jet_function([](Jet1 r) { return sin(r); }), true};
}

WarpProfile sphere_profile() {
  return {"sphere", 0.0, std::numbers::pi, jet_function([](Jet1 r) { return sin(r); }), true};
}

WarpProfile exponential_profile() {
  return {"exponential", 0.0, kInfinity, jet_function([](Jet1 r) { return exp(r); }), false};
}

WarpProfile power_profile(double alpha) {
  std::ostringstream label;
  label.precision(17);
  label << "power(" << alpha << ")";
  const double start = alpha < 0.0 ? 1.0 : 0.0;
  return {label.str(), start, kInfinity,
          jet_function([alpha](Jet1 r) { return pow(r, alpha); }), alpha > 0.0};
}

WarpProfile scaled_profile(const WarpProfile& base, double factor) {
  if (!(factor > 0.0)) throw ConstructionError("scaled_profile: factor must be positive");
  std::ostringstream label;
  label.precision(17);
  label << factor << "*" << base.label();
  return {label.str(), base.domain_start(), base.domain_end(),
          [base, factor](double r) {
            Deriv2 s = base.eval_closed(r);
            return Deriv2{factor * s.f, factor * s.df, factor * s.d2f};
          },
          base.vanishing_at_zero()};
}

namespace {

struct NaturalSpline {
  std::vector<double> x, y, m2;  // m2: second derivatives at knots

  Deriv2 operator()(double t) const {
    const std::size_t n = x.size();
    std::size_t i = std::upper_bound(x.begin(), x.end(), t) - x.begin();
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h, b = (t - x[i]) / h;
    const double f = a * y[i] + b * y[i + 1] + ((a * a * a - a) * m2[i] + (b * b * b - b) * m2[i + 1]) * h * h / 6.0;
    const double df = (y[i + 1] - y[i]) / h - (3.0 * a * a - 1.0) * h * m2[i] / 6.0 +
                      (3.0 * b * b - 1.0) * h * m2[i + 1] / 6.0;
    const double d2f = a * m2[i] + b * m2[i + 1];
    return {f, df, d2f};
  }
};

}  // namespace

WarpProfile spline_profile(std::string label, std::vector<double> r, std::vector<double> s) {
  const std::size_t n = r.size();
  if (n < 4 || s.size() != n) throw ConstructionError("spline_profile: need >= 4 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(r[i] > r[i - 1])) throw ConstructionError("spline_profile: r must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(s[i] >= 0.0)) throw ConstructionError("spline_profile: s must be nonnegative");
    if (s[i] == 0.0 && i > 0) throw ConstructionError("spline_profile: s must be positive for r > r_0");
  }
  auto spline = std::make_shared<NaturalSpline>();
  spline->x = std::move(r);
  spline->y = std::move(s);
  spline->m2.assign(n, 0.0);
  // Tridiagonal solve for interior second derivatives (natural ends).
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = spline->x[i] - spline->x[i - 1], h1 = spline->x[i + 1] - spline->x[i];
    const double a = h0 / 6.0, b = (h0 + h1) / 3.0, cc = h1 / 6.0;
    const double rhs = (spline->y[i + 1] - spline->y[i]) / h1 - (spline->y[i] - spline->y[i - 1]) / h0;
    const double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (rhs - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    spline->m2[i] = d[i] - c[i] * spline->m2[i + 1];
    if (i == 1) break;
  }
  const double start = spline->x.front(), end = spline->x.back();
  const bool vanishing = start == 0.0 && spline->y.front() == 0.0;
  return {std::move(label), start, end,
          [spline](double t) { return (*spline)(t); }, vanishing};
}

WarpProfile load_spline_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("custom-spline: cannot open '" + path + "'");
  std::vector<double> r, s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    double a = 0, b = 0;
    if (!(ls >> a >> b))
      throw PreconditionError("custom-spline: malformed line " + std::to_string(lineno) + " in '" + path + "'");
    r.push_back(a);
    s.push_back(b);
  }
  return spline_profile("custom-spline(" + path + ")", std::move(r), std::move(s));
}

WarpProfile make_profile(std::string_view name_in) {
  const std::string name = trim(name_in);
  if (name == "euclidean") return euclidean_profile();
  if (name == "hyperbolic") return hyperbolic_profile();
  if (name == "hemisphere") return hemisphere_profile();
  if (name == "sphere") return sphere_profile();
  if (name == "exponential") return exponential_profile();
  auto arg = [&](std::string_view prefix) -> std::optional<std::string> {
    if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
        name[prefix.size()] == '(' && name.back() == ')')
      return trim(std::string_view(name).substr(prefix.size() + 1, name.size() - prefix.size() - 2));
    return std::nullopt;
  };
  if (auto a = arg("power")) return power_profile(parse_number(*a, name));
  if (auto a = arg("custom-spline")) return load_spline_profile(*a);
  throw PreconditionError("unknown profile '" + name + "'");
}

RadialFunction constant_weight(double value) {
  return [value](double) { return Deriv2{value, 0.0, 0.0}; };
}

RadialFunction power_weight(double k) {
  return jet_function([k](Jet1 r) { return pow(r, k); });
}

RadialFunction sinh_power_weight(double k) {
  return jet_function([k](Jet1 r) { return pow(sinh(r), k); });
}

RadialFunction cosh_weight() {
  return jet_function([](Jet1 r) { return cosh(r); });
}

RadialFunction cosh_minus_one_power_weight(double k) {
  return jet_function([k](Jet1 r) { return pow(cosh(r) - 1.0, k); });
}

RadialFunction tan_power_weight(double k) {
  return jet_function([k](Jet1 r) { return pow(tan(r), k); });
}

RadialFunction one_minus_cos_weight() {
  return jet_function([](Jet1 r) { return 1.0 - cos(r); });
}

RadialFunction cos_weight() {
  return jet_function([](Jet1 r) { return cos(r); });
}

RadialFunction profile_power_weight(const WarpProfile& profile, double p) {
  return [profile, p](double r) {
    const Deriv2 s = profile.eval_closed(r);
    Jet1 sj(s.f);
    sj.d[0] = s.df;
    sj.h[0] = s.d2f;
    return to_deriv(pow(sj, p));
  };
}

RadialFunction profile_derivative_weight(const WarpProfile& profile) {
  // Third derivative is not carried; c'' is reported as zero and must not be
  // relied on.
  return [profile](double r) {
    const Deriv2 s = profile.eval_closed(r);
    return Deriv2{s.df, s.d2f, 0.0};
  };
}

RadialFunction make_weight(std::string_view spec_in) {
  std::string spec;
  for (char ch : spec_in)
    if (!std::isspace(static_cast<unsigned char>(ch))) spec.push_back(ch);
  if (spec == "1" || spec == "const") return constant_weight(1.0);
  if (spec == "cosh") return cosh_weight();
  if (spec == "1-cos") return one_minus_cos_weight();
  if (spec == "cos") return cos_weight();
  if (spec == "r") return power_weight(1.0);
  if (spec == "sinh") return sinh_power_weight(1.0);
  if (spec == "tan") return tan_power_weight(1.0);
  if (spec == "cosh-1") return cosh_minus_one_power_weight(1.0);
  auto exponent = [&](std::string_view base) -> std::optional<double> {
    if (spec.size() > base.size() + 1 && spec.compare(0, base.size(), base) == 0 && spec[base.size()] == '^')
      return parse_number(spec.substr(base.size() + 1), spec);
    return std::nullopt;
  };
  if (auto k = exponent("r")) return power_weight(*k);
  if (auto k = exponent("sinh")) return sinh_power_weight(*k);
  if (auto k = exponent("tan")) return tan_power_weight(*k);
  if (auto k = exponent("(cosh-1)")) return cosh_minus_one_power_weight(*k);
  throw PreconditionError("unknown weight '" + std::string(spec_in) + "'");
}

}  // namespace warpiso
