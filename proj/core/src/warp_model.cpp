#include "warpiso/warp_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "warpiso/errors.hpp"
#include "warpiso/quadrature.hpp"

namespace warpiso {

namespace {

// Radial profiles are integrated far below the tolerances quoted for the
// inverse so that invert_volume can meet 1e-12 (1 + u).
constexpr double kVolumeTol = 1e-14;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

WarpProfile::WarpProfile(std::string label, double domain_start, double domain_end,
                         RadialFunction eval, bool vanishing_at_zero)
    : label_(std::move(label)), start_(domain_start), end_(domain_end), eval_(std::move(eval)),
      vanishing_at_zero_(vanishing_at_zero) {
  if (!std::isfinite(start_) || !(end_ > start_))
    throw ConstructionError("WarpProfile '" + label_ + "': empty or invalid domain");
  if (!eval_) throw ConstructionError("WarpProfile '" + label_ + "': missing evaluator");
}

Deriv2 WarpProfile::eval(double r) const {
  if (!(r >= start_ && r < end_))
    throw RangeError("profile '" + label_ + "': r = " + fmt(r) + " outside [" + fmt(start_) +
                     ", " + fmt(end_) + ")");
  return eval_(r);
}

Deriv2 WarpProfile::eval_closed(double r) const {
  if (finite_domain() && r == end_) return eval_(r);
  return eval(r);
}

Deriv2 eval_profile(const WarpProfile& profile, double r) { return profile.eval(r); }

WarpedSpace::WarpedSpace(WarpProfile profile, FiberSpec fiber)
    : WarpedSpace(std::vector<std::pair<WarpProfile, FiberSpec>>{{std::move(profile), std::move(fiber)}}) {}

WarpedSpace::WarpedSpace(std::vector<std::pair<WarpProfile, FiberSpec>> fibers)
    : fibers_(std::move(fibers)) {
  if (fibers_.empty()) throw ConstructionError("WarpedSpace needs at least one fiber");
  start_ = fibers_.front().first.domain_start();
  end_ = fibers_.front().first.domain_end();
  for (const auto& [profile, fiber] : fibers_) {
    if (profile.domain_start() != start_ || profile.domain_end() != end_)
      throw ConstructionError("WarpedSpace: all profiles must share one domain");
    m_ += fiber.dimension();
    fiber_volume_ *= fiber.total_volume();
  }
}

const WarpProfile& WarpedSpace::profile() const {
  if (!single_fiber()) throw UnsupportedError("multiply warped space has no single profile");
  return fibers_.front().first;
}

const FiberSpec& WarpedSpace::fiber() const {
  if (!single_fiber()) throw UnsupportedError("multiply warped space has no single fiber");
  return fibers_.front().second;
}

std::string WarpedSpace::label() const {
  std::string out;
  for (const auto& [profile, fiber] : fibers_) {
    if (!out.empty()) out += " x ";
    out += profile.label() + "/" + fiber.describe();
  }
  return out;
}

Deriv2 WarpedSpace::area_jet(double r) const {
  // Product rule over s_q^{m_q}, carried on one-variable jets.
  Jet1 A(1.0);
  for (const auto& [profile, fiber] : fibers_) {
    const Deriv2 s = profile.eval_closed(r);
    Jet1 sj(s.f);
    sj.d[0] = s.df;
    sj.h[0] = s.d2f;
    A = A * pow(sj, static_cast<double>(fiber.dimension()));
  }
  return to_deriv(A);
}

WeightPair::WeightPair(RadialFunction a, std::optional<RadialFunction> c, double origin,
                       std::optional<ContinuityCheck> continuity, std::string label)
    : a_(std::move(a)), c_(std::move(c)), origin_(origin), label_(std::move(label)) {
  if (!a_) throw ConstructionError("WeightPair: missing boundary weight");
  a_origin_ = a_(origin_).f;
  if (continuity) {
    const auto& chk = *continuity;
    if (chk.samples < 2 || !(chk.r_max > chk.r_min))
      throw ConstructionError("WeightPair: invalid continuity sampling window");
    double prev = a_(chk.r_min).f;
    for (int i = 1; i < chk.samples; ++i) {
      const double r = chk.r_min + (chk.r_max - chk.r_min) * i / (chk.samples - 1);
      const double cur = a_(r).f;
      if (!std::isfinite(cur) || std::abs(cur - prev) > chk.modulus)
        throw ConstructionError("WeightPair '" + label_ + "': jump exceeding modulus near r = " +
                                fmt(r));
      prev = cur;
    }
  }
}

Deriv2 WeightPair::b(double r) const {
  Deriv2 v = a_(r);
  v.f = (r == origin_) ? 0.0 : v.f - a_origin_;
  return v;
}

Deriv2 WeightPair::c(double r) const { return c_ ? (*c_)(r) : Deriv2{1.0, 0.0, 0.0}; }

double area_coefficient(const WarpedSpace& space, double r) {
  double A = 1.0;
  for (const auto& [profile, fiber] : space.fibers())
    A *= std::pow(profile.eval(r).f, fiber.dimension());
  return A;
}

namespace {

void check_radius(const WarpedSpace& space, double r, const char* op) {
  const bool ok = r >= space.domain_start() &&
                  (r < space.domain_end() || (std::isfinite(space.domain_end()) && r == space.domain_end()));
  if (!ok)
    throw RangeError(std::string(op) + ": r = " + fmt(r) + " outside [" +
                     fmt(space.domain_start()) + ", " + fmt(space.domain_end()) + "]");
}

double area_closed(const WarpedSpace& space, double r) {
  double A = 1.0;
  for (const auto& [profile, fiber] : space.fibers())
    A *= std::pow(profile.eval_closed(r).f, fiber.dimension());
  return A;
}

}  // namespace

double volume_profile(const WarpedSpace& space, double r, const std::optional<RadialFunction>& c) {
  check_radius(space, r, "volume_profile");
  if (c) {
    return integrate_radial(
        [&](double t) { return (*c)(t).f * area_closed(space, t); }, space.domain_start(), r,
        kVolumeTol);
  }
  return integrate_radial([&](double t) { return area_closed(space, t); }, space.domain_start(),
                          r, kVolumeTol);
}

double total_volume_profile(const WarpedSpace& space, double r,
                            const std::optional<RadialFunction>& c) {
  return space.fiber_volume() * volume_profile(space, r, c);
}

double invert_volume(const WarpedSpace& space, double u, const std::optional<RadialFunction>& c) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw RangeError("invert_volume: u = " + fmt(u) + " must be finite and >= 0");
  const double start = space.domain_start();
  if (u == 0.0) return start;

  double hi;
  if (std::isfinite(space.domain_end())) {
    hi = space.domain_end();
    const double vmax = volume_profile(space, hi, c);
    if (u > vmax * (1.0 + 1e-15))
      throw RangeError("invert_volume: u = " + fmt(u) + " exceeds v(domain_end) = " + fmt(vmax));
    if (u >= vmax) return hi;
  } else {
    hi = start + 1.0;
    int doublings = 0;
    while (volume_profile(space, hi, c) < u) {
      hi = start + 2.0 * (hi - start);
      if (++doublings > 60) throw RangeError("invert_volume: u = " + fmt(u) + " not reached");
    }
  }

  auto g = [&](double r) { return volume_profile(space, r, c) - u; };
  double lo = start;
  const double glo = -u;
  const double ghi = g(hi);
  if (ghi == 0.0) return hi;
  boost::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), max_iter);
  double r = 0.5 * (bracket.first + bracket.second);

  // One Newton polish step using v' = c A.
  const double slope = (c ? (*c)(r).f : 1.0) * area_closed(space, r);
  if (slope > 0.0 && std::isfinite(slope)) {
    const double step = g(r) / slope;
    const double polished = r - step;
    if (polished >= bracket.first && polished <= bracket.second) r = polished;
  }
  return r;
}

double log_convexity_margin(const WarpedSpace& space, double r) {
  const Deriv2 s = space.profile().eval(r);
  return s.f * s.d2f - s.df * s.df;
}

double composite_convexity_margin(const WarpedSpace& space, const RadialFunction& f, double r,
                                  const std::optional<RadialFunction>& c) {
  const Deriv2 A = space.area_jet(r);
  const Deriv2 cw = c ? (*c)(r) : Deriv2{1.0, 0.0, 0.0};
  const double cA = cw.f * A.f;
  const double dcA = cw.df * A.f + cw.f * A.df;
  const Deriv2 fv = f(r);
  return fv.d2f * cA - fv.df * dcA;
}

double secant_convexity_gap(const WarpedSpace& space, double u0, double u1, double u2,
                            const std::optional<RadialFunction>& c) {
  if (!(u0 < u1 && u1 < u2)) throw PreconditionError("secant_convexity_gap: need u0 < u1 < u2");
  const double f0 = area_closed(space, invert_volume(space, u0, c));
  const double f1 = area_closed(space, invert_volume(space, u1, c));
  const double f2 = area_closed(space, invert_volume(space, u2, c));
  const double t = (u1 - u0) / (u2 - u0);
  return (1.0 - t) * f0 + t * f2 - f1;
}

double weighted_convexity_margin(const WarpedSpace& space, const WeightPair& weights, double r) {
  const Deriv2 s = space.profile().eval(r);
  const Deriv2 b = weights.b(r);
  const double m = space.fiber_dimension();
  return s.f * s.f * b.d2f + m * s.f * s.df * b.df - m * b.f * (s.df * s.df - s.f * s.d2f);
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::SlicesIsoperimetric: return "SlicesIsoperimetric";
    case Regime::GLWRegime: return "GLWRegime";
    case Regime::SlicesNotIsoperimetric: return "SlicesNotIsoperimetric";
    case Regime::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

RegimeReport classify_regime(const WarpedSpace& space, std::optional<double> K,
                             std::optional<double> working_radius, int samples) {
  if (!space.single_fiber())
    throw UnsupportedError("classify_regime: single-fiber spaces only");
  if (samples < 2) throw PreconditionError("classify_regime: need at least two samples");
  const auto& profile = space.profile();
  const auto& fiber = space.fiber();

  RegimeReport rep;
  rep.samples = samples;
  rep.r_min = space.domain_start();
  double hi = space.domain_end();
  if (working_radius) hi = std::min(hi, *working_radius);
  if (!std::isfinite(hi))
    throw PreconditionError("classify_regime: infinite domain needs a finite working radius");
  if (!(hi > rep.r_min)) throw PreconditionError("classify_regime: empty working interval");
  rep.r_max = hi;

  rep.min_defect = kInfinity;
  rep.max_defect = -kInfinity;
  rep.s_monotone = true;
  double scale = 1.0;
  for (int i = 0; i < samples; ++i) {
    const double r = rep.r_min + (hi - rep.r_min) * (i + 0.5) / samples;
    const Deriv2 s = profile.eval(r);
    const double defect = s.df * s.df - s.f * s.d2f;
    rep.min_defect = std::min(rep.min_defect, defect);
    rep.max_defect = std::max(rep.max_defect, defect);
    scale = std::max(scale, std::abs(defect));
    if (s.df < -1e-14 * std::max(1.0, std::abs(s.f))) rep.s_monotone = false;
  }
  rep.s_vanishes_at_zero =
      profile.vanishing_at_zero() && profile.domain_start() == 0.0 && profile.eval(0.0).f == 0.0;

  const double tol = 1e-12 * scale;
  const int m = fiber.dimension();
  std::ostringstream why;
  why.precision(10);
  why << "s'^2 - s s'' in [" << rep.min_defect << ", " << rep.max_defect << "] over "
      << samples << " samples on (" << rep.r_min << ", " << hi << ")";

  if (rep.max_defect <= tol) {
    rep.regime = Regime::SlicesIsoperimetric;
    why << "; nonpositive everywhere";
    rep.explanation = why.str();
    if (K) rep.K = K;
    return rep;
  }

  if (!K) K = fiber.ricci_lower_K();
  rep.K = K;
  if (!K) {
    rep.regime = Regime::Indeterminate;
    why << "; positive somewhere and no curvature constant K supplied";
    rep.explanation = why.str();
    return rep;
  }
  const double k = *K;
  why << "; K = " << k;

  if (rep.min_defect >= -tol && rep.max_defect <= k + tol) {
    const bool ricci_ok = m == 1 || (fiber.ricci_lower_K() && *fiber.ricci_lower_K() >= k - tol);
    if (ricci_ok) {
      rep.regime = Regime::GLWRegime;
      why << "; 0 <= defect <= K with Ric_N >= (m-1)K";
    } else {
      rep.regime = Regime::Indeterminate;
      why << "; 0 <= defect <= K but the fiber does not supply Ric_N >= (m-1)K";
    }
  } else if (rep.min_defect > k + tol) {
    const auto lambda1 = fiber.lambda1();
    if (!lambda1) {
      rep.regime = Regime::Indeterminate;
      why << "; defect > K but fiber lambda1 unknown";
    } else if (*lambda1 <= m * k + tol) {
      rep.regime = Regime::SlicesNotIsoperimetric;
      why << "; defect > K and lambda1(N) = " << *lambda1 << " <= mK";
    } else {
      rep.regime = Regime::Indeterminate;
      why << "; defect > K but lambda1(N) = " << *lambda1 << " > mK";
    }
  } else {
    rep.regime = Regime::Indeterminate;
    why << "; defect changes regime across the working interval";
  }
  rep.explanation = why.str();
  return rep;
}

}  // namespace warpiso
