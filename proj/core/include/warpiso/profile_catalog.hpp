#pragma once

/// \file
/// Named warping profiles and radial weights.
///
/// Profile names: "euclidean" (s = r), "hyperbolic" (sinh r), "hemisphere"
/// (sin r on [0, pi/2)), "sphere" (sin r on [0, pi)), "exponential" (e^r),
/// "power(alpha)" (r^alpha; on [1, inf) when alpha < 0) and
/// "custom-spline(path)" (two-column text file of r, s(r)).
///
/// Weight names: "1", "r^k", "sinh^k", "cosh", "(cosh-1)^k", "tan^k",
/// "1-cos", "cos", with "r", "sinh", "tan" as shorthand for exponent 1.

#include <string>
#include <string_view>
#include <vector>

#include "warpiso/warp_model.hpp"

namespace warpiso {

WarpProfile euclidean_profile();
WarpProfile hyperbolic_profile();
WarpProfile hemisphere_profile();
WarpProfile sphere_profile();
WarpProfile exponential_profile();
WarpProfile power_profile(double alpha);
/// k * s(r) with the same domain.
WarpProfile scaled_profile(const WarpProfile& base, double factor);

/// Natural cubic spline through (r_i, s_i); r strictly increasing, at least
/// four samples. Derivatives are those of the spline itself.
WarpProfile spline_profile(std::string label, std::vector<double> r, std::vector<double> s);
WarpProfile load_spline_profile(const std::string& path);

/// Resolves a catalog name; PreconditionError on unknown names.
WarpProfile make_profile(std::string_view name);

/// Radial weights.
RadialFunction constant_weight(double value);
RadialFunction power_weight(double k);
RadialFunction sinh_power_weight(double k);
RadialFunction cosh_weight();
RadialFunction cosh_minus_one_power_weight(double k);
RadialFunction tan_power_weight(double k);
RadialFunction one_minus_cos_weight();
RadialFunction cos_weight();
/// s(r)^p for a profile.
RadialFunction profile_power_weight(const WarpProfile& profile, double p);
/// s'(r), the conformal factor of X = s d/dr.
RadialFunction profile_derivative_weight(const WarpProfile& profile);

RadialFunction make_weight(std::string_view spec);

}  // namespace warpiso
