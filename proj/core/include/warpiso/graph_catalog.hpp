#pragma once

/// \file
/// Named star-shaped graphs and seeded random generators.
///
/// Shape specs: "slice(r0)", "sphere(rho)", "ellipse(a,b)",
/// "offset-circle(d,rho)", "wave(r0,amp,freq)" on S^1; "slice(r0)",
/// "sphere(rho)", "ellipsoid(a,b,c)", "spheroid(a,c)", "dumbbell(amp)",
/// "zonal-wave(r0,amp,freq)" on S^2.

#include <cstdint>
#include <random>
#include <string_view>

#include "warpiso/fiber.hpp"
#include "warpiso/hypersurface.hpp"

namespace warpiso {

AnalyticGraph constant_graph(double r0);
/// Polar ellipse ab / sqrt(b^2 cos^2 + a^2 sin^2) with semi-axis a along theta = 0.
AnalyticGraph ellipse_graph(double a, double b);
/// Circle of radius rho centered at distance d from the origin along
/// theta = 0, as a polar graph. Requires 0 <= d <= rho; d = rho touches the
/// origin.
AnalyticGraph offset_circle_graph(double d, double rho);
/// r0 + amp cos(freq theta).
AnalyticGraph wave_graph(double r0, double amp, int freq);
/// Ellipsoid with semi-axes a, b, c along x, y, z (z is the polar axis).
AnalyticGraph ellipsoid_graph(double a, double b, double c);
/// Spheroid a = b, polar semi-axis c; a surface of revolution.
AnalyticGraph spheroid_graph(double a, double c);
/// 1 + amp cos(2 colatitude).
AnalyticGraph dumbbell_graph(double amp);
/// r0 + amp cos(freq colatitude).
AnalyticGraph zonal_wave_graph(double r0, double amp, int freq);

/// Resolves a shape spec for the given fiber; PreconditionError on unknown
/// names, arity mismatch or a shape that does not live on that fiber.
AnalyticGraph make_graph(std::string_view spec, const FiberSpec& fiber);

/// r0 exp(sum_k (a_k cos k theta + b_k sin k theta) / k), coefficients
/// uniform in [-amp, amp], k = 1..modes.
AnalyticGraph random_star_curve(std::mt19937_64& rng, double r0, double amp, int modes = 4);
/// r0 exp(p(x)) with p a random polynomial of degree <= 2 in the unit
/// direction x, coefficients uniform in [-amp, amp].
AnalyticGraph random_star_surface(std::mt19937_64& rng, double r0, double amp);
/// r0 exp(sum_l a_l cos(l colatitude) / l), l = 1..modes.
AnalyticGraph random_revolution(std::mt19937_64& rng, double r0, double amp, int modes = 4);

}  // namespace warpiso
