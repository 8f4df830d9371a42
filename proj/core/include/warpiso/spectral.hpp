#pragma once

/// \file
/// Spectral differentiation of sampled fields on the fiber grids: Fourier on
/// the uniform S^1 grid, spherical-harmonic transform on the
/// Gauss-Legendre x uniform S^2 grid.

#include <span>
#include <vector>

#include "warpiso/jet.hpp"
#include "warpiso/quadrature.hpp"

namespace warpiso {

struct PeriodicDerivatives {
  std::vector<double> d1;
  std::vector<double> d2;
};

/// First and second derivatives of samples f(2 pi j / n), j = 0..n-1.
PeriodicDerivatives periodic_derivatives(std::span<const double> samples);

/// Coordinate derivatives of a field sampled on an S^2 grid, in
/// (colatitude, azimuth), node-aligned with the grid.
struct SphereDerivatives {
  std::vector<double> value;
  std::vector<double> d_colat;
  std::vector<double> d_azim;
  std::vector<double> d_colat2;
  std::vector<double> d_colat_azim;
  std::vector<double> d_azim2;
};

/// Band-limited reconstruction through degree n_colatitude - 1 and order
/// min(n_colatitude - 1, (n_azimuth - 1) / 2); exact for fields in that band.
SphereDerivatives sphere_derivatives(const FiberGrid& grid, std::span<const double> samples);

/// Zonal (azimuth-independent) Legendre series f(colatitude) = sum a_l P_l(cos).
class ZonalSeries {
 public:
  /// Fits the azimuthal mean of samples on an S^2 grid.
  static ZonalSeries fit(const FiberGrid& grid, std::span<const double> samples);

  /// Value and first two colatitude derivatives; colatitude in (0, pi).
  Deriv2 operator()(double colatitude) const;
  std::span<const double> coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;  // against orthonormal Legendre polynomials on [-1, 1]
};

}  // namespace warpiso
