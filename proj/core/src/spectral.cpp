#include "warpiso/spectral.hpp"

#include <cmath>
#include <numbers>

#include "warpiso/errors.hpp"

namespace warpiso {

PeriodicDerivatives periodic_derivatives(std::span<const double> f) {
  const std::size_t n = f.size();
  if (n < 3) throw PreconditionError("periodic_derivatives: need at least 3 samples");
  std::vector<double> cs(n), sn(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    cs[j] = std::cos(t);
    sn[j] = std::sin(t);
  }
  const std::size_t half = (n - 1) / 2;
  const bool has_nyquist = n % 2 == 0;
  std::vector<double> a(half + 1, 0.0), b(half + 1, 0.0);
  for (std::size_t k = 1; k <= half; ++k) {
    CompensatedSum sa, sb;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = (k * j) % n;
      sa.add(f[j] * cs[idx]);
      sb.add(f[j] * sn[idx]);
    }
    a[k] = 2.0 * sa.value() / n;
    b[k] = 2.0 * sb.value() / n;
  }
  double nyquist = 0.0;
  if (has_nyquist) {
    CompensatedSum s;
    for (std::size_t j = 0; j < n; ++j) s.add((j % 2 == 0 ? 1.0 : -1.0) * f[j]);
    nyquist = s.value() / n;
  }

  PeriodicDerivatives out{std::vector<double>(n), std::vector<double>(n)};
  const double nyq_k2 = static_cast<double>(n / 2) * static_cast<double>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    CompensatedSum d1, d2;
    for (std::size_t k = 1; k <= half; ++k) {
      const std::size_t idx = (k * j) % n;
      const double kk = static_cast<double>(k);
      d1.add(kk * (-a[k] * sn[idx] + b[k] * cs[idx]));
      d2.add(-kk * kk * (a[k] * cs[idx] + b[k] * sn[idx]));
    }
    if (has_nyquist) d2.add(-nyq_k2 * nyquist * (j % 2 == 0 ? 1.0 : -1.0));
    out.d1[j] = d1.value();
    out.d2[j] = d2.value();
  }
  return out;
}

namespace {

// Orthonormal associated Legendre functions Pbar_l^k(cos phi) for a fixed
// order k and l = k..lmax, plus colatitude derivatives.
struct LegendreColumn {
  std::vector<double> p, dp, d2p;  // indexed by l - k
};

LegendreColumn legendre_column(int k, int lmax, double colat) {
  const double x = std::cos(colat), sn = std::sin(colat);
  LegendreColumn col;
  const int count = lmax - k + 1;
  if (count <= 0) return col;
  col.p.resize(count);
  col.dp.resize(count);
  col.d2p.resize(count);
  double pkk = std::sqrt(0.5);
  for (int j = 1; j <= k; ++j) pkk *= std::sqrt((2.0 * j + 1.0) / (2.0 * j)) * sn;
  col.p[0] = pkk;
  if (count > 1) col.p[1] = std::sqrt(2.0 * k + 3.0) * x * pkk;
  for (int l = k + 2; l <= lmax; ++l) {
    const double ll = l, kk = k;
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - kk * kk));
    const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - kk * kk) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    col.p[l - k] = a * (x * col.p[l - k - 1] - b * col.p[l - k - 2]);
  }
  for (int l = k; l <= lmax; ++l) {
    const double ll = l, kk = k;
    const double prev = (l > k) ? col.p[l - k - 1] : 0.0;
    const double c = (l > k) ? std::sqrt((2.0 * ll + 1.0) / (2.0 * ll - 1.0) * (ll * ll - kk * kk)) : 0.0;
    const double dpdx_times = c * prev - ll * x * col.p[l - k];  // (1 - x^2) dP/dx
    const double dp = -dpdx_times / sn;
    col.dp[l - k] = dp;
    col.d2p[l - k] = -(x / sn) * dp - (ll * (ll + 1.0) - kk * kk / (sn * sn)) * col.p[l - k];
  }
  return col;
}

}  // namespace

SphereDerivatives sphere_derivatives(const FiberGrid& grid, std::span<const double> samples) {
  if (!grid.fiber().is_sphere()) throw PreconditionError("sphere_derivatives: S^2 grid required");
  if (samples.size() != grid.size()) throw PreconditionError("sphere_derivatives: size mismatch");
  const int n_lat = grid.resolution().primary, n_lon = grid.resolution().secondary;
  const int lmax = n_lat - 1;
  const int kmax = std::min(lmax, (n_lon - 1) / 2);
  const auto& rule = grid.colatitude_rule();

  std::vector<double> cs(n_lon), sn(n_lon);
  for (int j = 0; j < n_lon; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n_lon;
    cs[j] = std::cos(t);
    sn[j] = std::sin(t);
  }

  // Azimuthal Fourier coefficients per ring: C[k][i], S[k][i].
  std::vector<std::vector<double>> C(kmax + 1, std::vector<double>(n_lat)), S = C;
  for (int i = 0; i < n_lat; ++i) {
    const double* ring = samples.data() + static_cast<std::size_t>(i) * n_lon;
    for (int k = 0; k <= kmax; ++k) {
      CompensatedSum sc, ss;
      for (int j = 0; j < n_lon; ++j) {
        const int idx = (k * j) % n_lon;
        sc.add(ring[j] * cs[idx]);
        ss.add(ring[j] * sn[idx]);
      }
      const double scale = (k == 0) ? 1.0 / n_lon : 2.0 / n_lon;
      C[k][i] = scale * sc.value();
      S[k][i] = scale * ss.value();
    }
  }

  // Legendre tables at the colatitude nodes.
  std::vector<std::vector<LegendreColumn>> table(kmax + 1, std::vector<LegendreColumn>(n_lat));
  for (int k = 0; k <= kmax; ++k)
    for (int i = 0; i < n_lat; ++i) table[k][i] = legendre_column(k, lmax, std::acos(rule.nodes[i]));

  // Project, then evaluate the band-limited series and its derivatives per ring.
  std::vector<std::vector<double>> Cv(kmax + 1, std::vector<double>(n_lat)), Cd = Cv, Cdd = Cv,
                                                                            Sv = Cv, Sd = Cv, Sdd = Cv;
  for (int k = 0; k <= kmax; ++k) {
    const int count = lmax - k + 1;
    std::vector<double> A(count, 0.0), B(count, 0.0);
    for (int l = 0; l < count; ++l) {
      CompensatedSum sa, sb;
      for (int i = 0; i < n_lat; ++i) {
        sa.add(rule.weights[i] * C[k][i] * table[k][i].p[l]);
        sb.add(rule.weights[i] * S[k][i] * table[k][i].p[l]);
      }
      A[l] = sa.value();
      B[l] = sb.value();
    }
    for (int i = 0; i < n_lat; ++i) {
      const auto& col = table[k][i];
      CompensatedSum cv, cd, cdd, sv, sd, sdd;
      for (int l = 0; l < count; ++l) {
        cv.add(A[l] * col.p[l]);
        cd.add(A[l] * col.dp[l]);
        cdd.add(A[l] * col.d2p[l]);
        sv.add(B[l] * col.p[l]);
        sd.add(B[l] * col.dp[l]);
        sdd.add(B[l] * col.d2p[l]);
      }
      Cv[k][i] = cv.value();
      Cd[k][i] = cd.value();
      Cdd[k][i] = cdd.value();
      Sv[k][i] = sv.value();
      Sd[k][i] = sd.value();
      Sdd[k][i] = sdd.value();
    }
  }

  SphereDerivatives out;
  const std::size_t total = grid.size();
  out.value.resize(total);
  out.d_colat.resize(total);
  out.d_azim.resize(total);
  out.d_colat2.resize(total);
  out.d_colat_azim.resize(total);
  out.d_azim2.resize(total);
  for (int i = 0; i < n_lat; ++i) {
    for (int j = 0; j < n_lon; ++j) {
      CompensatedSum v, dp, da, dpp, dpa, daa;
      for (int k = 0; k <= kmax; ++k) {
        const int idx = (k * j) % n_lon;
        const double c = cs[idx], s = sn[idx], kk = k;
        v.add(Cv[k][i] * c + Sv[k][i] * s);
        dp.add(Cd[k][i] * c + Sd[k][i] * s);
        dpp.add(Cdd[k][i] * c + Sdd[k][i] * s);
        da.add(kk * (-Cv[k][i] * s + Sv[k][i] * c));
        dpa.add(kk * (-Cd[k][i] * s + Sd[k][i] * c));
        daa.add(-kk * kk * (Cv[k][i] * c + Sv[k][i] * s));
      }
      const std::size_t node = static_cast<std::size_t>(i) * n_lon + j;
      out.value[node] = v.value();
      out.d_colat[node] = dp.value();
      out.d_azim[node] = da.value();
      out.d_colat2[node] = dpp.value();
      out.d_colat_azim[node] = dpa.value();
      out.d_azim2[node] = daa.value();
    }
  }
  return out;
}

ZonalSeries ZonalSeries::fit(const FiberGrid& grid, std::span<const double> samples) {
  if (!grid.fiber().is_sphere()) throw PreconditionError("ZonalSeries::fit: S^2 grid required");
  if (samples.size() != grid.size()) throw PreconditionError("ZonalSeries::fit: size mismatch");
  const int n_lat = grid.resolution().primary, n_lon = grid.resolution().secondary;
  const auto& rule = grid.colatitude_rule();
  std::vector<double> mean(n_lat);
  for (int i = 0; i < n_lat; ++i) {
    CompensatedSum s;
    for (int j = 0; j < n_lon; ++j) s.add(samples[static_cast<std::size_t>(i) * n_lon + j]);
    mean[i] = s.value() / n_lon;
  }
  ZonalSeries series;
  series.coeffs_.assign(n_lat, 0.0);
  std::vector<LegendreColumn> cols(n_lat);
  for (int i = 0; i < n_lat; ++i) cols[i] = legendre_column(0, n_lat - 1, std::acos(rule.nodes[i]));
  for (int l = 0; l < n_lat; ++l) {
    CompensatedSum s;
    for (int i = 0; i < n_lat; ++i) s.add(rule.weights[i] * mean[i] * cols[i].p[l]);
    series.coeffs_[l] = s.value();
  }
  return series;
}

Deriv2 ZonalSeries::operator()(double colatitude) const {
  if (!(colatitude > 0.0 && colatitude < std::numbers::pi))
    throw RangeError("ZonalSeries: colatitude must lie in (0, pi)");
  const auto col = legendre_column(0, static_cast<int>(coeffs_.size()) - 1, colatitude);
  CompensatedSum v, d, dd;
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    v.add(coeffs_[l] * col.p[l]);
    d.add(coeffs_[l] * col.dp[l]);
    dd.add(coeffs_[l] * col.d2p[l]);
  }
  return {v.value(), d.value(), dd.value()};
}

}  // namespace warpiso
