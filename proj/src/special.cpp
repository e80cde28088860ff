// SPDX-License-Identifier: Apache-2.0

#include "scatbound/special.hpp"

#include <cmath>
#include <stdexcept>

namespace scatbound {

RadialFunctionTable radial_table(int l_max, double x) {
  if (x <= 0.0) throw std::domain_error("radial_table: x must be positive");
  if (l_max < 0) throw std::domain_error("radial_table: l_max must be >= 0");

  RadialFunctionTable t;
  t.l_max = l_max;
  t.x = x;
  t.j.resize(l_max + 1);
  t.y.resize(l_max + 1);
  t.jp.resize(l_max + 1);
  t.yp.resize(l_max + 1);

  const double sx = std::sin(x), cx = std::cos(x);

  // j_l: downward recurrence from a start order well past the transition,
  // normalized against j_0 (or j_1 near zeros of sin).
  const int start = l_max + std::max(20, static_cast<int>(std::ceil(x)));
  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-280;
  for (int l = start; l >= 1; --l) {
    f[l - 1] = (2.0 * l + 1.0) / x * f[l] - f[l + 1];
    if (std::abs(f[l - 1]) > 1e250) {
      for (int m = l - 1; m <= start + 1; ++m) f[m] *= 1e-250;
    }
  }
  const double j0 = sx / x;
  const double j1 = sx / (x * x) - cx / x;
  const double scale = (std::abs(f[0]) >= std::abs(f[1])) ? j0 / f[0] : j1 / f[1];
  for (int l = 0; l <= l_max; ++l) t.j[l] = f[l] * scale;

  // y_l: upward recurrence is stable (values grow with l).
  t.y[0] = -cx / x;
  if (l_max >= 1) t.y[1] = -cx / (x * x) - sx / x;
  for (int l = 1; l < l_max; ++l)
    t.y[l + 1] = (2.0 * l + 1.0) / x * t.y[l] - t.y[l - 1];

  // f'_l = f_{l-1} - (l+1)/x f_l with f_{-1}: j_{-1} = cos(x)/x, y_{-1} = sin(x)/x.
  t.jp[0] = cx / x - t.j[0] / x;
  t.yp[0] = sx / x - t.y[0] / x;
  for (int l = 1; l <= l_max; ++l) {
    t.jp[l] = t.j[l - 1] - (l + 1.0) / x * t.j[l];
    t.yp[l] = t.y[l - 1] - (l + 1.0) / x * t.y[l];
  }
  return t;
}

std::vector<double> legendre_values(int l_max, double t) {
  if (std::abs(t) > 1.0 + 1e-14)
    throw std::domain_error("legendre_values: |t| must be <= 1");
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> p(l_max + 1);
  p[0] = 1.0;
  if (l_max >= 1) p[1] = t;
  for (int l = 1; l < l_max; ++l)
    p[l + 1] = ((2.0 * l + 1.0) * t * p[l] - l * p[l - 1]) / (l + 1.0);
  return p;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int l = 0; l < n; ++l) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * l + 1.0) * z * p1 - l * p2) / (l + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

void assoc_legendre(int l, int m, double theta, double& p, double& dp_dtheta) {
  if (m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
  const double x = std::cos(theta), s = std::sin(theta);
  // P_m^m = (2m-1)!! s^m, then upward in l.
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * s;
  if (l == m) {
    p = pmm;
    // d/dtheta [(2m-1)!! s^m] = m cot(theta) * P_m^m; safe off the poles.
    dp_dtheta = (m == 0) ? 0.0 : m * (x / s) * pmm;
    return;
  }
  double pm1 = pmm;                             // P_m^m
  double pl = x * (2.0 * m + 1.0) * pmm;        // P_{m+1}^m
  for (int ll = m + 2; ll <= l; ++ll) {
    const double pnew = ((2.0 * ll - 1.0) * x * pl - (ll + m - 1.0) * pm1) / (ll - m);
    pm1 = pl;
    pl = pnew;
  }
  p = pl;
  // dP_l^m(cos t)/dt = (l cos t P_l^m - (l+m) P_{l-1}^m) / sin t
  dp_dtheta = (l * x * pl - (l + m) * pm1) / s;
}

double real_sph_harm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  double p, dp;
  assoc_legendre(l, am, theta, p, dp);
  double norm = (2.0 * l + 1.0) / (4.0 * M_PI);
  for (int i = l - am + 1; i <= l + am; ++i) norm /= i;
  norm = std::sqrt(norm);
  if (m == 0) return norm * p;
  const double sq2 = std::sqrt(2.0);
  return (m > 0) ? sq2 * norm * p * std::cos(am * phi)
                 : sq2 * norm * p * std::sin(am * phi);
}

}  // namespace scatbound
