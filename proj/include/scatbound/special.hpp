// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace scatbound {

/// Spherical Bessel functions j_l, y_l with derivatives at a fixed argument,
/// tabulated for l = 0..l_max.  h_l = j_l + i y_l.
struct RadialFunctionTable {
  int l_max = 0;
  double x = 0.0;
  std::vector<double> j, y, jp, yp;

  std::complex<double> h(int l) const { return {j[l], y[l]}; }
  std::complex<double> hp(int l) const { return {jp[l], yp[l]}; }
};

// j_l by downward (Miller) recurrence, y_l upward, derivatives from
// f'_l = f_{l-1} - (l+1)/x f_l.  Throws std::domain_error for x <= 0.
RadialFunctionTable radial_table(int l_max, double x);

// Legendre polynomials P_0..P_{l_max} at t in [-1,1].
std::vector<double> legendre_values(int l_max, double t);

// Gauss-Legendre rule on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Associated Legendre P_l^m(cos(theta)) (no Condon-Shortley phase) together
// with the theta-derivative.  Used for star-shaped radii and the discrete
// spherical-harmonic basis.
void assoc_legendre(int l, int m, double theta, double& p, double& dp_dtheta);

// Orthonormal real spherical harmonic Y_{lm} at (theta, phi); m in [-l, l]
// (negative m = sine branch).
double real_sph_harm(int l, int m, double theta, double phi);

}  // namespace scatbound
