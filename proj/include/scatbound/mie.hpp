// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "scatbound/geometry.hpp"

namespace scatbound {

/// DtN eigenvalues of a sphere of radius R at wavenumber k:
/// mu_l = k h'_l(kR) / h_l(kR), one per mode l.
struct DtnSphereSpectrum {
  double k = 0.0, R = 0.0;
  std::vector<Complex> mu;
};

DtnSphereSpectrum dtn_sphere_spectrum(double k, double R, int l_max);

struct ResolventReport {
  double a = 0.0, b = 0.0;
  double min_margin = 0.0;  // min_l |mu_l + a + i b|
  int argmin_l = 0;
  bool satisfied = false;   // min_margin >= b
};

// Lower bound |(DtN + a + ib)^{-1}|^{-1} >= b, checked mode by mode.
// Throws std::domain_error for b <= 0.
ResolventReport resolvent_check(const DtnSphereSpectrum& spectrum, double a, double b);

/// Modal solution of plane-wave scattering by an impedance sphere
/// (boundary operator d/dn + k gamma, constant gamma with Im gamma > 0).
/// Scattered field u(r) = sum_l a_l h_l(k|r|) P_l(cos angle(r, incident)).
struct MieSolution {
  double k = 0.0, R = 0.0;
  Complex gamma;
  Vec3 incident{0, 0, 1};
  std::vector<Complex> coeff;  // a_l
};

// l_max < 0 selects the default ceil(kR) + 30.
MieSolution mie_solve(double k, double R, Complex gamma, const Vec3& incident,
                      int l_max = -1);

// Scattering amplitude u_inf(theta) = (1/k) sum_l (-i)^{l+1} a_l P_l(theta . theta0).
Complex mie_far_field(const MieSolution& sol, const Vec3& theta);

// Total cross section from the modal Parseval sum 4 pi |a_l|^2 / (k^2 (2l+1)).
double mie_sigma_modal(const MieSolution& sol);

// Scattered-field traces u and du/dn on a grid lying on the sphere |r| = R.
void mie_boundary_traces(const MieSolution& sol, const BoundaryGrid& grid,
                         Trace& u, Trace& dnu);

// Plane-wave boundary data f = -(d/dn + eta) e^{ik r.theta0} sampled on a grid.
Trace plane_wave_rhs(const BoundaryGrid& grid, double k, const Vec3& incident,
                     const Trace& eta);

}  // namespace scatbound
