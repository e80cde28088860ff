// SPDX-License-Identifier: Apache-2.0

#include "scatbound/mie.hpp"

#include <cmath>
#include <stdexcept>

#include "scatbound/special.hpp"

namespace scatbound {

namespace {
constexpr Complex kImag{0.0, 1.0};

Complex ipow(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

DtnSphereSpectrum dtn_sphere_spectrum(double k, double R, int l_max) {
  if (k <= 0.0 || R <= 0.0)
    throw std::domain_error("dtn_sphere_spectrum: k and R must be positive");
  const auto t = radial_table(l_max, k * R);
  DtnSphereSpectrum s;
  s.k = k;
  s.R = R;
  s.mu.resize(l_max + 1);
  for (int l = 0; l <= l_max; ++l) s.mu[l] = k * t.hp(l) / t.h(l);
  return s;
}

ResolventReport resolvent_check(const DtnSphereSpectrum& spectrum, double a, double b) {
  if (b <= 0.0) throw std::domain_error("resolvent_check: b must be positive");
  ResolventReport r;
  r.a = a;
  r.b = b;
  r.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < spectrum.mu.size(); ++l) {
    const double m = std::abs(spectrum.mu[l] + Complex(a, b));
    if (m < r.min_margin) {
      r.min_margin = m;
      r.argmin_l = static_cast<int>(l);
    }
  }
  r.satisfied = r.min_margin >= b * (1.0 - 1e-14);
  return r;
}

MieSolution mie_solve(double k, double R, Complex gamma, const Vec3& incident,
                      int l_max) {
  if (k <= 0.0 || R <= 0.0)
    throw std::domain_error("mie_solve: k and R must be positive");
  if (gamma.imag() <= 0.0)
    throw std::domain_error("mie_solve: Im(gamma) must be positive");
  if (l_max < 0) l_max = static_cast<int>(std::ceil(k * R)) + 30;

  const auto t = radial_table(l_max, k * R);
  MieSolution sol;
  sol.k = k;
  sol.R = R;
  sol.gamma = gamma;
  sol.incident = normalized(incident);
  sol.coeff.resize(l_max + 1);
  for (int l = 0; l <= l_max; ++l) {
    const Complex num = k * t.jp[l] + k * gamma * t.j[l];
    const Complex den = k * t.hp(l) + k * gamma * t.h(l);
    if (std::abs(den) == 0.0)
      throw std::runtime_error("mie_solve: vanishing modal denominator");
    sol.coeff[l] = -ipow(l) * (2.0 * l + 1.0) * num / den;
  }
  return sol;
}

Complex mie_far_field(const MieSolution& sol, const Vec3& theta) {
  const double t = std::clamp(dot(normalized(theta), sol.incident), -1.0, 1.0);
  const int l_max = static_cast<int>(sol.coeff.size()) - 1;
  const auto p = legendre_values(l_max, t);
  Complex s = 0.0;
  for (int l = 0; l <= l_max; ++l) s += ipow(-(l + 1)) * sol.coeff[l] * p[l];
  return s / sol.k;
}

double mie_sigma_modal(const MieSolution& sol) {
  double s = 0.0;
  for (std::size_t l = 0; l < sol.coeff.size(); ++l)
    s += 4.0 * M_PI * std::norm(sol.coeff[l]) / (sol.k * sol.k * (2.0 * l + 1.0));
  return s;
}

void mie_boundary_traces(const MieSolution& sol, const BoundaryGrid& grid,
                         Trace& u, Trace& dnu) {
  const int l_max = static_cast<int>(sol.coeff.size()) - 1;
  const auto t = radial_table(l_max, sol.k * sol.R);
  u.assign(grid.size(), 0.0);
  dnu.assign(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = norm(grid.nodes[i]);
    if (std::abs(r - sol.R) > 1e-12 * sol.R)
      throw std::invalid_argument("mie_boundary_traces: grid not on the sphere");
    const double ct =
        std::clamp(dot(grid.nodes[i], sol.incident) / r, -1.0, 1.0);
    const auto p = legendre_values(l_max, ct);
    Complex uv = 0.0, dv = 0.0;
    for (int l = 0; l <= l_max; ++l) {
      uv += sol.coeff[l] * t.h(l) * p[l];
      dv += sol.coeff[l] * sol.k * t.hp(l) * p[l];
    }
    u[i] = uv;
    dnu[i] = dv;
  }
}

Trace plane_wave_rhs(const BoundaryGrid& grid, double k, const Vec3& incident,
                     const Trace& eta) {
  if (eta.size() != grid.size())
    throw std::invalid_argument("plane_wave_rhs: eta/grid length mismatch");
  const Vec3 d = normalized(incident);
  Trace f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex pw = std::exp(kImag * (k * dot(grid.nodes[i], d)));
    f[i] = -pw * (kImag * k * dot(grid.normals[i], d) + eta[i]);
  }
  return f;
}

}  // namespace scatbound
