// SPDX-License-Identifier: Apache-2.0

#include "scatbound/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "scatbound/special.hpp"

namespace scatbound {

namespace {

void validate_spec(const SurfaceSpec& spec) {
  switch (spec.kind) {
    case SurfaceKind::sphere:
      if (spec.radius <= 0.0)
        throw std::invalid_argument("Surface: radius must be positive");
      break;
    case SurfaceKind::ellipsoid:
      for (int i = 0; i < 3; ++i)
        if (spec.axes[i] <= 0.0)
          throw std::invalid_argument("Surface: semi-axis " +
                                      std::string(1, "abc"[i]) +
                                      " must be positive");
      break;
    case SurfaceKind::star_shaped: {
      if (spec.radius <= 0.0)
        throw std::invalid_argument("Surface: base radius must be positive");
      for (const auto& t : spec.star_terms)
        if (t.m < 0 || t.m > t.l)
          throw std::invalid_argument("Surface: star term needs 0 <= m <= l");
      break;
    }
  }
}

}  // namespace

Surface::Surface(SurfaceSpec spec) : spec_(std::move(spec)) {
  validate_spec(spec_);
  if (spec_.kind == SurfaceKind::star_shaped) {
    // positivity of r(theta,phi) on a dense grid
    const int nt = 181, np = 360;
    for (int i = 1; i < nt; ++i) {
      const double th = M_PI * i / nt;
      for (int j = 0; j < np; ++j) {
        double dt, dp;
        const double r = radial(th, 2.0 * M_PI * j / np, dt, dp);
        if (r <= 1e-9 * spec_.radius)
          throw std::invalid_argument(
              "Surface: star-shaped radius crosses zero (perturbation too large)");
      }
    }
  }
}

double Surface::radial(double theta, double phi, double& d_theta,
                       double& d_phi) const {
  double r = spec_.radius;
  d_theta = 0.0;
  d_phi = 0.0;
  for (const auto& t : spec_.star_terms) {
    double p, dp;
    assoc_legendre(t.l, t.m, theta, p, dp);
    const double c = std::cos(t.m * phi), s = std::sin(t.m * phi);
    const double ang = t.c_cos * c + t.c_sin * s;
    const double dang = t.m * (-t.c_cos * s + t.c_sin * c);
    r += ang * p;
    d_theta += ang * dp;
    d_phi += dang * p;
  }
  return r;
}

Surface::Frame Surface::frame(double theta, double phi) const {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);

  Frame f{};
  if (spec_.kind == SurfaceKind::ellipsoid) {
    const auto [a, b, c] = spec_.axes;
    f.position = {a * st * cp, b * st * sp, c * ct};
    f.d_theta = {a * ct * cp, b * ct * sp, -c * st};
    f.d_phi = {-a * st * sp, b * st * cp, 0.0};
  } else {
    double rt, rp;
    const double r = radial(theta, phi, rt, rp);
    const Vec3 er{st * cp, st * sp, ct};
    const Vec3 et{ct * cp, ct * sp, -st};
    const Vec3 ep{-st * sp, st * cp, 0.0};  // = sin(theta) * phi-hat
    f.position = scaled(er, r);
    f.d_theta = add(scaled(er, rt), scaled(et, r));
    f.d_phi = add(scaled(er, rp), scaled(ep, r));
  }
  const Vec3 cr = cross(f.d_theta, f.d_phi);
  f.jacobian = norm(cr);
  f.normal = scaled(cr, 1.0 / f.jacobian);
  return f;
}

BoundaryGrid quadrature_grid(const Surface& surface, int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 8)
    throw std::invalid_argument("quadrature_grid: need n_theta >= 4, n_phi >= 8");

  std::vector<double> gl_t, gl_w;
  gauss_legendre(n_theta, gl_t, gl_w);

  BoundaryGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  g.nodes.reserve(n);
  g.normals.reserve(n);
  g.weights.reserve(n);
  g.thetas.reserve(n);
  g.phis.reserve(n);

  const double wphi = 2.0 * M_PI / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl_t[n_theta - 1 - i]);  // descending cos
    const double st = std::sin(theta);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      const auto f = surface.frame(theta, phi);
      g.nodes.push_back(f.position);
      g.normals.push_back(f.normal);
      // dS = J dtheta dphi; substituting t = cos(theta): dS = J/sin(theta) dt dphi
      g.weights.push_back(gl_w[n_theta - 1 - i] * wphi * f.jacobian / st);
      g.thetas.push_back(theta);
      g.phis.push_back(phi);
    }
  }

  double wsum = 0.0;
  Vec3 c{0, 0, 0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    wsum += g.weights[i];
    c = add(c, scaled(g.nodes[i], g.weights[i]));
  }
  g.centroid = scaled(c, 1.0 / wsum);
  return g;
}

double BoundaryGrid::area() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double l2_norm(const BoundaryGrid& grid, const Trace& values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("l2_norm: trace/grid length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    s += grid.weights[i] * std::norm(values[i]);
  return std::sqrt(s);
}

Complex inner(const BoundaryGrid& grid, const Trace& v, const Trace& u) {
  if (v.size() != grid.size() || u.size() != grid.size())
    throw std::invalid_argument("inner: trace/grid length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += grid.weights[i] * v[i] * std::conj(u[i]);
  return s;
}

void write_grid_csv(const BoundaryGrid& grid, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_grid_csv: cannot open " + path);
  std::fprintf(f, "x,y,z,nx,ny,nz,w\n");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = grid.nodes[i];
    const auto& n = grid.normals[i];
    std::fprintf(f, "%.17e,%.17e,%.17e,%.17e,%.17e,%.17e,%.17e\n", p[0], p[1],
                 p[2], n[0], n[1], n[2], grid.weights[i]);
  }
  std::fclose(f);
}

}  // namespace scatbound
