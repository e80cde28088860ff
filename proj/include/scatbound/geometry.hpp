// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace scatbound {

using Vec3 = std::array<double, 3>;
using Complex = std::complex<double>;
using Trace = std::vector<Complex>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 sub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 add(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return scaled(a, 1.0 / norm(a)); }

enum class SurfaceKind { sphere, ellipsoid, star_shaped };

/// One real spherical-harmonic-style term of a star-shaped radial perturbation:
/// (c_cos cos(m phi) + c_sin sin(m phi)) P_l^m(cos theta).
struct StarTerm {
  int l = 0;
  int m = 0;
  double c_cos = 0.0;
  double c_sin = 0.0;
};

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::sphere;
  double radius = 1.0;                 // sphere / star base radius
  std::array<double, 3> axes{1, 1, 1}; // ellipsoid semi-axes
  std::vector<StarTerm> star_terms;
};

/// Parametric closed surface (theta, phi) -> R^3 with analytic tangents,
/// outward normal and area Jacobian dS = jacobian d(theta) d(phi).
class Surface {
 public:
  struct Frame {
    Vec3 position, d_theta, d_phi, normal;
    double jacobian;
  };

  explicit Surface(SurfaceSpec spec);

  Frame frame(double theta, double phi) const;
  const SurfaceSpec& spec() const { return spec_; }

 private:
  // radial map for sphere/star kinds with partials
  double radial(double theta, double phi, double& d_theta, double& d_phi) const;
  SurfaceSpec spec_;
};

struct BoundaryGrid {
  std::vector<Vec3> nodes;
  std::vector<Vec3> normals;
  std::vector<double> weights;
  std::vector<double> thetas, phis;  // parameter values per node
  int n_theta = 0, n_phi = 0;
  Vec3 centroid{0, 0, 0};

  std::size_t size() const { return nodes.size(); }
  double area() const;
};

// Gauss-Legendre in cos(theta) x uniform trapezoid in phi.
// Requires n_theta >= 4, n_phi >= 8.
BoundaryGrid quadrature_grid(const Surface& surface, int n_theta, int n_phi);

// sqrt(sum_i w_i |v_i|^2); throws on length mismatch.
double l2_norm(const BoundaryGrid& grid, const Trace& values);

// Weighted complex inner product sum_i w_i v_i conj(u_i).
Complex inner(const BoundaryGrid& grid, const Trace& v, const Trace& u);

// CSV export: x,y,z,nx,ny,nz,w
void write_grid_csv(const BoundaryGrid& grid, const std::string& path);

}  // namespace scatbound
