// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <stdexcept>

#include "doctest.h"
#include "scatbound/geometry.hpp"
#include "scatbound/special.hpp"

using namespace scatbound;

namespace {

// adaptive Simpson, test-only oracle for the ellipsoid area
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const auto simpson = [&](double lo, double hi) {
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
  };
  std::function<double(double, double, double, double)> rec =
      [&](double lo, double hi, double whole, double eps) {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (std::abs(left + right - whole) < 15.0 * eps)
          return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, eps / 2) + rec(mid, hi, right, eps / 2);
      };
  return rec(a, b, simpson(a, b), tol);
}

Surface unit_sphere() { return Surface{SurfaceSpec{}}; }

}  // namespace

TEST_CASE("sphere point and normal at the equator") {
  const auto f = unit_sphere().frame(M_PI / 2, 0.0);
  CHECK(f.position[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(f.position[1]) < 1e-15);
  CHECK(std::abs(f.position[2]) < 1e-15);
  CHECK(f.normal[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("degenerate ellipsoid equals a sphere") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::ellipsoid;
  spec.axes = {2, 2, 2};
  const Surface ell(spec);
  SurfaceSpec ss;
  ss.radius = 2.0;
  const Surface sph(ss);
  for (double th : {0.4, 1.3, 2.8})
    for (double ph : {0.0, 1.0, 4.5}) {
      const auto a = ell.frame(th, ph), b = sph.frame(th, ph);
      for (int c = 0; c < 3; ++c) {
        CHECK(a.position[c] == doctest::Approx(b.position[c]).epsilon(1e-14));
        CHECK(a.normal[c] == doctest::Approx(b.normal[c]).epsilon(1e-12));
      }
      CHECK(a.jacobian == doctest::Approx(b.jacobian).epsilon(1e-13));
    }
}

TEST_CASE("zero star perturbation equals the unit sphere") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::star_shaped;
  spec.star_terms = {{2, 1, 0.0, 0.0}, {3, 0, 0.0, 0.0}};
  const Surface star(spec);
  const Surface sph = unit_sphere();
  for (double th : {0.7, 2.1})
    for (double ph : {0.3, 3.3}) {
      const auto a = star.frame(th, ph), b = sph.frame(th, ph);
      for (int c = 0; c < 3; ++c)
        CHECK(a.position[c] == doctest::Approx(b.position[c]).epsilon(1e-14));
    }
}

TEST_CASE("construction errors name the offending parameter") {
  SurfaceSpec bad;
  bad.radius = -1.0;
  CHECK_THROWS_WITH_AS(Surface{bad}, doctest::Contains("radius"),
                       std::invalid_argument);
  SurfaceSpec bade;
  bade.kind = SurfaceKind::ellipsoid;
  bade.axes = {1, -2, 1};
  CHECK_THROWS_AS(Surface{bade}, std::invalid_argument);
  SurfaceSpec bads;
  bads.kind = SurfaceKind::star_shaped;
  bads.radius = 1.0;
  bads.star_terms = {{0, 0, -5.0, 0.0}};  // radius 1 - 5 < 0
  CHECK_THROWS_AS(Surface{bads}, std::invalid_argument);
}

TEST_CASE("unit sphere area is 4 pi") {
  const auto g = quadrature_grid(unit_sphere(), 16, 32);
  CHECK(g.area() == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("ellipsoid area matches the 1D quadrature oracle") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::ellipsoid;
  spec.axes = {2, 1, 1};
  const auto g = quadrature_grid(Surface{spec}, 32, 64);
  // prolate spheroid about x: area = int_0^pi 2 pi rho sqrt(rho'(t)^2 + z'(t)^2)
  // with cross-section radius band; parametrize x = 2 cos t, r = sin t
  const double oracle = adaptive_simpson(
      [](double t) {
        const double dx = -2.0 * std::sin(t), dr = std::cos(t);
        return 2.0 * M_PI * std::sin(t) * std::sqrt(dx * dx + dr * dr);
      },
      0.0, M_PI, 1e-12);
  CHECK(oracle == doctest::Approx(21.478435327883736801).epsilon(1e-10));
  CHECK(g.area() == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("area self-convergence on a smooth star surface") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::star_shaped;
  spec.star_terms = {{3, 2, 0.05, 0.03}, {2, 0, 0.15, 0.0}};
  const Surface s(spec);
  const double a1 = quadrature_grid(s, 8, 16).area();
  const double a2 = quadrature_grid(s, 16, 32).area();
  const double a3 = quadrature_grid(s, 32, 64).area();
  CHECK(std::abs(a3 - a2) < std::abs(a2 - a1));
  // 10% slack monotonicity
  CHECK(std::abs(a3 - a2) < 1.1 * std::abs(a2 - a1));
}

TEST_CASE("grid invariants: unit normals, positive weights, outward orientation") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::ellipsoid;
  spec.axes = {1.5, 1.0, 0.8};
  const auto g = quadrature_grid(Surface{spec}, 12, 24);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(norm(g.normals[i]) - 1.0) < 1e-12);
    CHECK(g.weights[i] > 0.0);
    CHECK(dot(g.normals[i], sub(g.nodes[i], g.centroid)) > 0.0);
  }
}

TEST_CASE("normals orthogonal to finite-difference tangents") {
  SurfaceSpec spec;
  spec.kind = SurfaceKind::star_shaped;
  spec.star_terms = {{2, 1, 0.2, 0.1}};
  const Surface s(spec);
  const auto g = quadrature_grid(s, 8, 16);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    const double th = g.thetas[i], ph = g.phis[i], h = 1e-6;
    const Vec3 tth = scaled(
        sub(s.frame(th + h, ph).position, s.frame(th - h, ph).position), 1.0 / (2 * h));
    const Vec3 tph = scaled(
        sub(s.frame(th, ph + h).position, s.frame(th, ph - h).position), 1.0 / (2 * h));
    CHECK(std::abs(dot(tth, g.normals[i])) < 1e-8 * std::max(1.0, norm(tth)));
    CHECK(std::abs(dot(tph, g.normals[i])) < 1e-8 * std::max(1.0, norm(tph)));
  }
}

TEST_CASE("quadrature exactness for zonal harmonics on the sphere") {
  const int nt = 8;
  const auto g = quadrature_grid(unit_sphere(), nt, 16);
  for (int l = 1; l <= 2 * nt - 1; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      s += g.weights[i] * legendre_values(l, std::cos(g.thetas[i]))[l];
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("l2_norm basics") {
  const auto g = quadrature_grid(unit_sphere(), 8, 16);
  Trace ones(g.size(), 1.0);
  CHECK(l2_norm(g, ones) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-12));
  Trace zeros(g.size(), 0.0);
  CHECK(l2_norm(g, zeros) == 0.0);
  // unimodular integrand: plane wave trace has norm sqrt(S)
  Trace pw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    pw[i] = std::exp(Complex(0, 1) * (2.0 * g.nodes[i][2]));
  CHECK(l2_norm(g, pw) == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-12));
  Trace short_t(3, 1.0);
  CHECK_THROWS_AS(l2_norm(g, short_t), std::invalid_argument);
}

TEST_CASE("quadrature_grid rejects a resolution below minimum") {
  CHECK_THROWS_AS(quadrature_grid(unit_sphere(), 3, 32), std::invalid_argument);
  CHECK_THROWS_AS(quadrature_grid(unit_sphere(), 8, 4), std::invalid_argument);
}
