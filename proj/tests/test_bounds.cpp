// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "scatbound/bounds.hpp"
#include "scatbound/geometry.hpp"
#include "scatbound/mie.hpp"
#include "scatbound/mfs.hpp"

using namespace scatbound;

namespace {

const Vec3 kZ{0, 0, 1};

MfsSolution point_source(double k) {
  MfsSolution sol;
  sol.k = k;
  sol.sources.points = {{0, 0, 0}};
  sol.coeff = {Complex(1, 0)};
  return sol;
}

FarFieldGrid mie_far_grid(const MieSolution& sol, int nt = 64, int np = 128) {
  auto ff = direction_grid(nt, np);
  ff.k = sol.k;
  ff.incident = sol.incident;
  ff.values.resize(ff.size());
  for (std::size_t i = 0; i < ff.size(); ++i)
    ff.values[i] = mie_far_field(sol, ff.directions[i]);
  return ff;
}

}  // namespace

TEST_CASE("far_field_from_traces: point-source kernel and zero traces") {
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 16, 32);
  const auto src = point_source(1.0);
  const auto u = evaluate_trace(src, grid);
  const auto dnu = evaluate_normal_derivative(src, grid);
  for (const Vec3& th : {kZ, Vec3{1, 0, 0}, normalized(Vec3{1, 1, 1})}) {
    const Complex v = far_field_from_traces(grid, u, dnu, 1.0, th);
    CHECK(std::abs(v - 1.0 / (4.0 * M_PI)) <= 1e-10);
  }
  const Trace zeros(grid.size(), 0.0);
  CHECK(std::abs(far_field_from_traces(grid, zeros, zeros, 1.0, kZ)) == 0.0);
}

TEST_CASE("far_field_gradient vanishes for a spherically symmetric far field") {
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 16, 32);
  const auto src = point_source(1.0);
  const auto u = evaluate_trace(src, grid);
  const auto dnu = evaluate_normal_derivative(src, grid);
  const auto g = far_field_gradient(grid, u, dnu, 1.0, normalized({0.3, 0.5, 1}));
  CHECK(std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2])) < 1e-10);
}

TEST_CASE("far_field_gradient: tangency and finite-difference agreement") {
  const auto sol = mie_solve(1.0, 1.0, Complex(1, 1), kZ);
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 24, 48);
  Trace u, dnu;
  mie_boundary_traces(sol, grid, u, dnu);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> un(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 th = normalized({un(rng), un(rng), un(rng)});
    const auto g = far_field_gradient(grid, u, dnu, sol.k, th);
    const Complex radial = g[0] * th[0] + g[1] * th[1] + g[2] * th[2];
    CHECK(std::abs(radial) < 1e-12);

    // two tangent directions
    Vec3 t1 = cross(th, std::abs(th[2]) < 0.9 ? kZ : Vec3{1, 0, 0});
    t1 = normalized(t1);
    const Vec3 t2 = cross(th, t1);
    const double h = 1e-5;
    for (const Vec3& t : {t1, t2}) {
      const Vec3 thp = normalized(add(th, scaled(t, h)));
      const Vec3 thm = normalized(sub(th, scaled(t, h)));
      const Complex fd = (far_field_from_traces(grid, u, dnu, sol.k, thp) -
                          far_field_from_traces(grid, u, dnu, sol.k, thm)) /
                         (2.0 * h);
      const Complex an = g[0] * t[0] + g[1] * t[1] + g[2] * t[2];
      CHECK(std::abs(fd - an) <= 1e-6);
    }
  }
}

TEST_CASE("cross sections: constant amplitude, zero field, isotropic transport") {
  auto ff = direction_grid(32, 64);
  ff.k = 1.0;
  ff.incident = kZ;
  ff.values.assign(ff.size(), Complex(1.0 / (4.0 * M_PI), 0.0));
  CHECK(total_cross_section(ff) ==
        doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
  // isotropic: the theta.theta0 term integrates to zero
  CHECK(transport_cross_section(ff) ==
        doctest::Approx(total_cross_section(ff)).epsilon(1e-12));
  ff.values.assign(ff.size(), Complex(0, 0));
  CHECK(total_cross_section(ff) == 0.0);
}

TEST_CASE("back-scattering concentration drives R toward 2 sigma") {
  auto ff = direction_grid(96, 192);
  ff.k = 1.0;
  ff.incident = kZ;
  ff.values.resize(ff.size());
  for (std::size_t i = 0; i < ff.size(); ++i) {
    const double t = dot(ff.directions[i], kZ);
    ff.values[i] = std::exp(-80.0 * (1.0 + t));  // peaked at theta = -theta0
  }
  const double sigma = total_cross_section(ff);
  const double R = transport_cross_section(ff);
  CHECK(R / sigma == doctest::Approx(2.0).epsilon(0.02));
  CHECK(R / sigma <= 2.0);
}

TEST_CASE("transport normalization holds for Mie far fields") {
  for (double k : {0.5, 2.0}) {
    const auto sol = mie_solve(k, 1.0, Complex(0.5, 1.5), kZ);
    const auto ff = mie_far_grid(sol);
    const double sigma = total_cross_section(ff);
    const double R = transport_cross_section(ff);
    CHECK(R / sigma >= 0.0);
    CHECK(R / sigma <= 2.0);
    const double S = 4.0 * M_PI;
    CHECK(R >= transport_lower_bound(sigma, k, 1.5, std::sqrt(2.5), S));
  }
}

TEST_CASE("Green identity closed form for the point source") {
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 16, 32);
  const auto src = point_source(1.0);
  const auto u = evaluate_trace(src, grid);
  const auto dnu = evaluate_normal_derivative(src, grid);
  // Im int dnu conj(u) = k/(4 pi), and sigma = 1/(4 pi)
  const double im = inner(grid, dnu, u).imag();
  CHECK(im == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-10));
  auto ff = direction_grid(16, 32);
  ff.k = 1.0;
  ff.incident = kZ;
  ff.values.assign(ff.size(), Complex(1.0 / (4.0 * M_PI), 0.0));
  CHECK(greens_identity_check(grid, u, dnu, ff) <= 1e-10);
}

TEST_CASE("certify: direct substitution and degenerate residual") {
  Residual res;
  res.eta = Impedance::from_eta(Trace(10, Complex(0, 2)));
  // force sup |eta| = 4 via one sample with |eta| = 4, Im >= 2
  res.eta.eta[3] = Complex(std::sqrt(12.0), 2.0);
  res.norm = 1.0;
  const auto rep = certify(res, 1.0);
  CHECK(rep.bound_field == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.bound_dn == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(rep.bound_sigma_sq == doctest::Approx(1.5).epsilon(1e-14));

  res.norm = 0.0;
  const auto zero = certify(res, 1.0);
  CHECK(zero.bound_field == 0.0);
  CHECK(zero.bound_dn == 0.0);
  CHECK(zero.bound_sigma_sq == 0.0);

  Residual bad;
  bad.eta = Impedance::from_eta(Trace(4, Complex(1, -1)));
  CHECK_THROWS_AS(certify(bad, 1.0), std::domain_error);
}

TEST_CASE("apriori_bounds direct substitution at k=1, gamma=i, S=4pi") {
  const auto b = apriori_bounds(1.0, 1.0, 1.0, 4.0 * M_PI);
  CHECK(b.f1 == doctest::Approx(4.0 * std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(b.f3 == doctest::Approx(32.0 * M_PI).epsilon(1e-14));
  CHECK(b.alm1 == doctest::Approx(32.0 * M_PI).epsilon(1e-14));
  CHECK(b.amplitude_cap == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(b.ff2 == b.f1);
  CHECK(b.lastlast == doctest::Approx(4.0 * 2.0 * std::sqrt(M_PI)).epsilon(1e-14));
  CHECK_THROWS_AS(apriori_bounds(0.0, 1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(apriori_bounds(1, -1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(apriori_bounds(1, 2, 1, 1), std::domain_error);  // Gamma < gamma0
}

TEST_CASE("a-priori bounds are monotone in Gamma and gamma0") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> un(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double k = un(rng), S = un(rng) * 10, g0 = un(rng);
    const double G = g0 + un(rng);
    const auto b = apriori_bounds(k, g0, G, S);
    const auto bG = apriori_bounds(k, g0, G + 0.3, S);
    const auto bg = apriori_bounds(k, g0 * 0.7, G, S);
    for (auto get : {+[](const AprioriBounds& x) { return x.f1; },
                     +[](const AprioriBounds& x) { return x.f2; },
                     +[](const AprioriBounds& x) { return x.f3; },
                     +[](const AprioriBounds& x) { return x.f4; },
                     +[](const AprioriBounds& x) { return x.lastlast; },
                     +[](const AprioriBounds& x) { return x.alm1; },
                     +[](const AprioriBounds& x) { return x.amplitude_cap; }}) {
      CHECK(get(bG) >= get(b));
      CHECK(get(bg) >= get(b));
    }
  }
}

TEST_CASE("verify_all passes on the Mie unit-sphere instance") {
  const double k = 1.0;
  const auto sol = mie_solve(k, 1.0, Complex(0, 1), kZ);
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 24, 48);
  Trace u, dnu;
  mie_boundary_traces(sol, grid, u, dnu);
  const auto ff = mie_far_grid(sol, 32, 64);
  const auto spec = dtn_sphere_spectrum(k, 1.0, 60);

  VerifyInput in;
  in.grid = &grid;
  in.u = &u;
  in.dnu = &dnu;
  in.ff = &ff;
  in.k = k;
  in.gamma0 = 1.0;
  in.Gamma = 1.0;
  in.S = grid.area();
  in.spectrum = &spec;
  const auto rows = verify_all(in);
  REQUIRE(rows.size() == 8);
  const std::vector<std::string> ids{"f1", "f2", "f3", "f4",
                                     "M",  "trcs", "sigma_identity", "resolvent"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == ids[i]);
    CHECK(rows[i].pass);
  }
}

TEST_CASE("verify_all: zero far field gives a vacuous transport row") {
  const double k = 1.0;
  const auto grid = quadrature_grid(Surface{SurfaceSpec{}}, 12, 24);
  const Trace zeros(grid.size(), 0.0);
  auto ff = direction_grid(16, 32);
  ff.k = k;
  ff.incident = kZ;
  ff.values.assign(ff.size(), 0.0);
  VerifyInput in;
  in.grid = &grid;
  in.u = &zeros;
  in.dnu = &zeros;
  in.ff = &ff;
  in.k = k;
  in.gamma0 = 1.0;
  in.Gamma = 1.0;
  in.S = grid.area();
  const auto rows = verify_all(in);
  for (const auto& r : rows)
    if (r.id == "trcs") {
      CHECK(r.lhs == 0.0);
      CHECK(r.rhs == 0.0);
      CHECK(r.pass);
    }
}
