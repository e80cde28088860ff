// SPDX-License-Identifier: Apache-2.0

#include "scatbound/mfs.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "scatbound/special.hpp"

namespace scatbound {

namespace {

constexpr Complex kImag{0.0, 1.0};

Complex kernel(const Vec3& r, const Vec3& s, double k) {
  const double d = norm(sub(r, s));
  return std::exp(kImag * (k * d)) / (4.0 * M_PI * d);
}

// n . grad_r Phi(r, s)
Complex kernel_dn(const Vec3& r, const Vec3& s, const Vec3& n, double k) {
  const Vec3 dv = sub(r, s);
  const double d = norm(dv);
  const Complex phi = std::exp(kImag * (k * d)) / (4.0 * M_PI * d);
  return phi * (kImag * k - 1.0 / d) * (dot(dv, n) / d);
}

MfsSolution solve_weighted(const BoundaryGrid& grid, const SourceSet& sources,
                           double k, const Eigen::MatrixXcd& rows,
                           const Trace& f, double svd_tol) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = std::sqrt(grid.weights[i]) * f[i];

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(rows,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(svd_tol);
  const Eigen::VectorXcd c = svd.solve(b);

  MfsSolution sol;
  sol.k = k;
  sol.sources = sources;
  sol.coeff.assign(c.data(), c.data() + c.size());
  sol.effective_rank = static_cast<int>(svd.rank());
  sol.weighted_residual = (rows * c - b).norm();
  for (const auto& cc : sol.coeff)
    if (!std::isfinite(cc.real()) || !std::isfinite(cc.imag()))
      throw std::runtime_error("solve_impedance: non-finite coefficients");
  return sol;
}

}  // namespace

SourceSet place_sources(const Surface& surface, const BoundaryGrid& grid,
                        double shrink, int count) {
  if (shrink <= 0.0 || shrink >= 1.0)
    throw std::invalid_argument("place_sources: shrink must be in (0,1)");
  if (count < 1) throw std::invalid_argument("place_sources: count must be >= 1");

  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  SourceSet set;
  set.points.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double z = (count == 1) ? 1.0 - 1e-9 : 1.0 - (2.0 * j + 1.0) / count;
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    const double phi = std::fmod(2.0 * M_PI * j / golden, 2.0 * M_PI);
    const Vec3 p = surface.frame(theta, phi).position;
    set.points.push_back(
        add(grid.centroid, scaled(sub(p, grid.centroid), shrink)));
  }
  // interior sanity: keep a positive distance from the sampled boundary
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& s : set.points)
    for (const auto& x : grid.nodes)
      min_gap = std::min(min_gap, norm(sub(s, x)));
  if (min_gap <= 1e-9)
    throw std::invalid_argument(
        "place_sources: shrink leaves a source on the boundary (self-intersection)");
  for (std::size_t a = 0; a < set.points.size(); ++a)
    for (std::size_t b = a + 1; b < set.points.size(); ++b)
      if (norm(sub(set.points[a], set.points[b])) < 1e-12)
        throw std::invalid_argument("place_sources: coincident sources");
  return set;
}

MfsSolution solve_impedance(const BoundaryGrid& grid, const SourceSet& sources,
                            double k, const Impedance& eta, const Trace& f,
                            double svd_tol) {
  if (eta.eta.size() != grid.size() || f.size() != grid.size())
    throw std::invalid_argument("solve_impedance: sample/grid length mismatch");
  if (eta.eta0() <= 0.0)
    throw std::domain_error("solve_impedance: impedance needs min Im eta > 0");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(sources.size());
  Eigen::MatrixXcd A(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sw = std::sqrt(grid.weights[i]);
    for (Eigen::Index j = 0; j < m; ++j)
      A(i, j) = sw * (kernel_dn(grid.nodes[i], sources.points[j],
                                grid.normals[i], k) +
                      eta.eta[i] * kernel(grid.nodes[i], sources.points[j], k));
  }
  return solve_weighted(grid, sources, k, A, f, svd_tol);
}

MfsSolution solve_dirichlet(const BoundaryGrid& grid, const SourceSet& sources,
                            double k, const Trace& f, double svd_tol) {
  if (f.size() != grid.size())
    throw std::invalid_argument("solve_dirichlet: sample/grid length mismatch");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(sources.size());
  Eigen::MatrixXcd A(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sw = std::sqrt(grid.weights[i]);
    for (Eigen::Index j = 0; j < m; ++j)
      A(i, j) = sw * kernel(grid.nodes[i], sources.points[j], k);
  }
  return solve_weighted(grid, sources, k, A, f, svd_tol);
}

std::vector<Complex> evaluate(const MfsSolution& sol, std::span<const Vec3> points) {
  std::vector<Complex> out(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < sol.sources.size(); ++j) {
      if (norm(sub(points[i], sol.sources.points[j])) < 1e-14)
        throw std::invalid_argument("evaluate: point coincides with a source");
      out[i] += sol.coeff[j] * kernel(points[i], sol.sources.points[j], sol.k);
    }
  }
  return out;
}

Trace evaluate_trace(const MfsSolution& sol, const BoundaryGrid& grid) {
  return evaluate(sol, std::span<const Vec3>(grid.nodes));
}

Trace evaluate_normal_derivative(const MfsSolution& sol, const BoundaryGrid& grid) {
  Trace out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < sol.sources.size(); ++j)
      out[i] += sol.coeff[j] * kernel_dn(grid.nodes[i], sol.sources.points[j],
                                         grid.normals[i], sol.k);
  return out;
}

Complex mfs_far_field(const MfsSolution& sol, const Vec3& theta) {
  const Vec3 th = normalized(theta);
  Complex s = 0.0;
  for (std::size_t j = 0; j < sol.sources.size(); ++j)
    s += sol.coeff[j] *
         std::exp(-kImag * (sol.k * dot(th, sol.sources.points[j])));
  return s / (4.0 * M_PI);
}

Residual boundary_residual(const MfsSolution& sol, const BoundaryGrid& grid,
                           const Impedance& eta, const Trace& f) {
  if (eta.eta.size() != grid.size() || f.size() != grid.size())
    throw std::invalid_argument("boundary_residual: sample/grid length mismatch");
  Residual res;
  res.eta = eta;
  res.alpha.assign(grid.size(), 0.0);
  const Trace u = evaluate_trace(sol, grid);
  const Trace dnu = evaluate_normal_derivative(sol, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    res.alpha[i] = dnu[i] + eta.eta[i] * u[i] - f[i];
  res.norm = l2_norm(grid, res.alpha);
  return res;
}

DtnMatrixResult dtn_matrix(const Surface& surface, const BoundaryGrid& grid,
                           const SourceSet& sources, double k, int basis_degree,
                           double residual_threshold) {
  (void)surface;
  if (grid.size() < 4 * sources.size())
    throw std::invalid_argument("dtn_matrix: need node count >= 4 x source count");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const auto m = static_cast<Eigen::Index>(sources.size());
  const Eigen::Index dim = (basis_degree + 1) * (basis_degree + 1);

  // smooth boundary basis: real spherical harmonics in the node parameters
  Eigen::MatrixXd B(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index col = 0;
    for (int l = 0; l <= basis_degree; ++l)
      for (int mm = -l; mm <= l; ++mm)
        B(i, col++) = real_sph_harm(l, mm, grid.thetas[i], grid.phis[i]);
  }
  // orthonormalize in the weighted inner product
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = grid.weights[i];
  const Eigen::MatrixXd G = B.transpose() * w.asDiagonal() * B;
  const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(G).matrixL();
  const Eigen::MatrixXd Bo =
      L.triangularView<Eigen::Lower>().solve(B.transpose()).transpose();

  // one SVD of the Dirichlet system, reused for every basis column
  Eigen::MatrixXcd A(n, m);
  Eigen::VectorXd sw = w.array().sqrt();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      A(i, j) = sw(i) * kernel(grid.nodes[i], sources.points[j], k);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);

  const Eigen::MatrixXcd rhs = sw.asDiagonal() * Bo;
  const Eigen::MatrixXcd C = svd.solve(rhs);

  DtnMatrixResult out;
  out.basis_degree = basis_degree;
  out.dim = static_cast<std::size_t>(dim);
  out.max_dirichlet_residual = 0.0;
  for (Eigen::Index q = 0; q < dim; ++q) {
    const double r = (A * C.col(q) - rhs.col(q)).norm() / rhs.col(q).norm();
    out.max_dirichlet_residual = std::max(out.max_dirichlet_residual, r);
  }

  // normal-derivative traces of every solve
  Eigen::MatrixXcd Dn(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      Dn(i, j) = kernel_dn(grid.nodes[i], sources.points[j], grid.normals[i], k);
  const Eigen::MatrixXcd traces = Dn * C;  // n x dim

  const Eigen::MatrixXcd D =
      Bo.transpose().cast<Complex>() * w.asDiagonal() * traces;
  out.matrix.assign(D.data(), D.data() + D.size());  // column-major is fine internally

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(D, false);
  const auto& ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  out.reliable = out.max_dirichlet_residual <= residual_threshold;
  return out;
}

}  // namespace scatbound
