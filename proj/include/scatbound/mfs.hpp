// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "scatbound/bounds.hpp"
#include "scatbound/geometry.hpp"
#include "scatbound/impedance.hpp"

namespace scatbound {

struct SourceSet {
  std::vector<Vec3> points;
  std::size_t size() const { return points.size(); }
};

// Sources on the surface shrunk toward the centroid, quasi-uniform in the
// parameter domain (Fibonacci lattice in (cos theta, phi)).
SourceSet place_sources(const Surface& surface, const BoundaryGrid& grid,
                        double shrink, int count);

/// Field u(r) = sum_j c_j Phi(r, s_j), Phi(r,s) = e^{ik|r-s|}/(4 pi |r-s|).
/// Exact Helmholtz + radiation by construction; only the boundary condition
/// is approximate.
struct MfsSolution {
  double k = 0.0;
  SourceSet sources;
  std::vector<Complex> coeff;
  int effective_rank = 0;
  double weighted_residual = 0.0;  // sqrt of the minimized functional
};

// Weighted least squares min sum_i w_i |(d/dn + eta_i) u (x_i) - f_i|^2,
// solved by SVD with relative truncation tolerance `svd_tol`.
// Rejects impedances with min Im eta <= 0.
MfsSolution solve_impedance(const BoundaryGrid& grid, const SourceSet& sources,
                            double k, const Impedance& eta, const Trace& f,
                            double svd_tol = 1e-12);

// Dirichlet variant: min sum_i w_i |u(x_i) - f_i|^2.
MfsSolution solve_dirichlet(const BoundaryGrid& grid, const SourceSet& sources,
                            double k, const Trace& f, double svd_tol = 1e-12);

std::vector<Complex> evaluate(const MfsSolution& sol, std::span<const Vec3> points);
Trace evaluate_trace(const MfsSolution& sol, const BoundaryGrid& grid);
Trace evaluate_normal_derivative(const MfsSolution& sol, const BoundaryGrid& grid);

Complex mfs_far_field(const MfsSolution& sol, const Vec3& theta);

Residual boundary_residual(const MfsSolution& sol, const BoundaryGrid& grid,
                           const Impedance& eta, const Trace& f);

/// Discrete DtN matrix in an orthonormal spherical-harmonic-style boundary
/// basis, assembled from MFS exterior Dirichlet solves.
struct DtnMatrixResult {
  int basis_degree = 0;
  std::size_t dim = 0;
  std::vector<Complex> matrix;  // row-major dim x dim
  std::vector<Complex> eigenvalues;
  double max_dirichlet_residual = 0.0;
  bool reliable = false;
};

// Requires grid.size() >= 4 * sources.size().
DtnMatrixResult dtn_matrix(const Surface& surface, const BoundaryGrid& grid,
                           const SourceSet& sources, double k,
                           int basis_degree = 8,
                           double residual_threshold = 1e-4);

}  // namespace scatbound
