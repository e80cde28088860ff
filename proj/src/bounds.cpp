// SPDX-License-Identifier: Apache-2.0

#include "scatbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "scatbound/special.hpp"

namespace scatbound {

namespace {
constexpr Complex kImag{0.0, 1.0};
}

FarFieldGrid direction_grid(int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 8)
    throw std::invalid_argument("direction_grid: need n_theta >= 4, n_phi >= 8");
  std::vector<double> t, w;
  gauss_legendre(n_theta, t, w);
  FarFieldGrid g;
  const double wphi = 2.0 * M_PI / n_phi;
  g.directions.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  g.weights.reserve(g.directions.capacity());
  for (int i = 0; i < n_theta; ++i) {
    const double ct = t[n_theta - 1 - i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = wphi * j;
      g.directions.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      g.weights.push_back(w[n_theta - 1 - i] * wphi);
    }
  }
  return g;
}

Complex far_field_from_traces(const BoundaryGrid& grid, const Trace& u,
                              const Trace& dnu, double k, const Vec3& theta) {
  if (u.size() != grid.size() || dnu.size() != grid.size())
    throw std::invalid_argument("far_field_from_traces: trace/grid mismatch");
  const Vec3 th = normalized(theta);
  Complex s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex phase = std::exp(-kImag * (k * dot(th, grid.nodes[i])));
    s += grid.weights[i] *
         (dnu[i] + kImag * k * dot(grid.normals[i], th) * u[i]) * phase;
  }
  // outward-normal convention flips the sign of the classical representation
  return -s / (4.0 * M_PI);
}

std::array<Complex, 3> far_field_gradient(const BoundaryGrid& grid,
                                          const Trace& u, const Trace& dnu,
                                          double k, const Vec3& theta) {
  if (u.size() != grid.size() || dnu.size() != grid.size())
    throw std::invalid_argument("far_field_gradient: trace/grid mismatch");
  const Vec3 th = normalized(theta);
  std::array<Complex, 3> g{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3& x = grid.nodes[i];
    const Vec3& n = grid.normals[i];
    const Complex phase = std::exp(-kImag * (k * dot(th, x)));
    const Complex kern = dnu[i] + kImag * k * dot(n, th) * u[i];
    // tangential projections v - (v.theta) theta
    const Vec3 np = sub(n, scaled(th, dot(n, th)));
    const Vec3 xp = sub(x, scaled(th, dot(x, th)));
    for (int c = 0; c < 3; ++c)
      g[c] += grid.weights[i] * phase *
              (kImag * k * np[c] * u[i] - kImag * k * xp[c] * kern);
  }
  for (auto& c : g) c /= -4.0 * M_PI;
  return g;
}

double total_cross_section(const FarFieldGrid& ff) {
  if (ff.values.size() != ff.size())
    throw std::invalid_argument("total_cross_section: unfilled far field");
  double s = 0.0;
  for (std::size_t i = 0; i < ff.size(); ++i)
    s += ff.weights[i] * std::norm(ff.values[i]);
  return s;
}

double transport_cross_section(const FarFieldGrid& ff) {
  if (ff.values.size() != ff.size())
    throw std::invalid_argument("transport_cross_section: unfilled far field");
  const Vec3 d = normalized(ff.incident);
  double s = 0.0;
  for (std::size_t i = 0; i < ff.size(); ++i)
    s += ff.weights[i] * (1.0 - dot(ff.directions[i], d)) * std::norm(ff.values[i]);
  return s;
}

double greens_identity_check(const BoundaryGrid& grid, const Trace& u,
                             const Trace& dnu, const FarFieldGrid& ff) {
  const double lhs = inner(grid, dnu, u).imag();
  const double rhs = ff.k * total_cross_section(ff);
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-30);
}

CertifiedReport certify(const Residual& residual, double k) {
  if (k <= 0.0) throw std::domain_error("certify: k must be positive");
  const double eta0 = residual.eta.eta0();
  if (eta0 <= 0.0)
    throw std::domain_error("certify: impedance needs min Im eta > 0");
  CertifiedReport r;
  r.alpha_norm = residual.norm;
  r.eta0 = eta0;
  r.eta_sup = residual.eta.eta_sup();
  r.bound_field = r.alpha_norm / eta0;
  r.bound_dn = (r.eta_sup / eta0 + 1.0) * r.alpha_norm;
  r.bound_sigma_sq =
      (r.eta_sup / eta0 + 1.0) * r.alpha_norm * r.alpha_norm / (k * eta0);
  return r;
}

CertifiedReport certify(const Residual& residual, double k, double true_field,
                        double true_dn, double true_sigma_sq) {
  CertifiedReport r = certify(residual, k);
  r.has_oracle = true;
  r.true_field = true_field;
  r.true_dn = true_dn;
  r.true_sigma_sq = true_sigma_sq;
  const auto eff = [](double bound, double truth) {
    return bound / std::max(truth, 1e-300);
  };
  r.eff_field = eff(r.bound_field, true_field);
  r.eff_dn = eff(r.bound_dn, true_dn);
  r.eff_sigma_sq = eff(r.bound_sigma_sq, true_sigma_sq);
  return r;
}

AprioriBounds apriori_bounds(double k, double gamma0, double Gamma, double S) {
  if (k <= 0.0) throw std::domain_error("apriori_bounds: k must be positive");
  if (gamma0 <= 0.0) throw std::domain_error("apriori_bounds: gamma0 must be positive");
  if (Gamma < gamma0) throw std::domain_error("apriori_bounds: Gamma must be >= gamma0");
  if (S <= 0.0) throw std::domain_error("apriori_bounds: S must be positive");
  const double rS = std::sqrt(S), G1 = 1.0 + Gamma;
  AprioriBounds b;
  b.f1 = rS * G1 / gamma0;
  b.f2 = k * rS * G1 * (gamma0 + Gamma) / gamma0;
  b.f3 = S * G1 * G1 * (gamma0 + Gamma) / (gamma0 * gamma0);
  b.f4 = rS * k / (4.0 * M_PI) * G1 / gamma0 * (k * (gamma0 + Gamma) + k + 1.0);
  b.ff2 = rS * G1 / gamma0;
  b.lastlast = 2.0 * k * rS * G1;
  b.alm1 = 2.0 * S * G1 * G1 / gamma0;
  b.amplitude_cap = k * S * G1 * (gamma0 + Gamma + 1.0) / (4.0 * M_PI * gamma0);
  return b;
}

double transport_lower_bound(double sigma, double k, double gamma0, double Gamma,
                             double S) {
  const double q = sigma * gamma0 / (k * S);
  const double G1 = 1.0 + Gamma;
  return q * q / (2.0 * M_PI * G1 * G1 * (G1 + gamma0) * (G1 + gamma0));
}

namespace {

VerdictRow make_row(std::string id, double lhs, double rhs, double slack,
                    std::string note = {}) {
  VerdictRow r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = lhs <= rhs + slack;
  r.note = std::move(note);
  return r;
}

}  // namespace

std::vector<VerdictRow> verify_all(const VerifyInput& in) {
  if (!in.grid || !in.u || !in.dnu || !in.ff)
    throw std::invalid_argument("verify_all: incomplete instance bundle");
  const auto b = apriori_bounds(in.k, in.gamma0, in.Gamma, in.S);

  const double nu = l2_norm(*in.grid, *in.u);
  const double ndnu = l2_norm(*in.grid, *in.dnu);
  const double sigma = total_cross_section(*in.ff);
  const double R = transport_cross_section(*in.ff);

  double max_amp = 0.0, max_grad = 0.0;
  for (std::size_t i = 0; i < in.ff->size(); ++i) {
    max_amp = std::max(max_amp, std::abs(in.ff->values[i]));
    const auto g =
        far_field_gradient(*in.grid, *in.u, *in.dnu, in.k, in.ff->directions[i]);
    const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
    max_grad = std::max(max_grad, gn);
  }

  const auto slack = [&](double lhs, double rhs) {
    return 10.0 * in.quad_rel_error * std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  };
  const auto pair_note = [&](double lhs, double stated, double derived) {
    const double lo = std::min(stated, derived), hi = std::max(stated, derived);
    if (lhs <= lo + slack(lhs, lo)) return std::string();
    if (lhs <= hi + slack(lhs, hi))
      return std::string("finding: violates the tighter of the stated/derived pair");
    return std::string("violates both variants");
  };

  std::vector<VerdictRow> rows;
  rows.push_back(make_row("f1", nu, b.f1, slack(nu, b.f1)));
  {
    const double rhs = std::max(b.f2, b.lastlast);  // pass needs the looser one
    auto r = make_row("f2", ndnu, rhs, slack(ndnu, rhs),
                      pair_note(ndnu, b.f2, b.lastlast));
    rows.push_back(r);
  }
  {
    const double rhs = std::max(b.f3, b.alm1);
    rows.push_back(
        make_row("f3", sigma, rhs, slack(sigma, rhs), pair_note(sigma, b.f3, b.alm1)));
  }
  rows.push_back(make_row("f4", max_grad, b.f4, slack(max_grad, b.f4)));
  rows.push_back(make_row("M", max_amp, b.amplitude_cap, slack(max_amp, b.amplitude_cap)));
  {
    const double lo = transport_lower_bound(sigma, in.k, in.gamma0, in.Gamma, in.S);
    rows.push_back(make_row("trcs", lo, R, slack(lo, R)));
  }
  {
    const double defect = greens_identity_check(*in.grid, *in.u, *in.dnu, *in.ff);
    rows.push_back(make_row("sigma_identity", defect, 1e-8, 0.0));
  }
  if (in.spectrum) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int ia = 0; ia <= 40; ++ia) {
      const double a = -20.0 + ia;
      for (double bb : {0.1, 1.0, 10.0}) {
        const auto rep = resolvent_check(*in.spectrum, a, bb);
        worst = std::max(worst, bb - rep.min_margin);
      }
    }
    rows.push_back(make_row("resolvent", worst, 0.0, 1e-12));
  } else {
    rows.push_back(make_row("resolvent", 0.0, 0.0, 1e-12,
                            "not applicable: no modal spectrum supplied"));
  }
  return rows;
}

void write_verdicts_csv(const std::vector<VerdictRow>& rows, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_verdicts_csv: cannot open " + path);
  std::fprintf(f, "inequality,lhs,rhs,margin,pass\n");
  for (const auto& r : rows)
    std::fprintf(f, "%s,%.12e,%.12e,%.12e,%d\n", r.id.c_str(), r.lhs, r.rhs,
                 r.margin, r.pass ? 1 : 0);
  std::fclose(f);
}

}  // namespace scatbound
