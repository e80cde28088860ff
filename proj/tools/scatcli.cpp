// SPDX-License-Identifier: Apache-2.0

// Batch experiment driver: spectrum | solve-certify | bounds | sweep | mie.
// Configuration comes from a TOML-style file plus flag overrides; every run
// validates the full config before touching the output directory, and files
// are written atomically (tmp + rename).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scatbound/bounds.hpp"
#include "scatbound/config.hpp"
#include "scatbound/expr.hpp"
#include "scatbound/geometry.hpp"
#include "scatbound/mfs.hpp"
#include "scatbound/mie.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace scatbound;

namespace {

struct Instance {
  BoundaryGrid grid;
  Trace u, dnu;
  FarFieldGrid ff;
  double k = 0.0, gamma0 = 0.0, Gamma = 0.0, S = 0.0;
  bool has_spectrum = false;
  DtnSphereSpectrum spectrum;
  bool has_certificate = false;
  CertifiedReport certificate;
  bool has_solution = false;
  MfsSolution solution;
};

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + tmp);
    f << content;
  }
  fs::rename(tmp, path);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

bool gamma_is_constant(const ImpedanceExpr& g, Complex& value) {
  value = g.eval(0.7, 0.3);
  for (double th : {0.1, 1.4, 2.9})
    for (double ph : {0.0, 2.0, 5.0})
      if (std::abs(g.eval(th, ph) - value) > 1e-14 * (1.0 + std::abs(value)))
        return false;
  return true;
}

Trace sample_gamma(const ImpedanceExpr& g, const BoundaryGrid& grid) {
  Trace out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = g.eval(grid.thetas[i], grid.phis[i]);
  return out;
}

Instance make_instance(const ExperimentConfig& cfg, double k) {
  Instance inst;
  inst.k = k;
  const Surface surface(cfg.surface);
  inst.grid = quadrature_grid(surface, cfg.n_theta, cfg.n_phi);
  inst.S = inst.grid.area();

  const ImpedanceExpr gexpr(cfg.gamma_expr);
  const Trace gamma = sample_gamma(gexpr, inst.grid);
  const auto imp = Impedance::from_gamma(gamma, k);
  inst.gamma0 = imp.gamma0();
  inst.Gamma = imp.Gamma();

  inst.ff = direction_grid(cfg.ff_theta, cfg.ff_phi);
  inst.ff.k = k;
  inst.ff.incident = normalized(cfg.incident);
  inst.ff.values.resize(inst.ff.size());

  Complex const_gamma;
  const bool sphere_constant = cfg.surface.kind == SurfaceKind::sphere &&
                               gamma_is_constant(gexpr, const_gamma);
  if (sphere_constant) {
    const auto sol =
        mie_solve(k, cfg.surface.radius, const_gamma, cfg.incident, cfg.l_max);
    mie_boundary_traces(sol, inst.grid, inst.u, inst.dnu);
    for (std::size_t i = 0; i < inst.ff.size(); ++i)
      inst.ff.values[i] = mie_far_field(sol, inst.ff.directions[i]);
    inst.has_spectrum = true;
    const int lm = static_cast<int>(sol.coeff.size()) - 1;
    inst.spectrum = dtn_sphere_spectrum(k, cfg.surface.radius, std::min(lm, 60));
  } else {
    const auto sources =
        place_sources(surface, inst.grid, cfg.mfs_shrink, cfg.mfs_sources);
    const auto f = plane_wave_rhs(inst.grid, k, cfg.incident, imp.eta);
    inst.solution = solve_impedance(inst.grid, sources, k, imp, f);
    inst.has_solution = true;
    inst.u = evaluate_trace(inst.solution, inst.grid);
    inst.dnu = evaluate_normal_derivative(inst.solution, inst.grid);
    for (std::size_t i = 0; i < inst.ff.size(); ++i)
      inst.ff.values[i] = mfs_far_field(inst.solution, inst.ff.directions[i]);
    const auto res = boundary_residual(inst.solution, inst.grid, imp, f);
    inst.certificate = certify(res, k);
    inst.has_certificate = true;
  }
  return inst;
}

json verdict_json(const std::vector<VerdictRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"inequality", r.id},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"margin", r.margin},
                   {"pass", r.pass},
                   {"note", r.note}});
  return arr;
}

json certificate_json(const CertifiedReport& c) {
  json j{{"alpha_norm", c.alpha_norm},
         {"eta0", c.eta0},
         {"eta_sup", c.eta_sup},
         {"bound_field", c.bound_field},
         {"bound_dn", c.bound_dn},
         {"bound_sigma_sq", c.bound_sigma_sq}};
  if (c.has_oracle) {
    j["true_field"] = c.true_field;
    j["true_dn"] = c.true_dn;
    j["true_sigma_sq"] = c.true_sigma_sq;
    j["effectivity_field"] = c.eff_field;
    j["effectivity_dn"] = c.eff_dn;
    j["effectivity_sigma_sq"] = c.eff_sigma_sq;
  }
  return j;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
  std::ostringstream csv;
  json report;
  report["command"] = "spectrum";
  const bool sphere = cfg.surface.kind == SurfaceKind::sphere;
  if (sphere) {
    csv << "k,l,re_mu,im_mu,resolvent_margin_b\n";
    for (double k : cfg.k_values) {
      const auto s = dtn_sphere_spectrum(k, cfg.surface.radius,
                                         cfg.l_max >= 0 ? cfg.l_max : 60);
      double min_margin = std::numeric_limits<double>::infinity();
      for (int ia = 0; ia <= 40; ++ia)
        min_margin = std::min(
            min_margin,
            resolvent_check(s, -20.0 + ia, cfg.resolvent_b).min_margin);
      for (std::size_t l = 0; l < s.mu.size(); ++l)
        csv << fmt(k) << "," << l << "," << fmt(s.mu[l].real()) << ","
            << fmt(s.mu[l].imag()) << "," << fmt(min_margin) << "\n";
      bool all_upper = true;
      for (const auto& m : s.mu) all_upper = all_upper && m.imag() > 0.0;
      report["k=" + fmt(k)] = {{"all_im_positive", all_upper},
                               {"resolvent_b", cfg.resolvent_b},
                               {"min_resolvent_margin", min_margin},
                               {"pass", all_upper && min_margin >= cfg.resolvent_b}};
    }
  } else {
    csv << "k,index,re_eig,im_eig\n";
    const Surface surface(cfg.surface);
    for (double k : cfg.k_values) {
      const auto grid = quadrature_grid(surface, cfg.n_theta, cfg.n_phi);
      const auto sources =
          place_sources(surface, grid, cfg.mfs_shrink, cfg.mfs_sources);
      const auto dtn = dtn_matrix(surface, grid, sources, k);
      double min_im = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < dtn.eigenvalues.size(); ++i) {
        csv << fmt(k) << "," << i << "," << fmt(dtn.eigenvalues[i].real()) << ","
            << fmt(dtn.eigenvalues[i].imag()) << "\n";
        min_im = std::min(min_im, dtn.eigenvalues[i].imag());
      }
      report["k=" + fmt(k)] = {{"min_im_eigenvalue", min_im},
                               {"dirichlet_residual", dtn.max_dirichlet_residual},
                               {"reliable", dtn.reliable},
                               {"pass", min_im >= -1e-6 * k}};
    }
  }
  fs::create_directories(cfg.out_dir);
  atomic_write(cfg.out_dir + "/spectrum.csv", csv.str());
  atomic_write(cfg.out_dir + "/report.json", report.dump(2) + "\n");
  return 0;
}

int cmd_mie(const ExperimentConfig& cfg) {
  if (cfg.surface.kind != SurfaceKind::sphere)
    throw std::invalid_argument("mie: surface.kind must be sphere");
  ImpedanceExpr gexpr(cfg.gamma_expr);
  Complex gamma;
  if (!gamma_is_constant(gexpr, gamma))
    throw std::invalid_argument("mie: impedance.gamma must be constant");
  std::ostringstream csv;
  csv << "k,l,re_a,im_a,re_mu,im_mu\n";
  for (double k : cfg.k_values) {
    const auto sol = mie_solve(k, cfg.surface.radius, gamma, cfg.incident, cfg.l_max);
    const auto s = dtn_sphere_spectrum(k, cfg.surface.radius,
                                       static_cast<int>(sol.coeff.size()) - 1);
    for (std::size_t l = 0; l < sol.coeff.size(); ++l)
      csv << fmt(k) << "," << l << "," << fmt(sol.coeff[l].real()) << ","
          << fmt(sol.coeff[l].imag()) << "," << fmt(s.mu[l].real()) << ","
          << fmt(s.mu[l].imag()) << "\n";
  }
  fs::create_directories(cfg.out_dir);
  atomic_write(cfg.out_dir + "/mie.csv", csv.str());
  return 0;
}

int cmd_solve_certify(const ExperimentConfig& cfg) {
  const Surface surface(cfg.surface);
  const ImpedanceExpr gexpr(cfg.gamma_expr);
  json report;
  report["command"] = "solve-certify";
  fs::create_directories(cfg.out_dir);

  for (double k : cfg.k_values) {
    const auto grid = quadrature_grid(surface, cfg.n_theta, cfg.n_phi);
    const auto imp = Impedance::from_gamma(sample_gamma(gexpr, grid), k);
    const auto sources =
        place_sources(surface, grid, cfg.mfs_shrink, cfg.mfs_sources);
    const auto f = plane_wave_rhs(grid, k, cfg.incident, imp.eta);
    const auto sol = solve_impedance(grid, sources, k, imp, f);
    const auto res = boundary_residual(sol, grid, imp, f);

    CertifiedReport cert;
    Complex const_gamma;
    if (cfg.surface.kind == SurfaceKind::sphere &&
        gamma_is_constant(gexpr, const_gamma)) {
      const auto mie =
          mie_solve(k, cfg.surface.radius, const_gamma, cfg.incident, cfg.l_max);
      Trace um, dnm;
      mie_boundary_traces(mie, grid, um, dnm);
      const auto ua = evaluate_trace(sol, grid);
      const auto dna = evaluate_normal_derivative(sol, grid);
      Trace du(grid.size()), ddn(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        du[i] = ua[i] - um[i];
        ddn[i] = dna[i] - dnm[i];
      }
      auto ff = direction_grid(cfg.ff_theta, cfg.ff_phi);
      ff.k = k;
      ff.incident = normalized(cfg.incident);
      ff.values.resize(ff.size());
      for (std::size_t i = 0; i < ff.size(); ++i)
        ff.values[i] = mfs_far_field(sol, ff.directions[i]) -
                       mie_far_field(mie, ff.directions[i]);
      cert = certify(res, k, l2_norm(grid, du), l2_norm(grid, ddn),
                     total_cross_section(ff));
    } else {
      cert = certify(res, k);
    }
    report["k=" + fmt(k)] = certificate_json(cert);
    report["k=" + fmt(k)]["effective_rank"] = sol.effective_rank;

    // solution export for reuse
    json sj{{"k", k}, {"sources", json::array()}, {"coefficients", json::array()}};
    for (const auto& p : sol.sources.points) sj["sources"].push_back({p[0], p[1], p[2]});
    for (const auto& c : sol.coeff)
      sj["coefficients"].push_back({c.real(), c.imag()});
    atomic_write(cfg.out_dir + "/solution_k" + fmt(k) + ".json", sj.dump() + "\n");
  }
  atomic_write(cfg.out_dir + "/report.json", report.dump(2) + "\n");
  return 0;
}

int cmd_bounds_or_sweep(const ExperimentConfig& cfg, bool sweep) {
  json report;
  report["command"] = sweep ? "sweep" : "bounds";
  std::ostringstream csv;
  csv << "k,inequality,lhs,rhs,margin,pass\n";
  std::vector<VerdictRow> last_rows;
  for (double k : cfg.k_values) {
    const auto inst = make_instance(cfg, k);
    VerifyInput in;
    in.grid = &inst.grid;
    in.u = &inst.u;
    in.dnu = &inst.dnu;
    in.ff = &inst.ff;
    in.k = k;
    in.gamma0 = inst.gamma0;
    in.Gamma = inst.Gamma;
    in.S = inst.S;
    in.spectrum = inst.has_spectrum ? &inst.spectrum : nullptr;
    const auto rows = verify_all(in);
    for (const auto& r : rows)
      csv << fmt(k) << "," << r.id << "," << fmt(r.lhs) << "," << fmt(r.rhs)
          << "," << fmt(r.margin) << "," << (r.pass ? 1 : 0) << "\n";
    json jk;
    jk["sigma"] = total_cross_section(inst.ff);
    jk["transport"] = transport_cross_section(inst.ff);
    jk["verdicts"] = verdict_json(rows);
    if (inst.has_certificate) jk["certificate"] = certificate_json(inst.certificate);
    report["k=" + fmt(k)] = jk;
    last_rows = rows;
  }
  fs::create_directories(cfg.out_dir);
  if (sweep) {
    atomic_write(cfg.out_dir + "/sweep.csv", csv.str());
  } else {
    write_verdicts_csv(last_rows, cfg.out_dir + "/verdicts.csv");
  }
  atomic_write(cfg.out_dir + "/report.json", report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impedance-obstacle scattering: spectra, certificates, bounds"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, out_dir, gamma, surface, resolution;
  std::vector<double> ks;
  long seed = -1;

  app.add_option("--config", config_path, "experiment config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--k", ks, "wavenumber list override");
  app.add_option("--gamma", gamma, "impedance gamma expression override");
  app.add_option("--surface", surface,
                 "surface override: sphere[:R] | ellipsoid:a,b,c");
  app.add_option("--resolution", resolution, "boundary grid override: nt,np");
  app.add_option("--seed", seed, "random seed override");

  auto* c_spectrum = app.add_subcommand("spectrum", "DtN spectrum checks");
  auto* c_solve = app.add_subcommand("solve-certify", "MFS solve + certificates");
  auto* c_bounds = app.add_subcommand("bounds", "full verdict table (last k)");
  auto* c_sweep = app.add_subcommand("sweep", "verdicts stacked over the k list");
  auto* c_mie = app.add_subcommand("mie", "modal coefficients and mu_l tables");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg =
        config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!ks.empty()) cfg.k_values = ks;
    if (!gamma.empty()) cfg.gamma_expr = gamma;
    if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
    if (!surface.empty()) {
      if (surface.rfind("sphere", 0) == 0) {
        cfg.surface.kind = SurfaceKind::sphere;
        const auto colon = surface.find(':');
        if (colon != std::string::npos)
          cfg.surface.radius = std::stod(surface.substr(colon + 1));
      } else if (surface.rfind("ellipsoid:", 0) == 0) {
        cfg.surface.kind = SurfaceKind::ellipsoid;
        std::stringstream ss(surface.substr(10));
        std::string item;
        int idx = 0;
        while (std::getline(ss, item, ',') && idx < 3)
          cfg.surface.axes[idx++] = std::stod(item);
        if (idx != 3)
          throw std::invalid_argument("--surface ellipsoid needs a,b,c");
      } else {
        throw std::invalid_argument("--surface: unknown value '" + surface + "'");
      }
    }
    if (!resolution.empty()) {
      std::stringstream ss(resolution);
      char comma;
      if (!(ss >> cfg.n_theta >> comma >> cfg.n_phi))
        throw std::invalid_argument("--resolution must be nt,np");
    }
    cfg.validate();  // no output is produced past a validation failure

    if (c_spectrum->parsed()) return cmd_spectrum(cfg);
    if (c_mie->parsed()) return cmd_mie(cfg);
    if (c_solve->parsed()) return cmd_solve_certify(cfg);
    if (c_bounds->parsed()) return cmd_bounds_or_sweep(cfg, false);
    if (c_sweep->parsed()) return cmd_bounds_or_sweep(cfg, true);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
