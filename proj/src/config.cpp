// SPDX-License-Identifier: Apache-2.0

#include "scatbound/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scatbound/expr.hpp"

namespace scatbound {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::string body = trim(v);
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']')
    body = body.substr(1, body.size() - 2);
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad number '" + item + "' for " + key);
    }
  }
  return out;
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    return std::stod(trim(v));
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number '" + v + "' for " + key);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  return static_cast<int>(parse_num(key, v));
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::string section;
  std::stringstream in(text);
  std::string line;
  std::vector<StarTerm> star_terms;

  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + line + "'");
    const std::string key = section.empty() ? trim(line.substr(0, eq))
                                            : section + "." + trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "surface.kind") {
      const std::string v = unquote(val);
      if (v == "sphere") cfg.surface.kind = SurfaceKind::sphere;
      else if (v == "ellipsoid") cfg.surface.kind = SurfaceKind::ellipsoid;
      else if (v == "star_shaped") cfg.surface.kind = SurfaceKind::star_shaped;
      else throw std::invalid_argument("config: surface.kind must be sphere|ellipsoid|star_shaped");
    } else if (key == "surface.radius") {
      cfg.surface.radius = parse_num(key, val);
    } else if (key == "surface.axes") {
      const auto a = parse_list(key, val);
      if (a.size() != 3)
        throw std::invalid_argument("config: surface.axes needs three values");
      cfg.surface.axes = {a[0], a[1], a[2]};
    } else if (key == "surface.star_term") {
      const auto a = parse_list(key, val);
      if (a.size() != 4)
        throw std::invalid_argument("config: surface.star_term = [l, m, c_cos, c_sin]");
      star_terms.push_back({static_cast<int>(a[0]), static_cast<int>(a[1]), a[2], a[3]});
    } else if (key == "impedance.gamma") {
      cfg.gamma_expr = unquote(val);
    } else if (key == "run.k") {
      cfg.k_values = parse_list(key, val);
    } else if (key == "run.incident") {
      const auto a = parse_list(key, val);
      if (a.size() != 3)
        throw std::invalid_argument("config: run.incident needs three values");
      cfg.incident = {a[0], a[1], a[2]};
    } else if (key == "run.seed") {
      cfg.seed = static_cast<unsigned>(parse_int(key, val));
    } else if (key == "run.out") {
      cfg.out_dir = unquote(val);
    } else if (key == "run.resolvent_b") {
      cfg.resolvent_b = parse_num(key, val);
    } else if (key == "resolution.n_theta") {
      cfg.n_theta = parse_int(key, val);
    } else if (key == "resolution.n_phi") {
      cfg.n_phi = parse_int(key, val);
    } else if (key == "resolution.ff_theta") {
      cfg.ff_theta = parse_int(key, val);
    } else if (key == "resolution.ff_phi") {
      cfg.ff_phi = parse_int(key, val);
    } else if (key == "resolution.l_max") {
      cfg.l_max = parse_int(key, val);
    } else if (key == "resolution.mfs_sources") {
      cfg.mfs_sources = parse_int(key, val);
    } else if (key == "resolution.mfs_shrink") {
      cfg.mfs_shrink = parse_num(key, val);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.surface.star_terms = std::move(star_terms);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void ExperimentConfig::validate() const {
  if (k_values.empty())
    throw std::invalid_argument("config: run.k must be a non-empty list");
  for (double k : k_values)
    if (k <= 0.0) throw std::invalid_argument("config: run.k entries must be positive");
  if (n_theta < 4 || n_phi < 8)
    throw std::invalid_argument("config: resolution.n_theta >= 4 and n_phi >= 8 required");
  if (ff_theta < 4 || ff_phi < 8)
    throw std::invalid_argument("config: resolution.ff_theta >= 4 and ff_phi >= 8 required");
  if (mfs_sources < 1)
    throw std::invalid_argument("config: resolution.mfs_sources must be >= 1");
  if (mfs_shrink <= 0.0 || mfs_shrink >= 1.0)
    throw std::invalid_argument("config: resolution.mfs_shrink must be in (0,1)");
  if (resolvent_b <= 0.0)
    throw std::invalid_argument("config: run.resolvent_b > 0 required (b > 0)");
  if (norm(incident) <= 0.0)
    throw std::invalid_argument("config: run.incident must be a nonzero vector");
  Surface check(surface);  // surface invariants

  // hypothesis Im(gamma) >= gamma0 > 0, checked on a dense parameter sample
  ImpedanceExpr gamma(gamma_expr);
  for (int i = 1; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const auto g = gamma.eval(M_PI * i / 64.0, 2.0 * M_PI * j / 64.0);
      if (g.imag() <= 0.0)
        throw std::invalid_argument(
            "config: impedance.gamma must have positive imaginary part everywhere");
    }
}

}  // namespace scatbound
