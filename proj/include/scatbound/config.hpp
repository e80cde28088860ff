// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "scatbound/geometry.hpp"

namespace scatbound {

/// One experiment, fully described by a config file plus flag overrides.
struct ExperimentConfig {
  SurfaceSpec surface;
  std::string gamma_expr = "i";  // expression over theta, phi
  std::vector<double> k_values{1.0};
  Vec3 incident{0, 0, 1};
  int n_theta = 16, n_phi = 32;    // boundary grid
  int ff_theta = 64, ff_phi = 128; // far-field grid
  int l_max = -1;                  // Mie truncation; <0 = automatic
  int mfs_sources = 100;
  double mfs_shrink = 0.7;
  double resolvent_b = 1.0;
  unsigned seed = 0;
  std::string out_dir = ".";

  // Hypothesis gates; throws std::invalid_argument naming the offending key.
  void validate() const;
};

// TOML-style sections + key = value.  Unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace scatbound
