// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "scatbound/geometry.hpp"

namespace scatbound {

/// Boundary coefficient eta of the impedance operator d/dn + eta, sampled on a
/// grid.  `scale` records the convention: eta = scale * gamma, with scale = k
/// for the plane-wave operator d/dn + k gamma and scale = 1 for d/dn + gamma.
struct Impedance {
  Trace eta;
  double scale = 1.0;

  static Impedance from_gamma(Trace gamma, double k);
  static Impedance from_eta(Trace eta);

  // full-coefficient constants
  double eta0() const;     // min Im eta
  double eta_sup() const;  // max |eta|

  // gamma-level constants (divide the convention scale back out)
  double gamma0() const { return eta0() / scale; }
  double Gamma() const { return eta_sup() / scale; }
  double GammaHat() const;  // max Im gamma
};

}  // namespace scatbound
