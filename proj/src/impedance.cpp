// SPDX-License-Identifier: Apache-2.0

#include "scatbound/impedance.hpp"

#include <algorithm>
#include <stdexcept>

namespace scatbound {

Impedance Impedance::from_gamma(Trace gamma, double k) {
  if (k <= 0.0) throw std::domain_error("Impedance: k must be positive");
  Impedance imp;
  imp.scale = k;
  imp.eta.resize(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) imp.eta[i] = k * gamma[i];
  return imp;
}

Impedance Impedance::from_eta(Trace eta) {
  Impedance imp;
  imp.scale = 1.0;
  imp.eta = std::move(eta);
  return imp;
}

double Impedance::eta0() const {
  if (eta.empty()) throw std::logic_error("Impedance: empty sample set");
  double m = eta[0].imag();
  for (const auto& e : eta) m = std::min(m, e.imag());
  return m;
}

double Impedance::eta_sup() const {
  double m = 0.0;
  for (const auto& e : eta) m = std::max(m, std::abs(e));
  return m;
}

double Impedance::GammaHat() const {
  double m = 0.0;
  for (const auto& e : eta) m = std::max(m, e.imag());
  return m / scale;
}

}  // namespace scatbound
