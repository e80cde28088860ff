// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace scatbound {

/// Small expression over {numbers, i, theta, phi, sin, cos, +, -, *, ( )},
/// compiled once and evaluated per boundary node.  Used for variable
/// impedance coefficients gamma(theta, phi).
class ImpedanceExpr {
 public:
  explicit ImpedanceExpr(const std::string& text);  // throws on parse errors

  std::complex<double> eval(double theta, double phi) const;
  const std::string& text() const { return text_; }

  enum class OpCode { push_const, push_theta, push_phi, add, sub, mul, neg, sin_, cos_ };
  struct Op {
    OpCode code;
    std::complex<double> value{};
  };

 private:
  std::string text_;
  std::vector<Op> program_;
};

}  // namespace scatbound
