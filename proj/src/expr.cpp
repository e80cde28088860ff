// SPDX-License-Identifier: Apache-2.0

#include "scatbound/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace scatbound {

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  std::vector<ImpedanceExpr::Op>* out;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("impedance expression: " + what + " at position " +
                                std::to_string(pos) + " in '" + s + "'");
  }
};

}  // namespace

// The parser emits an RPN program; recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ['-'] ( number | 'i' | 'theta' | 'phi'
//                   | ('sin'|'cos') '(' expr ')' | '(' expr ')' )
namespace {

void parse_expr(Parser& p);

void parse_factor(Parser& p) {
  p.skip();
  bool negate = false;
  while (p.eat('-')) negate = !negate;
  p.skip();
  if (p.pos >= p.s.size()) p.fail("unexpected end of input");
  const char c = p.s[p.pos];
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(p.s.substr(p.pos), &used);
    } catch (const std::exception&) {
      p.fail("bad number");
    }
    p.pos += used;
    p.out->push_back({ImpedanceExpr::OpCode::push_const, {v, 0.0}});
  } else if (c == '(') {
    ++p.pos;
    parse_expr(p);
    if (!p.eat(')')) p.fail("missing ')'");
  } else if (std::isalpha(static_cast<unsigned char>(c))) {
    std::size_t end = p.pos;
    while (end < p.s.size() && std::isalpha(static_cast<unsigned char>(p.s[end]))) ++end;
    const std::string word = p.s.substr(p.pos, end - p.pos);
    p.pos = end;
    if (word == "i") {
      p.out->push_back({ImpedanceExpr::OpCode::push_const, {0.0, 1.0}});
    } else if (word == "theta") {
      p.out->push_back({ImpedanceExpr::OpCode::push_theta});
    } else if (word == "phi") {
      p.out->push_back({ImpedanceExpr::OpCode::push_phi});
    } else if (word == "sin" || word == "cos") {
      if (!p.eat('(')) p.fail("expected '(' after " + word);
      parse_expr(p);
      if (!p.eat(')')) p.fail("missing ')'");
      p.out->push_back({word == "sin" ? ImpedanceExpr::OpCode::sin_
                                      : ImpedanceExpr::OpCode::cos_});
    } else {
      p.fail("unknown identifier '" + word + "'");
    }
  } else {
    p.fail(std::string("unexpected character '") + c + "'");
  }
  if (negate) p.out->push_back({ImpedanceExpr::OpCode::neg});
}

void parse_term(Parser& p) {
  parse_factor(p);
  while (p.eat('*')) {
    parse_factor(p);
    p.out->push_back({ImpedanceExpr::OpCode::mul});
  }
}

void parse_expr(Parser& p) {
  parse_term(p);
  for (;;) {
    if (p.eat('+')) {
      parse_term(p);
      p.out->push_back({ImpedanceExpr::OpCode::add});
    } else if (p.eat('-')) {
      parse_term(p);
      p.out->push_back({ImpedanceExpr::OpCode::sub});
    } else {
      break;
    }
  }
}

}  // namespace

ImpedanceExpr::ImpedanceExpr(const std::string& text) : text_(text) {
  Parser p{text, 0, &program_};
  parse_expr(p);
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
}

std::complex<double> ImpedanceExpr::eval(double theta, double phi) const {
  std::vector<std::complex<double>> st;
  st.reserve(8);
  for (const auto& op : program_) {
    switch (op.code) {
      case OpCode::push_const: st.push_back(op.value); break;
      case OpCode::push_theta: st.push_back({theta, 0.0}); break;
      case OpCode::push_phi: st.push_back({phi, 0.0}); break;
      case OpCode::neg: st.back() = -st.back(); break;
      case OpCode::sin_: st.back() = std::sin(st.back()); break;
      case OpCode::cos_: st.back() = std::cos(st.back()); break;
      default: {
        const auto b = st.back();
        st.pop_back();
        auto& a = st.back();
        if (op.code == OpCode::add) a += b;
        else if (op.code == OpCode::sub) a -= b;
        else a *= b;
      }
    }
  }
  return st.back();
}

}  // namespace scatbound
