// Copyright 2026 The Homogen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homogen/calc/expr.h"

#include <algorithm>
#include <utility>

namespace homogen::calc {

int Precedence(Op op) { return op == Op::kMul ? 2 : 1; }

Expr Expr::Digit(int value) {
  if (value < 0 || value > 9) {
    throw std::invalid_argument("digit " + std::to_string(value) +
                                " outside 0..9");
  }
  Expr e;
  e.digit_ = value;
  return e;
}

Expr Expr::Binary(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.op_ = op;
  e.operands_.reserve(2);
  e.operands_.push_back(std::move(lhs));
  e.operands_.push_back(std::move(rhs));
  return e;
}

int Expr::Depth() const {
  if (is_digit()) return 0;
  return 1 + std::max(lhs().Depth(), rhs().Depth());
}

int Expr::DigitCount() const {
  if (is_digit()) return 1;
  return lhs().DigitCount() + rhs().DigitCount();
}

int EvalMod10(const Expr& expr) {
  if (expr.is_digit()) return expr.digit();
  const int a = EvalMod10(expr.lhs());
  const int b = EvalMod10(expr.rhs());
  switch (expr.op()) {
    case Op::kAdd:
      return (a + b) % 10;
    case Op::kSub:
      return (a - b + 10) % 10;
    case Op::kMul:
      return (a * b) % 10;
  }
  return 0;
}

namespace {

// Precedence of an operand; digits bind tightest.
int OperandPrecedence(const Expr& e) {
  return e.is_digit() ? 3 : Precedence(e.op());
}

void RenderInto(const Expr& e, std::string& out) {
  if (e.is_digit()) {
    out += static_cast<char>('0' + e.digit());
    return;
  }
  const int prec = Precedence(e.op());
  const bool wrap_left = OperandPrecedence(e.lhs()) < prec;
  const bool wrap_right = OperandPrecedence(e.rhs()) <= prec;
  if (wrap_left) out += '(';
  RenderInto(e.lhs(), out);
  if (wrap_left) out += ')';
  out += static_cast<char>(e.op());
  if (wrap_right) out += '(';
  RenderInto(e.rhs(), out);
  if (wrap_right) out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr Parse() {
    Expr e = Sum();
    if (pos_ != text_.size()) Fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void Fail(const std::string& message) const {
    throw ExprSyntaxError(pos_, message);
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  Expr Sum() {
    Expr e = Product();
    while (Peek() == '+' || Peek() == '-') {
      const Op op = static_cast<Op>(text_[pos_++]);
      e = Expr::Binary(op, std::move(e), Product());
    }
    return e;
  }

  Expr Product() {
    Expr e = Atom();
    while (Peek() == '*') {
      ++pos_;
      e = Expr::Binary(Op::kMul, std::move(e), Atom());
    }
    return e;
  }

  Expr Atom() {
    const char c = Peek();
    if (c >= '0' && c <= '9') {
      ++pos_;
      return Expr::Digit(c - '0');
    }
    if (c == '(') {
      ++pos_;
      Expr e = Sum();
      if (Peek() != ')') Fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '\0') Fail("unexpected end of input");
    Fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Render(const Expr& expr) {
  std::string out;
  RenderInto(expr, out);
  return out;
}

ExprSyntaxError::ExprSyntaxError(std::size_t position,
                                 const std::string& message)
    : std::runtime_error("position " + std::to_string(position) + ": " +
                         message),
      position_(position) {}

Expr ParseExpr(std::string_view text) { return Parser(text).Parse(); }

}  // namespace homogen::calc
