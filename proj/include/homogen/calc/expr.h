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

// Calculator expressions over single digits with +, - and *.

#ifndef HOMOGEN_CALC_EXPR_H_
#define HOMOGEN_CALC_EXPR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace homogen::calc {

enum class Op : char { kAdd = '+', kSub = '-', kMul = '*' };

// * binds tighter than + and -, which share a level.
int Precedence(Op op);

class Expr {
 public:
  // Throws std::invalid_argument unless 0 <= value <= 9.
  static Expr Digit(int value);
  static Expr Binary(Op op, Expr lhs, Expr rhs);

  bool is_digit() const { return operands_.empty(); }
  int digit() const { return digit_; }
  Op op() const { return op_; }
  const Expr& lhs() const { return operands_[0]; }
  const Expr& rhs() const { return operands_[1]; }

  // Digits have depth 0; a binary node is one more than its deeper operand.
  int Depth() const;
  int DigitCount() const;

  bool operator==(const Expr&) const = default;

 private:
  Expr() = default;

  int digit_ = 0;
  Op op_ = Op::kAdd;
  std::vector<Expr> operands_;
};

// Value of the expression reduced to its residue in 0..9.
int EvalMod10(const Expr& expr);

// Infix text without whitespace. Parentheses appear only where dropping them
// would change the parse: around a left operand of lower precedence, and
// around a right operand of lower or equal precedence (operators are
// left-associative).
std::string Render(const Expr& expr);

class ExprSyntaxError : public std::runtime_error {
 public:
  ExprSyntaxError(std::size_t position, const std::string& message);
  // Character offset of the error; equals the text length at end of input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Precedence-correct, left-associative parse of digits, + - * and
// parentheses. Whitespace is not allowed.
Expr ParseExpr(std::string_view text);

}  // namespace homogen::calc

#endif  // HOMOGEN_CALC_EXPR_H_
