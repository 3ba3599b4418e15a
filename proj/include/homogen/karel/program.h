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

// Abstract syntax of Karel programs:
//
//   Prog   := def main(): Stmt
//   Stmt   := while(Cond): Stmt | repeat(r): Stmt | Stmt; Stmt | Action
//           | if(Cond): Stmt | if(Cond): Stmt else: Stmt
//   Cond   := markersPresent() | leftIsClear() | rightIsClear()
//           | frontIsClear() | not(Cond)
//   Action := move() | turnLeft() | turnRight() | pickMarker() | putMarker()
//   r      := 0 | 1 | ... | 19

#ifndef HOMOGEN_KAREL_PROGRAM_H_
#define HOMOGEN_KAREL_PROGRAM_H_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace homogen::karel {

enum class Action : std::uint8_t {
  kMove,
  kTurnLeft,
  kTurnRight,
  kPickMarker,
  kPutMarker,
};

inline constexpr std::array<Action, 5> kAllActions = {
    Action::kMove, Action::kTurnLeft, Action::kTurnRight, Action::kPickMarker,
    Action::kPutMarker};

enum class Predicate : std::uint8_t {
  kMarkersPresent,
  kLeftIsClear,
  kRightIsClear,
  kFrontIsClear,
};

inline constexpr std::array<Predicate, 4> kAllPredicates = {
    Predicate::kMarkersPresent, Predicate::kLeftIsClear,
    Predicate::kRightIsClear, Predicate::kFrontIsClear};

std::string_view ActionName(Action a);
std::string_view PredicateName(Predicate p);

// A predicate under zero or more not(...) wrappers.
struct Condition {
  Predicate predicate = Predicate::kFrontIsClear;
  int negations = 0;

  bool operator==(const Condition&) const = default;
};

inline constexpr int kMaxRepeat = 19;

enum class StmtKind : std::uint8_t {
  kAction,
  kSeq,
  kWhile,
  kRepeat,
  kIf,
  kIfElse,
};

// A statement node. Sequences are n-ary and never directly contain another
// sequence, so every statement list has exactly one representation.
//
// `branch_id` is assigned by Program for if, ifElse and while nodes in
// pre-order; it is -1 everywhere else and on statements not yet wrapped in a
// Program.
struct Stmt {
  StmtKind kind = StmtKind::kAction;
  Action action = Action::kMove;
  Condition cond;
  int repeat_count = 0;
  // kSeq: the items (>= 2). kWhile/kRepeat/kIf: the body. kIfElse: then, else.
  std::vector<Stmt> children;
  int branch_id = -1;

  static Stmt Act(Action a);
  // Flattens nested sequences; a single statement is returned unchanged.
  // Throws std::invalid_argument on an empty list.
  static Stmt Seq(std::vector<Stmt> items);
  static Stmt While(Condition c, Stmt body);
  // Throws std::invalid_argument unless 0 <= count <= 19.
  static Stmt Repeat(int count, Stmt body);
  static Stmt If(Condition c, Stmt body);
  static Stmt IfElse(Condition c, Stmt then_body, Stmt else_body);

  bool is_control_flow() const {
    return kind != StmtKind::kAction && kind != StmtKind::kSeq;
  }
  bool has_branch() const {
    return kind == StmtKind::kWhile || kind == StmtKind::kIf ||
           kind == StmtKind::kIfElse;
  }

  bool operator==(const Stmt&) const = default;
};

inline Condition Cond(Predicate p) { return Condition{p, 0}; }
inline Condition Not(Condition c) { return Condition{c.predicate, c.negations + 1}; }

class Program {
 public:
  explicit Program(Stmt body);

  const Stmt& body() const { return body_; }
  int branch_count() const { return branch_count_; }

  bool operator==(const Program&) const = default;

 private:
  Stmt body_;
  int branch_count_ = 0;
};

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_PROGRAM_H_
