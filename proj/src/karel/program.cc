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

#include "homogen/karel/program.h"

#include <string>
#include <utility>

namespace homogen::karel {

std::string_view ActionName(Action a) {
  switch (a) {
    case Action::kMove:
      return "move";
    case Action::kTurnLeft:
      return "turnLeft";
    case Action::kTurnRight:
      return "turnRight";
    case Action::kPickMarker:
      return "pickMarker";
    case Action::kPutMarker:
      return "putMarker";
  }
  return "?";
}

std::string_view PredicateName(Predicate p) {
  switch (p) {
    case Predicate::kMarkersPresent:
      return "markersPresent";
    case Predicate::kLeftIsClear:
      return "leftIsClear";
    case Predicate::kRightIsClear:
      return "rightIsClear";
    case Predicate::kFrontIsClear:
      return "frontIsClear";
  }
  return "?";
}

Stmt Stmt::Act(Action a) {
  Stmt s;
  s.kind = StmtKind::kAction;
  s.action = a;
  return s;
}

Stmt Stmt::Seq(std::vector<Stmt> items) {
  if (items.empty()) throw std::invalid_argument("empty statement sequence");
  if (items.size() == 1) return std::move(items.front());
  Stmt s;
  s.kind = StmtKind::kSeq;
  for (Stmt& item : items) {
    if (item.kind == StmtKind::kSeq) {
      for (Stmt& inner : item.children) s.children.push_back(std::move(inner));
    } else {
      s.children.push_back(std::move(item));
    }
  }
  return s;
}

Stmt Stmt::While(Condition c, Stmt body) {
  Stmt s;
  s.kind = StmtKind::kWhile;
  s.cond = c;
  s.children.push_back(std::move(body));
  return s;
}

Stmt Stmt::Repeat(int count, Stmt body) {
  if (count < 0 || count > kMaxRepeat) {
    throw std::invalid_argument("repeat count " + std::to_string(count) +
                                " outside 0..19");
  }
  Stmt s;
  s.kind = StmtKind::kRepeat;
  s.repeat_count = count;
  s.children.push_back(std::move(body));
  return s;
}

Stmt Stmt::If(Condition c, Stmt body) {
  Stmt s;
  s.kind = StmtKind::kIf;
  s.cond = c;
  s.children.push_back(std::move(body));
  return s;
}

Stmt Stmt::IfElse(Condition c, Stmt then_body, Stmt else_body) {
  Stmt s;
  s.kind = StmtKind::kIfElse;
  s.cond = c;
  s.children.push_back(std::move(then_body));
  s.children.push_back(std::move(else_body));
  return s;
}

namespace {

void Number(Stmt& s, int& next) {
  s.branch_id = s.has_branch() ? next++ : -1;
  for (Stmt& child : s.children) Number(child, next);
}

}  // namespace

Program::Program(Stmt body) : body_(std::move(body)) {
  Number(body_, branch_count_);
}

}  // namespace homogen::karel
