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

#include "homogen/karel/interpreter.h"

#include <optional>

namespace homogen::karel {

std::string_view CrashReasonName(CrashReason reason) {
  switch (reason) {
    case CrashReason::kMoveIntoWall:
      return "MoveIntoWall";
    case CrashReason::kPickEmpty:
      return "PickEmpty";
    case CrashReason::kPutOverflow:
      return "PutOverflow";
    case CrashReason::kStepLimit:
      return "StepLimit";
  }
  return "?";
}

namespace {

class Machine {
 public:
  Machine(const Grid& input, std::int64_t step_limit)
      : grid_(input), step_limit_(step_limit) {}

  // Returns false once the run has crashed.
  bool Run(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kAction:
        return Do(s.action);
      case StmtKind::kSeq:
        for (const Stmt& child : s.children) {
          if (!Run(child)) return false;
        }
        return true;
      case StmtKind::kRepeat:
        for (int k = 0; k < s.repeat_count; ++k) {
          if (!Run(s.children[0])) return false;
        }
        return true;
      case StmtKind::kIf:
        if (Test(s)) return Run(s.children[0]);
        return true;
      case StmtKind::kIfElse:
        return Run(s.children[Test(s) ? 0 : 1]);
      case StmtKind::kWhile:
        while (Test(s)) {
          const std::int64_t before = steps_;
          if (!Run(s.children[0])) return false;
          // No action ran, so the world and the condition are unchanged.
          if (steps_ == before) return Crash(CrashReason::kStepLimit);
        }
        return true;
    }
    return true;
  }

  ExecResult Finish() && {
    ExecResult result{Grid(grid_), std::move(branches_), steps_};
    if (crash_) result.outcome = *crash_;
    return result;
  }

 private:
  bool Crash(CrashReason reason) {
    crash_ = reason;
    return false;
  }

  bool Clear(Direction d) const {
    const Cell next = Step(grid_.karel(), d);
    return grid_.InBounds(next) && !grid_.wall(next);
  }

  bool Holds(const Condition& c) const {
    bool value = false;
    switch (c.predicate) {
      case Predicate::kMarkersPresent:
        value = grid_.markers(grid_.karel()) > 0;
        break;
      case Predicate::kFrontIsClear:
        value = Clear(grid_.direction());
        break;
      case Predicate::kLeftIsClear:
        value = Clear(TurnLeft(grid_.direction()));
        break;
      case Predicate::kRightIsClear:
        value = Clear(TurnRight(grid_.direction()));
        break;
    }
    return (c.negations % 2 == 0) ? value : !value;
  }

  bool Test(const Stmt& s) {
    const bool taken = Holds(s.cond);
    branches_.insert({s.branch_id, taken ? Arm::kThen : Arm::kElse});
    return taken;
  }

  bool Do(Action a) {
    if (steps_ >= step_limit_) return Crash(CrashReason::kStepLimit);
    ++steps_;
    const Cell here = grid_.karel();
    switch (a) {
      case Action::kMove: {
        if (!Clear(grid_.direction())) return Crash(CrashReason::kMoveIntoWall);
        grid_.set_karel(Step(here, grid_.direction()), grid_.direction());
        return true;
      }
      case Action::kTurnLeft:
        grid_.set_direction(TurnLeft(grid_.direction()));
        return true;
      case Action::kTurnRight:
        grid_.set_direction(TurnRight(grid_.direction()));
        return true;
      case Action::kPickMarker: {
        const int m = grid_.markers(here);
        if (m == 0) return Crash(CrashReason::kPickEmpty);
        grid_.set_markers(here, m - 1);
        return true;
      }
      case Action::kPutMarker: {
        const int m = grid_.markers(here);
        if (m >= kMaxMarkers) return Crash(CrashReason::kPutOverflow);
        grid_.set_markers(here, m + 1);
        return true;
      }
    }
    return true;
  }

  Grid grid_;
  std::int64_t step_limit_;
  std::int64_t steps_ = 0;
  std::set<BranchArm> branches_;
  std::optional<CrashReason> crash_;
};

void CollectArms(const Stmt& s, std::set<BranchArm>& out) {
  if (s.has_branch()) {
    out.insert({s.branch_id, Arm::kThen});
    out.insert({s.branch_id, Arm::kElse});
  }
  for (const Stmt& child : s.children) CollectArms(child, out);
}

}  // namespace

ExecResult Execute(const Program& program, const Grid& input,
                   std::int64_t step_limit) {
  Machine machine(input, step_limit);
  machine.Run(program.body());
  return std::move(machine).Finish();
}

std::set<BranchArm> AllBranchArms(const Program& program) {
  std::set<BranchArm> out;
  CollectArms(program.body(), out);
  return out;
}

}  // namespace homogen::karel
