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

#ifndef HOMOGEN_KAREL_INTERPRETER_H_
#define HOMOGEN_KAREL_INTERPRETER_H_

#include <compare>
#include <cstdint>
#include <set>
#include <string_view>
#include <variant>

#include "homogen/karel/grid.h"
#include "homogen/karel/program.h"

namespace homogen::karel {

inline constexpr std::int64_t kDefaultStepLimit = 200;

enum class CrashReason : std::uint8_t {
  kMoveIntoWall,  // also covers stepping off the grid
  kPickEmpty,
  kPutOverflow,
  kStepLimit,
};

std::string_view CrashReasonName(CrashReason reason);

// For if/ifElse: kThen when the condition held, kElse otherwise.
// For while: kThen for every evaluation that entered the body, kElse for the
// evaluation that left (or skipped) the loop.
enum class Arm : std::uint8_t { kThen, kElse };

struct BranchArm {
  int branch_id;
  Arm arm;

  auto operator<=>(const BranchArm&) const = default;
};

struct ExecResult {
  std::variant<Grid, CrashReason> outcome;
  std::set<BranchArm> branches_taken;
  std::int64_t steps = 0;

  bool ok() const { return std::holds_alternative<Grid>(outcome); }
  const Grid& output() const { return std::get<Grid>(outcome); }
  CrashReason crash() const { return std::get<CrashReason>(outcome); }

  bool operator==(const ExecResult&) const = default;
};

// Runs `program` on a copy of `input`.
//
// Each executed action counts one step; the action that would make the count
// exceed `step_limit` crashes with kStepLimit instead. A while loop whose
// body completes an iteration without executing any action can never exit,
// and also crashes with kStepLimit.
ExecResult Execute(const Program& program, const Grid& input,
                   std::int64_t step_limit = kDefaultStepLimit);

// Every (branch id, arm) pair a program has.
std::set<BranchArm> AllBranchArms(const Program& program);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_INTERPRETER_H_
