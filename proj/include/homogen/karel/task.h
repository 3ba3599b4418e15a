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

// Synthesis tasks: a program plus input/output grids that specify it.

#ifndef HOMOGEN_KAREL_TASK_H_
#define HOMOGEN_KAREL_TASK_H_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homogen/homogenizer.h"
#include "homogen/karel/gen.h"
#include "homogen/karel/grid.h"
#include "homogen/karel/interpreter.h"
#include "homogen/karel/program.h"
#include "homogen/karel/salients.h"
#include "homogen/rng.h"
#include "json.hpp"

namespace homogen::karel {

using GridSampler = std::function<Grid(Rng&)>;

struct IoPair {
  Grid input;
  Grid output;

  bool operator==(const IoPair&) const = default;
};

struct SynthesisTask {
  Program program;
  std::vector<IoPair> pairs;
  // Extra pair kept out of the specification, for generalization checks.
  IoPair held_out;

  bool operator==(const SynthesisTask&) const = default;
};

inline constexpr int kMaxPairs = 5;

struct TaskOptions {
  int n_pairs = kMaxPairs;
  int retry_limit = 1000;
  std::int64_t step_limit = kDefaultStepLimit;
};

// make_task gave up. Carries why batches were rejected.
class UncoverableProgram : public std::runtime_error {
 public:
  struct Diagnostics {
    int batches = 0;
    // Batches discarded because some input crashed, by first crash reason.
    std::map<CrashReason, int> crashes;
    // For every branch arm: crash-free batches whose shown inputs took it.
    std::map<BranchArm, int> arm_hits;
  };

  explicit UncoverableProgram(Diagnostics diagnostics);
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

// Samples batches of n_pairs + 1 input grids until one batch runs without a
// crash on every grid and the first n_pairs inputs jointly take every branch
// arm of the program. The last grid of the batch becomes the held-out pair.
// Throws std::invalid_argument for options outside range and
// UncoverableProgram after retry_limit rejected batches.
SynthesisTask MakeTask(const Program& program, const GridSampler& sampler,
                       const TaskOptions& options, Rng& rng);

struct AugmentOptions {
  int per_length = 20000;
  int min_length = 1;
  int max_length = 20;
  TaskOptions task;
  // Programs without a valid input batch are redrawn up to this many times.
  int max_program_attempts = 200;

  std::int64_t TaskCount() const {
    return static_cast<std::int64_t>(per_length) * (max_length - min_length + 1);
  }
};

// Appends per_length tasks for every length in [min_length, max_length],
// each built from a program of uniformly drawn action tokens.
void AugmentActionOnly(std::vector<SynthesisTask>& dataset,
                       const AugmentOptions& options,
                       const GridSampler& sampler, Rng& rng);

// floor(10 r) clamped to 0..9.
int Decile(double ratio);

struct TaskSalients {
  ProgramSalients program;
  std::vector<GridSalients> inputs;  // shown inputs only
  int number_of_grids = 0;
  // Task-level summaries of the shown inputs.
  double mean_marker_ratio = 0.0;
  double mean_wall_ratio = 0.0;
  int marker_ratio_decile = 0;
  int wall_ratio_decile = 0;
  int mean_width = 0;   // rounded
  int mean_height = 0;  // rounded
  // Mean markers per marker cell, rounded; 0 when no input has markers.
  int mean_marker_count = 0;
};

TaskSalients ComputeTaskSalients(const SynthesisTask& task);

// Homogenizable task variables: num_grids, program_size, control_flow,
// nesting_depth, marker_ratio, wall_ratio, grid_width, grid_height and
// marker_count. Values beyond a domain are clamped into it.
std::vector<SalientSpec<SynthesisTask>> KarelTaskVariables();

// {"program":[tokens], "pairs":[{"in":grid,"out":grid}...],
//  "held_out":{"in":grid,"out":grid}}
nlohmann::ordered_json TaskToJson(const SynthesisTask& task);
// Throws GridError, SyntaxError or std::invalid_argument on bad records.
// Re-runs the program on every stored pair and throws std::invalid_argument
// when an output disagrees. Any task built under a smaller step limit
// replays identically under this one.
inline constexpr std::int64_t kReplayStepLimit = 1000000;
SynthesisTask TaskFromJson(const nlohmann::json& json,
                           std::int64_t step_limit = kReplayStepLimit);

// How a stream of tasks is produced: a program source, a grid sampler and
// the number of shown pairs.
struct TaskStreamConfig {
  enum class Programs : std::uint8_t { kCfg, kActionOnly };
  Programs programs = Programs::kCfg;
  ProductionTable table;
  int action_min_length = 1;
  int action_max_length = 20;
  // Keep only programs with this nesting (outer, inner), when set.
  std::optional<std::pair<ConstructKind, ConstructKind>> nested;
  bool require_minimal_actions = false;

  std::optional<NarrowGridParams> narrow;  // uniform grids when unset
  // 0 draws the count uniformly from 1..5 per task.
  int n_pairs = kMaxPairs;
  TaskOptions task;
  // Programs that fail to produce a task are skipped; this many in a row
  // abort the stream with GenerationError.
  int max_program_attempts = 200;
};

GridSampler MakeGridSampler(const TaskStreamConfig& config);

// Draws programs and builds tasks until one succeeds.
SynthesisTask NextTask(Rng& rng, const TaskStreamConfig& config);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_TASK_H_
