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

#include "homogen/karel/task.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "homogen/karel/syntax.h"

namespace homogen::karel {

namespace {

std::string DescribeDiagnostics(const UncoverableProgram::Diagnostics& d) {
  std::string out = "no valid input batch after " + std::to_string(d.batches) +
                    " attempts;";
  for (const auto& [reason, n] : d.crashes) {
    out += " ";
    out += CrashReasonName(reason);
    out += "=" + std::to_string(n);
  }
  for (const auto& [arm, n] : d.arm_hits) {
    out += " b" + std::to_string(arm.branch_id) +
           (arm.arm == Arm::kThen ? ".then=" : ".else=") + std::to_string(n);
  }
  return out;
}

}  // namespace

UncoverableProgram::UncoverableProgram(Diagnostics diagnostics)
    : std::runtime_error(DescribeDiagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

SynthesisTask MakeTask(const Program& program, const GridSampler& sampler,
                       const TaskOptions& options, Rng& rng) {
  if (options.n_pairs < 1 || options.n_pairs > kMaxPairs) {
    throw std::invalid_argument("n_pairs must lie in 1..5");
  }
  if (options.retry_limit < 1) {
    throw std::invalid_argument("retry_limit must be positive");
  }
  if (options.step_limit < 0) {
    throw std::invalid_argument("step_limit must be non-negative");
  }
  const std::set<BranchArm> required = AllBranchArms(program);
  UncoverableProgram::Diagnostics diagnostics;
  for (const BranchArm& arm : required) diagnostics.arm_hits[arm] = 0;

  for (int batch = 0; batch < options.retry_limit; ++batch) {
    ++diagnostics.batches;
    std::vector<IoPair> pairs;
    std::set<BranchArm> covered;
    bool crashed = false;
    for (int k = 0; k <= options.n_pairs; ++k) {
      Grid input = sampler(rng);
      ExecResult result = Execute(program, input, options.step_limit);
      if (!result.ok()) {
        ++diagnostics.crashes[result.crash()];
        crashed = true;
        break;
      }
      if (k < options.n_pairs) {
        covered.insert(result.branches_taken.begin(),
                       result.branches_taken.end());
      }
      pairs.push_back({std::move(input), result.output()});
    }
    if (crashed) continue;
    for (const BranchArm& arm : covered) ++diagnostics.arm_hits[arm];
    if (std::includes(covered.begin(), covered.end(), required.begin(),
                      required.end())) {
      IoPair held_out = std::move(pairs.back());
      pairs.pop_back();
      return SynthesisTask{program, std::move(pairs), std::move(held_out)};
    }
  }
  throw UncoverableProgram(std::move(diagnostics));
}

void AugmentActionOnly(std::vector<SynthesisTask>& dataset,
                       const AugmentOptions& options,
                       const GridSampler& sampler, Rng& rng) {
  if (options.per_length < 1 || options.min_length < 1 ||
      options.max_length < options.min_length) {
    throw std::invalid_argument("augmentation needs per_length >= 1 and a "
                                "non-empty length range starting at 1 or more");
  }
  dataset.reserve(dataset.size() + static_cast<std::size_t>(options.TaskCount()));
  for (int length = options.min_length; length <= options.max_length;
       ++length) {
    for (int k = 0; k < options.per_length; ++k) {
      // Long action sequences often walk off every sampled grid; such a
      // program is replaced by a fresh one of the same length.
      for (int attempt = 1;; ++attempt) {
        try {
          dataset.push_back(MakeTask(SampleActionOnly(rng, length), sampler,
                                     options.task, rng));
          break;
        } catch (const UncoverableProgram& e) {
          if (attempt >= options.max_program_attempts) {
            throw GenerationError("no length-" + std::to_string(length) +
                                  " action program found valid inputs: " +
                                  e.what());
          }
        }
      }
    }
  }
}

int Decile(double ratio) {
  return std::clamp(static_cast<int>(std::floor(10.0 * ratio)), 0, 9);
}

TaskSalients ComputeTaskSalients(const SynthesisTask& task) {
  TaskSalients out;
  out.program = ComputeProgramSalients(task.program);
  out.number_of_grids = static_cast<int>(task.pairs.size());
  double width = 0, height = 0;
  long markers = 0, marker_cells = 0;
  for (const IoPair& pair : task.pairs) {
    GridSalients g = ComputeGridSalients(pair.input);
    out.mean_marker_ratio += g.marker_ratio;
    out.mean_wall_ratio += g.wall_ratio;
    width += g.width;
    height += g.height;
    for (int k = 1; k <= kMaxMarkers; ++k) {
      marker_cells += g.marker_count_histogram[static_cast<std::size_t>(k)];
      markers += k * g.marker_count_histogram[static_cast<std::size_t>(k)];
    }
    out.inputs.push_back(g);
  }
  if (!task.pairs.empty()) {
    const double n = static_cast<double>(task.pairs.size());
    out.mean_marker_ratio /= n;
    out.mean_wall_ratio /= n;
    out.mean_width = static_cast<int>(std::lround(width / n));
    out.mean_height = static_cast<int>(std::lround(height / n));
  }
  out.marker_ratio_decile = Decile(out.mean_marker_ratio);
  out.wall_ratio_decile = Decile(out.mean_wall_ratio);
  out.mean_marker_count =
      marker_cells == 0
          ? 0
          : static_cast<int>(std::lround(static_cast<double>(markers) /
                                         static_cast<double>(marker_cells)));
  return out;
}

namespace {

SalientSpec<SynthesisTask> Clamped(
    std::string name, SalientValue lo, SalientValue hi,
    std::function<SalientValue(const TaskSalients&)> field) {
  return SalientSpec<SynthesisTask>{
      std::move(name), IntegerDomain(lo, hi),
      [lo, hi, field = std::move(field)](const SynthesisTask& t) {
        return std::clamp(field(ComputeTaskSalients(t)), lo, hi);
      }};
}

}  // namespace

std::vector<SalientSpec<SynthesisTask>> KarelTaskVariables() {
  std::vector<SalientSpec<SynthesisTask>> out;
  out.push_back(Clamped("num_grids", 1, kMaxPairs,
                        [](const TaskSalients& s) { return s.number_of_grids; }));
  out.push_back(Clamped("program_size", 8, 65,
                        [](const TaskSalients& s) { return s.program.size; }));
  out.push_back(Clamped("control_flow", 0, 15, [](const TaskSalients& s) {
    return s.program.control_flow_count;
  }));
  out.push_back(Clamped("nesting_depth", 0, 8, [](const TaskSalients& s) {
    return s.program.nesting_depth;
  }));
  out.push_back(Clamped("marker_ratio", 0, 9, [](const TaskSalients& s) {
    return s.marker_ratio_decile;
  }));
  out.push_back(Clamped("wall_ratio", 0, 9, [](const TaskSalients& s) {
    return s.wall_ratio_decile;
  }));
  out.push_back(Clamped("grid_width", kMinGridSide, kMaxGridSide,
                        [](const TaskSalients& s) { return s.mean_width; }));
  out.push_back(Clamped("grid_height", kMinGridSide, kMaxGridSide,
                        [](const TaskSalients& s) { return s.mean_height; }));
  out.push_back(Clamped("marker_count", 0, kMaxMarkers, [](const TaskSalients& s) {
    return s.mean_marker_count;
  }));
  return out;
}

namespace {

nlohmann::ordered_json PairToJson(const IoPair& pair) {
  nlohmann::ordered_json out;
  out["in"] = GridToJson(pair.input);
  out["out"] = GridToJson(pair.output);
  return out;
}

IoPair PairFromJson(const nlohmann::json& json) {
  if (!json.is_object() || !json.contains("in") || !json.contains("out")) {
    throw std::invalid_argument("an I/O pair needs \"in\" and \"out\"");
  }
  return {GridFromJson(json["in"]), GridFromJson(json["out"])};
}

}  // namespace

nlohmann::ordered_json TaskToJson(const SynthesisTask& task) {
  nlohmann::ordered_json out;
  out["program"] = EmitTokens(task.program);
  auto pairs = nlohmann::ordered_json::array();
  for (const IoPair& pair : task.pairs) pairs.push_back(PairToJson(pair));
  out["pairs"] = std::move(pairs);
  out["held_out"] = PairToJson(task.held_out);
  return out;
}

SynthesisTask TaskFromJson(const nlohmann::json& json,
                           std::int64_t step_limit) {
  if (!json.is_object() || !json.contains("program") ||
      !json.contains("pairs") || !json.contains("held_out")) {
    throw std::invalid_argument(
        "a task needs \"program\", \"pairs\" and \"held_out\"");
  }
  const auto& tokens_json = json["program"];
  if (!tokens_json.is_array()) {
    throw std::invalid_argument("\"program\" must be an array of tokens");
  }
  std::vector<std::string> tokens;
  for (const auto& t : tokens_json) {
    if (!t.is_string()) throw std::invalid_argument("program tokens must be strings");
    tokens.push_back(t.get<std::string>());
  }
  const auto& pairs_json = json["pairs"];
  if (!pairs_json.is_array()) throw std::invalid_argument("\"pairs\" must be an array");
  std::vector<IoPair> pairs;
  for (const auto& p : pairs_json) pairs.push_back(PairFromJson(p));
  if (pairs.empty() || pairs.size() > static_cast<std::size_t>(kMaxPairs)) {
    throw std::invalid_argument("a task needs 1..5 shown pairs");
  }
  SynthesisTask task{ParseTokens(tokens), std::move(pairs),
                     PairFromJson(json["held_out"])};
  auto check = [&](const IoPair& pair) {
    const ExecResult r = Execute(task.program, pair.input, step_limit);
    if (!r.ok() || r.output() != pair.output) {
      throw std::invalid_argument(
          "a stored output does not match running the program");
    }
  };
  for (const IoPair& pair : task.pairs) check(pair);
  check(task.held_out);
  return task;
}

GridSampler MakeGridSampler(const TaskStreamConfig& config) {
  if (config.narrow) {
    config.narrow->Validate();
    return [params = *config.narrow](Rng& rng) {
      return SampleNarrowGrid(rng, params);
    };
  }
  return [](Rng& rng) { return SampleUniformGrid(rng); };
}

SynthesisTask NextTask(Rng& rng, const TaskStreamConfig& config) {
  if (config.n_pairs < 0 || config.n_pairs > kMaxPairs) {
    throw std::invalid_argument("n_pairs must lie in 0..5");
  }
  const GridSampler sampler = MakeGridSampler(config);
  // Structural filters reject cheaply, so they get a far larger budget than
  // the programs that reach grid sampling.
  constexpr int kMaxFilterRejects = 1000000;
  int filter_rejects = 0;
  for (int attempt = 0; attempt < config.max_program_attempts;) {
    Program program =
        config.programs == TaskStreamConfig::Programs::kCfg
            ? SampleProgram(rng, config.table)
            : SampleActionOnly(rng, static_cast<int>(rng.UniformInt(
                                        config.action_min_length,
                                        config.action_max_length)));
    const bool filtered =
        (config.nested &&
         !HasNested(program, config.nested->first, config.nested->second)) ||
        (config.require_minimal_actions && !HasMinimalActions(program));
    if (filtered) {
      if (++filter_rejects >= kMaxFilterRejects) {
        throw GenerationError("program filters rejected " +
                              std::to_string(filter_rejects) + " programs");
      }
      continue;
    }
    ++attempt;
    TaskOptions options = config.task;
    options.n_pairs = config.n_pairs == 0
                          ? static_cast<int>(rng.UniformInt(1, kMaxPairs))
                          : config.n_pairs;
    try {
      return MakeTask(program, sampler, options, rng);
    } catch (const UncoverableProgram&) {
    }
  }
  throw GenerationError("no program produced a valid task in " +
                        std::to_string(config.max_program_attempts) +
                        " attempts");
}

}  // namespace homogen::karel
