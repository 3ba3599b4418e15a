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

#ifndef HOMOGEN_KAREL_SALIENTS_H_
#define HOMOGEN_KAREL_SALIENTS_H_

#include <array>
#include <cstdint>

#include "homogen/karel/grid.h"
#include "homogen/karel/program.h"

namespace homogen::karel {

struct ProgramSalients {
  // Token count of the canonical emission, `def main ( ) :` included.
  int size = 0;
  // while, repeat, if and ifElse nodes.
  int control_flow_count = 0;
  // Most control-flow nodes on any root-to-leaf path; 0 when there are none.
  int nesting_depth = 0;

  bool operator==(const ProgramSalients&) const = default;
};

ProgramSalients ComputeProgramSalients(const Program& program);

struct GridSalients {
  int width = 0;
  int height = 0;
  double marker_ratio = 0.0;
  double wall_ratio = 0.0;
  // Index k counts cells holding exactly k markers; index 0 is unused.
  std::array<int, 10> marker_count_histogram{};
};

GridSalients ComputeGridSalients(const Grid& grid);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_SALIENTS_H_
