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

#include "homogen/karel/salients.h"

#include <algorithm>

#include "homogen/karel/syntax.h"

namespace homogen::karel {

namespace {

void Walk(const Stmt& s, int depth, ProgramSalients& out) {
  if (s.is_control_flow()) {
    ++out.control_flow_count;
    ++depth;
    out.nesting_depth = std::max(out.nesting_depth, depth);
  }
  for (const Stmt& child : s.children) Walk(child, depth, out);
}

}  // namespace

ProgramSalients ComputeProgramSalients(const Program& program) {
  ProgramSalients out;
  out.size = static_cast<int>(EmitTokens(program).size());
  Walk(program.body(), 0, out);
  return out;
}

GridSalients ComputeGridSalients(const Grid& grid) {
  GridSalients out;
  out.width = grid.width();
  out.height = grid.height();
  int walls = 0;
  int marked = 0;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      const Cell c{i, j};
      if (grid.wall(c)) ++walls;
      if (const int k = grid.markers(c); k > 0) {
        ++marked;
        ++out.marker_count_histogram[static_cast<std::size_t>(std::min(k, 9))];
      }
    }
  }
  const double cells = static_cast<double>(grid.cell_count());
  out.marker_ratio = marked / cells;
  out.wall_ratio = walls / cells;
  return out;
}

}  // namespace homogen::karel
