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

// Random Karel worlds and programs.

#ifndef HOMOGEN_KAREL_GEN_H_
#define HOMOGEN_KAREL_GEN_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "homogen/karel/grid.h"
#include "homogen/karel/program.h"
#include "homogen/rng.h"

namespace homogen::karel {

class GenerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Law of the number of markers placed on a marker cell.
//   kGeom      Geom(0.5) on {1, 2, ...}, values above 9 clamped to 9.
//   kUniform   U{1..9}.
//   kAntiGeom  10 - Geom(0.5), values below 1 clamped to 1.
enum class MarkerCountDist : std::uint8_t { kGeom, kUniform, kAntiGeom };

std::string_view MarkerCountDistName(MarkerCountDist dist);
// Accepts geom/uniform/anti (and G/U/A). Throws GenerationError otherwise.
MarkerCountDist ParseMarkerCountDist(std::string_view name);

int SampleMarkerCount(Rng& rng, MarkerCountDist dist);

// Grid with every salient input variable drawn uniformly:
// sides ~ U{2..16}; marker and wall ratios ~ U(0, 1); per-cell independent
// Bernoulli marker and wall flags, where a wall wins over a marker; marker
// counts ~ U{1..9}; Karel on a uniform non-wall cell facing a uniform
// direction. Grids that come out all walls are redrawn.
Grid SampleUniformGrid(Rng& rng);

struct NarrowGridParams {
  double r_wall = 0.0;
  double r_marker = 0.0;
  MarkerCountDist marker_dist = MarkerCountDist::kUniform;

  // Throws GenerationError unless both ratios are in [0, 1], their sum is at
  // most 1 and at least one cell is left free of walls.
  void Validate() const;
};

// floor(cells * ratio), robust to the ratio being a rounded decimal.
int NarrowCellCount(int cells, double ratio);

// Grid from a fixed slice of the salient space: sides ~ U{10..16}, exactly
// NarrowCellCount(x*y, r_wall) walls and NarrowCellCount(x*y, r_marker)
// further marker cells picked uniformly without replacement, marker counts
// from `marker_dist`, Karel on a uniform non-wall cell and direction.
Grid SampleNarrowGrid(Rng& rng, const NarrowGridParams& params);

// Production weights for random programs. Weights need not sum to one.
struct ProductionTable {
  double action = 0.55;
  double seq = 0.25;
  double if_ = 0.06;
  double if_else = 0.04;
  double while_ = 0.06;
  double repeat = 0.04;
  // Probability of wrapping a sampled condition in one not().
  double negation = 0.2;
  // Programs with more tokens than this are discarded and redrawn.
  int token_cap = 60;

  // Mean number of child statements per statement. Sampling terminates with
  // finite expected size only while this stays below 1.
  double ExpectedChildren() const;
  // Throws GenerationError for negative weights, a zero total, a
  // supercritical table or a token cap below the smallest program.
  void Validate() const;
};

// Draws statements top-down from the production table (conditions uniform
// over the four predicates, repeat counts uniform over 0..19) and redraws
// programs longer than the token cap. Throws GenerationError if 10000
// consecutive draws all exceed the cap.
Program SampleProgram(Rng& rng, const ProductionTable& table = {});

// A straight-line program of the given actions.
Program ActionProgram(const std::vector<Action>& actions);

// min(limit, 5^length) distinct straight-line programs of `length` actions.
// All of them, in lexicographic order, when 5^length <= limit; otherwise a
// uniform sample without replacement. Throws GenerationError unless
// 1 <= length <= 20 and limit >= 1.
std::vector<Program> EnumerateActionOnly(Rng& rng, int length,
                                         std::size_t limit);

// Program whose `length` actions are drawn independently and uniformly.
Program SampleActionOnly(Rng& rng, int length);

enum class ConstructKind : std::uint8_t {
  kWhile,
  kRepeat,
  kIf,      // matches both if and ifElse nodes
  kIfElse,  // matches ifElse nodes only
};

// Accepts while/repeat/if/ifelse. Throws GenerationError otherwise.
ConstructKind ParseConstructKind(std::string_view name);

// True iff a node of kind `inner` lies strictly inside a node of kind
// `outer`.
bool HasNested(const Program& program, ConstructKind outer,
               ConstructKind inner);

// At least two actions, at least one of them a move.
bool HasMinimalActions(const Program& program);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_GEN_H_
