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

#include "homogen/karel/gen.h"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>
#include <utility>

#include "homogen/karel/syntax.h"

namespace homogen::karel {

std::string_view MarkerCountDistName(MarkerCountDist dist) {
  switch (dist) {
    case MarkerCountDist::kGeom:
      return "geom";
    case MarkerCountDist::kUniform:
      return "uniform";
    case MarkerCountDist::kAntiGeom:
      return "anti";
  }
  return "?";
}

MarkerCountDist ParseMarkerCountDist(std::string_view name) {
  if (name == "geom" || name == "G") return MarkerCountDist::kGeom;
  if (name == "uniform" || name == "U") return MarkerCountDist::kUniform;
  if (name == "anti" || name == "A") return MarkerCountDist::kAntiGeom;
  throw GenerationError("unknown marker-count distribution '" +
                        std::string(name) + "'");
}

namespace {

// Geom(0.5) on {1, 2, ...}, stopped early once the clamp value is reached.
int GeomClampedAt(Rng& rng, int cap) {
  int k = 1;
  while (k < cap && !rng.Bernoulli(0.5)) ++k;
  return k;
}

Direction RandomDirection(Rng& rng) {
  return static_cast<Direction>(rng.UniformInt(0, 3));
}

void PlaceKarel(Rng& rng, Grid& grid) {
  std::vector<Cell> free;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (!grid.wall({i, j})) free.push_back({i, j});
    }
  }
  const auto pick = static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(free.size()) - 1));
  const Cell cell = free[pick];
  grid.set_karel(cell, RandomDirection(rng));
}

}  // namespace

int SampleMarkerCount(Rng& rng, MarkerCountDist dist) {
  switch (dist) {
    case MarkerCountDist::kGeom:
      return GeomClampedAt(rng, kMaxMarkers);
    case MarkerCountDist::kUniform:
      return static_cast<int>(rng.UniformInt(1, kMaxMarkers));
    case MarkerCountDist::kAntiGeom:
      // 10 - k drops to 1 or below exactly when k >= 9.
      return 10 - GeomClampedAt(rng, kMaxMarkers);
  }
  return 1;
}

Grid SampleUniformGrid(Rng& rng) {
  while (true) {
    const int width = static_cast<int>(rng.UniformInt(kMinGridSide, kMaxGridSide));
    const int height = static_cast<int>(rng.UniformInt(kMinGridSide, kMaxGridSide));
    const double r_marker = rng.UniformReal();
    const double r_wall = rng.UniformReal();
    Grid grid(width, height);
    bool any_free = false;
    for (int i = 0; i < width; ++i) {
      for (int j = 0; j < height; ++j) {
        const bool marker = rng.Bernoulli(r_marker);
        const bool wall = rng.Bernoulli(r_wall);
        if (wall) {
          grid.set_wall({i, j}, true);
        } else {
          any_free = true;
          if (marker) {
            grid.set_markers({i, j},
                             static_cast<int>(rng.UniformInt(1, kMaxMarkers)));
          }
        }
      }
    }
    if (!any_free) continue;
    PlaceKarel(rng, grid);
    return grid;
  }
}

void NarrowGridParams::Validate() const {
  if (!(r_wall >= 0.0 && r_wall <= 1.0) ||
      !(r_marker >= 0.0 && r_marker <= 1.0)) {
    throw GenerationError("r_wall and r_marker must lie in [0, 1]");
  }
  if (r_wall + r_marker > 1.0 + 1e-9) {
    throw GenerationError("r_wall + r_marker must not exceed 1");
  }
  // The smallest narrow grid is 10x10; Karel needs one non-wall cell.
  for (int cells = 100; cells <= 256; ++cells) {
    if (NarrowCellCount(cells, r_wall) >= cells) {
      throw GenerationError("r_wall leaves no free cell for Karel");
    }
  }
}

int NarrowCellCount(int cells, double ratio) {
  return static_cast<int>(std::floor(cells * ratio + 1e-9));
}

Grid SampleNarrowGrid(Rng& rng, const NarrowGridParams& params) {
  params.Validate();
  constexpr int kNarrowMin = 10;
  const int width = static_cast<int>(rng.UniformInt(kNarrowMin, kMaxGridSide));
  const int height = static_cast<int>(rng.UniformInt(kNarrowMin, kMaxGridSide));
  const int cells = width * height;
  const int n_walls = NarrowCellCount(cells, params.r_wall);
  const int n_markers = NarrowCellCount(cells, params.r_marker);
  if (n_walls + n_markers > cells || n_walls >= cells) {
    throw GenerationError("wall and marker cells exceed the grid");
  }
  // Partial Fisher-Yates: the first n_walls picks become walls, the next
  // n_markers picks marker cells.
  std::vector<int> order(static_cast<std::size_t>(cells));
  std::iota(order.begin(), order.end(), 0);
  Grid grid(width, height);
  for (int k = 0; k < n_walls + n_markers; ++k) {
    const auto pick = static_cast<std::size_t>(rng.UniformInt(k, cells - 1));
    std::swap(order[static_cast<std::size_t>(k)], order[pick]);
    const int index = order[static_cast<std::size_t>(k)];
    const Cell c{index % width, index / width};
    if (k < n_walls) {
      grid.set_wall(c, true);
    } else {
      grid.set_markers(c, SampleMarkerCount(rng, params.marker_dist));
    }
  }
  PlaceKarel(rng, grid);
  return grid;
}

double ProductionTable::ExpectedChildren() const {
  const double total = action + seq + if_ + if_else + while_ + repeat;
  return (2 * seq + if_ + 2 * if_else + while_ + repeat) / total;
}

void ProductionTable::Validate() const {
  for (double w : {action, seq, if_, if_else, while_, repeat}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw GenerationError("production weights must be finite and >= 0");
    }
  }
  if (action + seq + if_ + if_else + while_ + repeat <= 0.0) {
    throw GenerationError("production weights sum to zero");
  }
  if (action <= 0.0 || ExpectedChildren() >= 1.0) {
    throw GenerationError(
        "production table is not subcritical: expected children per "
        "statement is " +
        std::to_string(ExpectedChildren()));
  }
  if (!(negation >= 0.0 && negation <= 1.0)) {
    throw GenerationError("negation probability must lie in [0, 1]");
  }
  if (token_cap < 8) {
    throw GenerationError("token cap is below the smallest program (8)");
  }
}

namespace {

class ProgramSampler {
 public:
  ProgramSampler(Rng& rng, const ProductionTable& table, int node_budget)
      : rng_(rng), table_(table), budget_(node_budget) {}

  // Empty when the node budget ran out.
  std::optional<Stmt> Statement() {
    if (--budget_ < 0) return std::nullopt;
    const double total = table_.action + table_.seq + table_.if_ +
                         table_.if_else + table_.while_ + table_.repeat;
    double u = rng_.UniformReal() * total;
    if ((u -= table_.action) < 0) {
      return Stmt::Act(kAllActions[static_cast<std::size_t>(rng_.UniformInt(0, 4))]);
    }
    if ((u -= table_.seq) < 0) {
      auto first = Statement();
      if (!first) return std::nullopt;
      auto second = Statement();
      if (!second) return std::nullopt;
      std::vector<Stmt> items;
      items.push_back(std::move(*first));
      items.push_back(std::move(*second));
      return Stmt::Seq(std::move(items));
    }
    if ((u -= table_.if_) < 0) {
      const Condition c = RandomCondition();
      auto body = Statement();
      if (!body) return std::nullopt;
      return Stmt::If(c, std::move(*body));
    }
    if ((u -= table_.if_else) < 0) {
      const Condition c = RandomCondition();
      auto then_body = Statement();
      if (!then_body) return std::nullopt;
      auto else_body = Statement();
      if (!else_body) return std::nullopt;
      return Stmt::IfElse(c, std::move(*then_body), std::move(*else_body));
    }
    if ((u -= table_.while_) < 0) {
      const Condition c = RandomCondition();
      auto body = Statement();
      if (!body) return std::nullopt;
      return Stmt::While(c, std::move(*body));
    }
    const int count = static_cast<int>(rng_.UniformInt(0, kMaxRepeat));
    auto body = Statement();
    if (!body) return std::nullopt;
    return Stmt::Repeat(count, std::move(*body));
  }

 private:
  Condition RandomCondition() {
    Condition c = Cond(kAllPredicates[static_cast<std::size_t>(rng_.UniformInt(0, 3))]);
    if (rng_.Bernoulli(table_.negation)) c = Not(c);
    return c;
  }

  Rng& rng_;
  const ProductionTable& table_;
  int budget_;
};

}  // namespace

Program SampleProgram(Rng& rng, const ProductionTable& table) {
  table.Validate();
  constexpr int kMaxConsecutiveRejects = 10000;
  for (int attempt = 0; attempt < kMaxConsecutiveRejects; ++attempt) {
    // Every statement costs at least three tokens.
    ProgramSampler sampler(rng, table, table.token_cap / 3 + 1);
    auto body = sampler.Statement();
    if (!body) continue;
    Program program(std::move(*body));
    if (static_cast<int>(EmitTokens(program).size()) <= table.token_cap) {
      return program;
    }
  }
  throw GenerationError("production table never yields a program within " +
                        std::to_string(table.token_cap) + " tokens");
}

Program ActionProgram(const std::vector<Action>& actions) {
  std::vector<Stmt> items;
  items.reserve(actions.size());
  for (Action a : actions) items.push_back(Stmt::Act(a));
  return Program(Stmt::Seq(std::move(items)));
}

namespace {

Program ActionProgramFromIndex(std::uint64_t index, int length) {
  std::vector<Action> actions(static_cast<std::size_t>(length));
  for (int k = length - 1; k >= 0; --k) {
    actions[static_cast<std::size_t>(k)] = kAllActions[index % 5];
    index /= 5;
  }
  return ActionProgram(actions);
}

}  // namespace

std::vector<Program> EnumerateActionOnly(Rng& rng, int length,
                                         std::size_t limit) {
  if (length < 1 || length > 20) {
    throw GenerationError("action-only length must lie in 1..20");
  }
  if (limit == 0) throw GenerationError("limit must be positive");
  std::uint64_t space = 1;
  for (int k = 0; k < length; ++k) space *= 5;
  std::vector<Program> out;
  if (space <= limit) {
    out.reserve(space);
    for (std::uint64_t index = 0; index < space; ++index) {
      out.push_back(ActionProgramFromIndex(index, length));
    }
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  out.reserve(limit);
  while (out.size() < limit) {
    const auto index = static_cast<std::uint64_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(space - 1)));
    if (seen.insert(index).second) {
      out.push_back(ActionProgramFromIndex(index, length));
    }
  }
  return out;
}

Program SampleActionOnly(Rng& rng, int length) {
  if (length < 1) throw GenerationError("action-only length must be >= 1");
  std::vector<Action> actions;
  actions.reserve(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    actions.push_back(kAllActions[static_cast<std::size_t>(rng.UniformInt(0, 4))]);
  }
  return ActionProgram(actions);
}

ConstructKind ParseConstructKind(std::string_view name) {
  if (name == "while") return ConstructKind::kWhile;
  if (name == "repeat") return ConstructKind::kRepeat;
  if (name == "if") return ConstructKind::kIf;
  if (name == "ifelse" || name == "ifElse") return ConstructKind::kIfElse;
  throw GenerationError("unknown construct '" + std::string(name) + "'");
}

namespace {

bool Matches(const Stmt& s, ConstructKind kind) {
  switch (kind) {
    case ConstructKind::kWhile:
      return s.kind == StmtKind::kWhile;
    case ConstructKind::kRepeat:
      return s.kind == StmtKind::kRepeat;
    case ConstructKind::kIf:
      return s.kind == StmtKind::kIf || s.kind == StmtKind::kIfElse;
    case ConstructKind::kIfElse:
      return s.kind == StmtKind::kIfElse;
  }
  return false;
}

bool FindNested(const Stmt& s, bool inside_outer, ConstructKind outer,
                ConstructKind inner) {
  if (inside_outer && Matches(s, inner)) return true;
  const bool below = inside_outer || Matches(s, outer);
  for (const Stmt& child : s.children) {
    if (FindNested(child, below, outer, inner)) return true;
  }
  return false;
}

void CountActions(const Stmt& s, int& total, int& moves) {
  if (s.kind == StmtKind::kAction) {
    ++total;
    if (s.action == Action::kMove) ++moves;
  }
  for (const Stmt& child : s.children) CountActions(child, total, moves);
}

}  // namespace

bool HasNested(const Program& program, ConstructKind outer,
               ConstructKind inner) {
  return FindNested(program.body(), false, outer, inner);
}

bool HasMinimalActions(const Program& program) {
  int total = 0;
  int moves = 0;
  CountActions(program.body(), total, moves);
  return total >= 2 && moves >= 1;
}

}  // namespace homogen::karel
