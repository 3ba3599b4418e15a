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

#include "homogen/karel/grid.h"

#include <algorithm>
#include <string>

namespace homogen::karel {

Direction TurnLeft(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}

Direction TurnRight(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

Cell Step(Cell c, Direction d) {
  switch (d) {
    case Direction::kNorth:
      return {c.i, c.j - 1};
    case Direction::kEast:
      return {c.i + 1, c.j};
    case Direction::kSouth:
      return {c.i, c.j + 1};
    case Direction::kWest:
      return {c.i - 1, c.j};
  }
  return c;
}

char DirectionLetter(Direction d) { return "NESW"[static_cast<int>(d)]; }

Grid::Grid(int width, int height)
    : width_(width),
      height_(height),
      walls_(),
      markers_() {
  if (width < kMinGridSide || width > kMaxGridSide || height < kMinGridSide ||
      height > kMaxGridSide) {
    throw GridError("grid size " + std::to_string(width) + "x" +
                    std::to_string(height) + " outside 2..16");
  }
  walls_.assign(static_cast<std::size_t>(width * height), 0);
  markers_.assign(static_cast<std::size_t>(width * height), 0);
}

std::size_t Grid::Index(Cell c) const {
  if (!InBounds(c)) {
    throw GridError("cell (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                    ") outside the grid");
  }
  return static_cast<std::size_t>(c.j * width_ + c.i);
}

void Grid::set_wall(Cell c, bool wall) { walls_[Index(c)] = wall ? 1 : 0; }

void Grid::set_markers(Cell c, int count) {
  if (count < 0 || count > 255) throw GridError("marker count out of range");
  markers_[Index(c)] = static_cast<std::uint8_t>(count);
}

void Grid::set_karel(Cell c, Direction d) {
  Index(c);
  karel_ = c;
  dir_ = d;
}

void Grid::Validate() const {
  for (int j = 0; j < height_; ++j) {
    for (int i = 0; i < width_; ++i) {
      const Cell c{i, j};
      if (markers(c) > kMaxMarkers) {
        throw GridError("more than 9 markers in a cell");
      }
      if (wall(c) && markers(c) > 0) {
        throw GridError("wall cell holds markers");
      }
    }
  }
  if (wall(karel_)) throw GridError("Karel stands on a wall");
}

int Grid::WallCount() const {
  return static_cast<int>(std::count(walls_.begin(), walls_.end(), 1));
}

int Grid::MarkerCellCount() const {
  return static_cast<int>(std::count_if(markers_.begin(), markers_.end(),
                                        [](std::uint8_t m) { return m > 0; }));
}

nlohmann::ordered_json GridToJson(const Grid& grid) {
  auto walls = nlohmann::ordered_json::array();
  auto markers = nlohmann::ordered_json::array();
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (grid.wall({i, j})) walls.push_back({i, j});
      if (const int k = grid.markers({i, j}); k > 0) markers.push_back({i, j, k});
    }
  }
  nlohmann::ordered_json out;
  out["w"] = grid.width();
  out["h"] = grid.height();
  out["walls"] = std::move(walls);
  out["markers"] = std::move(markers);
  out["karel"] = {{"pos", {grid.karel().i, grid.karel().j}},
                  {"dir", std::string(1, DirectionLetter(grid.direction()))}};
  return out;
}

namespace {

int Int(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw GridError(std::string("expected an integer for ") + what);
  }
  return v.get<int>();
}

Cell CellOf(const nlohmann::json& v, std::size_t arity, const char* what) {
  if (!v.is_array() || v.size() != arity) {
    throw GridError(std::string("malformed ") + what + " entry");
  }
  return {Int(v[0], what), Int(v[1], what)};
}

}  // namespace

Grid GridFromJson(const nlohmann::json& json) {
  if (!json.is_object()) throw GridError("grid must be a JSON object");
  for (const char* key : {"w", "h", "walls", "markers", "karel"}) {
    if (!json.contains(key)) throw GridError(std::string("missing key ") + key);
  }
  Grid grid(Int(json["w"], "w"), Int(json["h"], "h"));
  auto check = [&](Cell c) {
    if (!grid.InBounds(c)) throw GridError("cell outside the grid");
  };
  const auto& walls = json["walls"];
  if (!walls.is_array()) throw GridError("walls must be an array");
  for (const auto& w : walls) {
    const Cell c = CellOf(w, 2, "wall");
    check(c);
    grid.set_wall(c, true);
  }
  const auto& markers = json["markers"];
  if (!markers.is_array()) throw GridError("markers must be an array");
  for (const auto& m : markers) {
    const Cell c = CellOf(m, 3, "marker");
    check(c);
    const int k = Int(m[2], "marker count");
    if (k < 1 || k > kMaxMarkers) throw GridError("marker count outside 1..9");
    if (grid.markers(c) != 0) throw GridError("duplicate marker cell");
    grid.set_markers(c, k);
  }
  const auto& karel = json["karel"];
  if (!karel.is_object() || !karel.contains("pos") || !karel.contains("dir")) {
    throw GridError("malformed karel entry");
  }
  const Cell pos = CellOf(karel["pos"], 2, "karel position");
  check(pos);
  const auto& dir = karel["dir"];
  if (!dir.is_string()) throw GridError("karel dir must be a string");
  const std::string d = dir.get<std::string>();
  const std::string letters = "NESW";
  if (d.size() != 1 || letters.find(d[0]) == std::string::npos) {
    throw GridError("karel dir must be one of N, S, E, W");
  }
  grid.set_karel(pos, static_cast<Direction>(letters.find(d[0])));
  grid.Validate();
  return grid;
}

std::string GridToAscii(const Grid& grid) {
  std::string out;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      const Cell c{i, j};
      if (c == grid.karel()) {
        out += "^>v<"[static_cast<int>(grid.direction())];
      } else if (grid.wall(c)) {
        out += '#';
      } else if (grid.markers(c) > 0) {
        out += static_cast<char>('0' + grid.markers(c));
      } else {
        out += '.';
      }
    }
    out += '\n';
  }
  out += "karel (" + std::to_string(grid.karel().i) + "," +
         std::to_string(grid.karel().j) + ") " +
         DirectionLetter(grid.direction()) +
         " markers=" + std::to_string(grid.markers(grid.karel())) + "\n";
  return out;
}

}  // namespace homogen::karel
