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

#ifndef HOMOGEN_KAREL_GRID_H_
#define HOMOGEN_KAREL_GRID_H_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace homogen::karel {

inline constexpr int kMinGridSide = 2;
inline constexpr int kMaxGridSide = 16;
inline constexpr int kMaxMarkers = 9;

// Cells are (column i, row j) with the origin in the north-west corner;
// moving north decreases j and moving east increases i.
struct Cell {
  int i = 0;
  int j = 0;

  auto operator<=>(const Cell&) const = default;
};

enum class Direction : std::uint8_t { kNorth, kEast, kSouth, kWest };

Direction TurnLeft(Direction d);
Direction TurnRight(Direction d);
Cell Step(Cell c, Direction d);
char DirectionLetter(Direction d);

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Karel world: walls, marker piles and the agent's pose.
class Grid {
 public:
  // An empty world with Karel at (0, 0) facing east. Throws GridError when a
  // side is outside [2, 16].
  Grid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool InBounds(Cell c) const {
    return c.i >= 0 && c.j >= 0 && c.i < width_ && c.j < height_;
  }
  bool wall(Cell c) const { return walls_[Index(c)] != 0; }
  int markers(Cell c) const { return markers_[Index(c)]; }

  // Setters check bounds only; Validate() checks the cross-cell invariants.
  void set_wall(Cell c, bool wall);
  void set_markers(Cell c, int count);

  Cell karel() const { return karel_; }
  Direction direction() const { return dir_; }
  void set_karel(Cell c, Direction d);
  void set_direction(Direction d) { dir_ = d; }

  // Throws GridError if a marker count is outside 0..9, a wall cell holds
  // markers or Karel stands on a wall.
  void Validate() const;

  int WallCount() const;
  int MarkerCellCount() const;

  bool operator==(const Grid&) const = default;

 private:
  std::size_t Index(Cell c) const;

  int width_;
  int height_;
  std::vector<std::uint8_t> walls_;
  std::vector<std::uint8_t> markers_;
  Cell karel_;
  Direction dir_ = Direction::kEast;
};

// {"w":..,"h":..,"walls":[[i,j],..],"markers":[[i,j,k],..],
//  "karel":{"pos":[i,j],"dir":"N"}} with walls and markers in row-major
// (j, then i) order.
nlohmann::ordered_json GridToJson(const Grid& grid);
// Throws GridError on malformed or invariant-violating input.
Grid GridFromJson(const nlohmann::json& json);

// Multi-line picture, one row per line: '#' wall, '.' empty, a digit for a
// marker pile and ^ > v < for Karel, followed by a line with Karel's pose
// and the markers under it.
std::string GridToAscii(const Grid& grid);

}  // namespace homogen::karel

#endif  // HOMOGEN_KAREL_GRID_H_
