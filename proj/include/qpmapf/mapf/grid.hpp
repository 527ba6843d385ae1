// Copyright 2026 The qpmapf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpmapf {

// Row-major cell index into a GridMap.
using CellId = std::int32_t;
inline constexpr CellId kNoCell = -1;

// x is the column, y is the row (MovingAI convention).
struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

// Move order is also the tie-breaking order used by the searches.
enum class Move : std::uint8_t { Wait = 0, North = 1, East = 2, South = 3, West = 4 };
inline constexpr int kNumMoves = 5;

class StructuralError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Four-connected grid with waits. Every move and wait has unit weight;
// move_weight() is the hook for non-uniform weights.
class GridMap {
  public:
    GridMap() = default;
    GridMap(int width, int height, std::vector<bool> passable);
    // Keeps the original glyph per cell so the map renders back bit-exactly.
    GridMap(int width, int height, std::string glyphs);

    int width() const { return width_; }
    int height() const { return height_; }
    int size() const { return width_ * height_; }

    bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
    bool passable(CellId id) const { return passable_[static_cast<std::size_t>(id)] != 0; }
    bool passable(Cell c) const { return in_bounds(c) && passable(id(c)); }
    CellId id(Cell c) const { return c.y * width_ + c.x; }
    Cell coord(CellId id) const { return {id % width_, id / width_}; }
    char glyph(CellId id) const { return glyphs_[static_cast<std::size_t>(id)]; }
    const std::string& glyphs() const { return glyphs_; }
    int passable_count() const;

    // Target of a move, or kNoCell if it leaves the map or hits an obstacle.
    CellId step(CellId from, Move m) const { return moves_[static_cast<std::size_t>(from) * kNumMoves + static_cast<std::size_t>(m)]; }
    const CellId* moves(CellId from) const { return &moves_[static_cast<std::size_t>(from) * kNumMoves]; }

    // Wait or four-adjacent move between passable cells.
    bool adjacent_or_same(CellId a, CellId b) const;
    double move_weight(CellId, CellId) const { return 1.0; }
    int manhattan(CellId a, CellId b) const;

    // Breadth-first distances from `from`; -1 marks unreachable cells.
    std::vector<int> distances_from(CellId from) const;

  private:
    void build_moves();

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> passable_;
    std::string glyphs_;
    std::vector<CellId> moves_;
};

bool glyph_passable(char glyph);

} // namespace qpmapf
