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

#include "qpmapf/mapf/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace qpmapf {

bool glyph_passable(char glyph)
{
    return glyph == '.' || glyph == 'G' || glyph == 'S';
}

GridMap::GridMap(int width, int height, std::vector<bool> passable) : width_(width), height_(height)
{
    if (width <= 0 || height <= 0)
        throw StructuralError("grid dimensions must be positive");
    if (passable.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw StructuralError("passable mask does not match grid dimensions");
    passable_.resize(passable.size());
    glyphs_.resize(passable.size());
    for (std::size_t i = 0; i < passable.size(); ++i) {
        passable_[i] = passable[i] ? 1 : 0;
        glyphs_[i] = passable[i] ? '.' : '@';
    }
    build_moves();
}

GridMap::GridMap(int width, int height, std::string glyphs) : width_(width), height_(height), glyphs_(std::move(glyphs))
{
    if (width <= 0 || height <= 0)
        throw StructuralError("grid dimensions must be positive");
    if (glyphs_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw StructuralError("glyph count does not match grid dimensions");
    passable_.resize(glyphs_.size());
    std::transform(glyphs_.begin(), glyphs_.end(), passable_.begin(),
                   [](char g) { return static_cast<std::uint8_t>(glyph_passable(g)); });
    build_moves();
}

void GridMap::build_moves()
{
    static constexpr int dx[kNumMoves] = {0, 0, 1, 0, -1};
    static constexpr int dy[kNumMoves] = {0, -1, 0, 1, 0};
    moves_.assign(static_cast<std::size_t>(size()) * kNumMoves, kNoCell);
    for (CellId c = 0; c < size(); ++c) {
        if (!passable(c))
            continue;
        const Cell at = coord(c);
        for (int m = 0; m < kNumMoves; ++m) {
            const Cell to{at.x + dx[m], at.y + dy[m]};
            if (passable(to))
                moves_[static_cast<std::size_t>(c) * kNumMoves + m] = id(to);
        }
    }
}

int GridMap::passable_count() const
{
    return static_cast<int>(std::count(passable_.begin(), passable_.end(), std::uint8_t{1}));
}

bool GridMap::adjacent_or_same(CellId a, CellId b) const
{
    if (a < 0 || a >= size() || !passable(a))
        return false;
    const CellId* m = moves(a);
    return std::find(m, m + kNumMoves, b) != m + kNumMoves;
}

int GridMap::manhattan(CellId a, CellId b) const
{
    const Cell ca = coord(a);
    const Cell cb = coord(b);
    return std::abs(ca.x - cb.x) + std::abs(ca.y - cb.y);
}

std::vector<int> GridMap::distances_from(CellId from) const
{
    std::vector<int> dist(static_cast<std::size_t>(size()), -1);
    if (from < 0 || from >= size() || !passable(from))
        return dist;
    std::deque<CellId> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!queue.empty()) {
        const CellId c = queue.front();
        queue.pop_front();
        for (int m = 1; m < kNumMoves; ++m) {
            const CellId n = step(c, static_cast<Move>(m));
            if (n != kNoCell && dist[static_cast<std::size_t>(n)] < 0) {
                dist[static_cast<std::size_t>(n)] = dist[static_cast<std::size_t>(c)] + 1;
                queue.push_back(n);
            }
        }
    }
    return dist;
}

} // namespace qpmapf
