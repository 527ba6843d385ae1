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

#include "qpmapf/mapf/instance.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpmapf {

// Line and column are 1-based; column 0 means the whole line.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

struct MapFile {
    std::string type = "octile";
    GridMap map;
    bool trailing_newline = true;
};

// `.map`: "type <t>", "height H", "width W", "map", then H rows of W glyphs.
// '.', 'G', 'S' are passable; '@', 'O', 'T', 'W' are blocked.
MapFile parse_map_file(std::string_view text);
GridMap parse_map(std::string_view text);
std::string render_map(const MapFile& file);
std::string render_map(const GridMap& map);

// Coordinates follow the file: x is the column, y the row.
struct ScenarioEntry {
    int bucket = 0;
    std::string map_name;
    int map_width = 0;
    int map_height = 0;
    Cell start;
    Cell goal;
    double reference_length = 0.0;
    std::string reference_text; // as written, for exact re-rendering
};

struct ScenarioFile {
    std::string version = "1";
    std::vector<ScenarioEntry> entries;
    bool trailing_newline = true;
};

// `.scen`: "version 1" then tab-separated records
// bucket, map, width, height, start x, start y, goal x, goal y, length.
ScenarioFile parse_scen_file(std::string_view text);
std::vector<ScenarioEntry> parse_scen(std::string_view text);
std::string render_scen(const ScenarioFile& file);

std::string read_text_file(const std::string& path);

// Agents 0..k-1 from the first k entries, all starting at t = 0; the
// horizon is set to horizon_floor. Throws InstanceError for k beyond the
// entries, endpoints outside the map or on blocked cells, and repeated start
// or goal cells.
ProblemInstance load_instance(const GridMap& map, const std::vector<ScenarioEntry>& entries, int k);

} // namespace qpmapf
