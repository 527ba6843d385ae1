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

#include "qpmapf/io/movingai.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qpmapf {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + (column > 0 ? ", column " + std::to_string(column) : "") +
                         ": " + what),
      line_(line), column_(column)
{
}

namespace {

// Splits on '\n'; a final empty piece after a trailing newline is dropped
// and reported through `trailing`.
std::vector<std::string_view> split_lines(std::string_view text, bool& trailing)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            trailing = false;
            return lines;
        }
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    trailing = true;
    return lines;
}

int parse_int(std::string_view s, int line, int column, const char* what)
{
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw ParseError(std::string("expected an integer ") + what + ", got '" + std::string(s) + "'", line, column);
    return v;
}

// "key value" header line.
std::string_view header_value(const std::vector<std::string_view>& lines, std::size_t i, std::string_view key)
{
    const int line = static_cast<int>(i) + 1;
    if (i >= lines.size())
        throw ParseError("truncated header, expected '" + std::string(key) + "'", line, 0);
    const std::string_view l = lines[i];
    if (l.size() <= key.size() + 1 || l.substr(0, key.size()) != key || l[key.size()] != ' ')
        throw ParseError("expected '" + std::string(key) + " <value>', got '" + std::string(l) + "'", line, 1);
    return l.substr(key.size() + 1);
}

} // namespace

MapFile parse_map_file(std::string_view text)
{
    bool trailing = true;
    const auto lines = split_lines(text, trailing);
    MapFile f;
    f.trailing_newline = trailing;
    f.type = std::string(header_value(lines, 0, "type"));
    const int height = parse_int(header_value(lines, 1, "height"), 2, 8, "height");
    const int width = parse_int(header_value(lines, 2, "width"), 3, 7, "width");
    if (height <= 0 || width <= 0)
        throw ParseError("map dimensions must be positive", height <= 0 ? 2 : 3, 0);
    if (lines.size() < 4 || lines[3] != "map")
        throw ParseError("expected 'map'", 4, 1);

    std::string glyphs;
    glyphs.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        const std::size_t i = 4 + static_cast<std::size_t>(y);
        const int line = static_cast<int>(i) + 1;
        if (i >= lines.size())
            throw ParseError("truncated map: header says height " + std::to_string(height) + " but only " +
                                 std::to_string(y) + " rows follow",
                             line, 0);
        const std::string_view row = lines[i];
        for (std::size_t x = 0; x < row.size() && x < static_cast<std::size_t>(width); ++x) {
            const char g = row[x];
            if (g != '.' && g != 'G' && g != 'S' && g != '@' && g != 'O' && g != 'T' && g != 'W')
                throw ParseError(std::string("unknown glyph '") + g + "'", line, static_cast<int>(x) + 1);
        }
        if (row.size() != static_cast<std::size_t>(width))
            throw ParseError("row has " + std::to_string(row.size()) + " glyphs, header says width " +
                                 std::to_string(width),
                             line, static_cast<int>(std::min(row.size(), static_cast<std::size_t>(width))) + 1);
        glyphs.append(row);
    }
    if (lines.size() > 4 + static_cast<std::size_t>(height))
        throw ParseError("extra rows after the map", 5 + height, 0);
    f.map = GridMap(width, height, std::move(glyphs));
    return f;
}

GridMap parse_map(std::string_view text) { return parse_map_file(text).map; }

std::string render_map(const MapFile& file)
{
    const GridMap& m = file.map;
    std::string out = "type " + file.type + "\nheight " + std::to_string(m.height()) + "\nwidth " +
                      std::to_string(m.width()) + "\nmap";
    for (int y = 0; y < m.height(); ++y) {
        out += '\n';
        out.append(m.glyphs(), static_cast<std::size_t>(y) * static_cast<std::size_t>(m.width()),
                   static_cast<std::size_t>(m.width()));
    }
    if (file.trailing_newline)
        out += '\n';
    return out;
}

std::string render_map(const GridMap& map) { return render_map(MapFile{"octile", map, true}); }

ScenarioFile parse_scen_file(std::string_view text)
{
    bool trailing = true;
    const auto lines = split_lines(text, trailing);
    ScenarioFile f;
    f.trailing_newline = trailing;
    if (lines.empty())
        throw ParseError("empty scenario file", 1, 0);
    const std::string_view version = header_value(lines, 0, "version");
    if (version != "1" && version != "1.0")
        throw ParseError("unsupported scenario version '" + std::string(version) + "'", 1, 9);
    f.version = std::string(version);

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line = static_cast<int>(i) + 1;
        std::vector<std::string_view> fields;
        std::vector<int> columns;
        std::size_t pos = 0;
        const std::string_view l = lines[i];
        for (;;) {
            const std::size_t tab = l.find('\t', pos);
            columns.push_back(static_cast<int>(pos) + 1);
            fields.push_back(l.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
            if (tab == std::string_view::npos)
                break;
            pos = tab + 1;
        }
        if (fields.size() != 9)
            throw ParseError("expected 9 tab-separated fields, got " + std::to_string(fields.size()), line, 0);

        ScenarioEntry e;
        e.bucket = parse_int(fields[0], line, columns[0], "bucket");
        e.map_name = std::string(fields[1]);
        e.map_width = parse_int(fields[2], line, columns[2], "map width");
        e.map_height = parse_int(fields[3], line, columns[3], "map height");
        e.start = {parse_int(fields[4], line, columns[4], "start x"), parse_int(fields[5], line, columns[5], "start y")};
        e.goal = {parse_int(fields[6], line, columns[6], "goal x"), parse_int(fields[7], line, columns[7], "goal y")};
        e.reference_text = std::string(fields[8]);
        const auto [p, ec] = std::from_chars(fields[8].data(), fields[8].data() + fields[8].size(), e.reference_length);
        if (ec != std::errc() || p != fields[8].data() + fields[8].size() || fields[8].empty())
            throw ParseError("expected a number for the reference length, got '" + e.reference_text + "'", line,
                             columns[8]);
        if (e.reference_length < 0.0)
            throw ParseError("negative reference length", line, columns[8]);

        auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < e.map_width && c.y < e.map_height; };
        if (!inside(e.start))
            throw ParseError("start outside the declared map", line, columns[4]);
        if (!inside(e.goal))
            throw ParseError("goal outside the declared map", line, columns[6]);
        f.entries.push_back(std::move(e));
    }
    return f;
}

std::vector<ScenarioEntry> parse_scen(std::string_view text) { return parse_scen_file(text).entries; }

std::string render_scen(const ScenarioFile& file)
{
    std::string out = "version " + file.version;
    for (const ScenarioEntry& e : file.entries) {
        out += '\n';
        out += std::to_string(e.bucket) + '\t' + e.map_name + '\t' + std::to_string(e.map_width) + '\t' +
               std::to_string(e.map_height) + '\t' + std::to_string(e.start.x) + '\t' + std::to_string(e.start.y) +
               '\t' + std::to_string(e.goal.x) + '\t' + std::to_string(e.goal.y) + '\t' + e.reference_text;
    }
    if (file.trailing_newline)
        out += '\n';
    return out;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemInstance load_instance(const GridMap& map, const std::vector<ScenarioEntry>& entries, int k)
{
    if (k < 0 || static_cast<std::size_t>(k) > entries.size())
        throw InstanceError("requested " + std::to_string(k) + " agents but the scenario has " +
                            std::to_string(entries.size()) + " entries");
    ProblemInstance inst;
    inst.map = map;
    std::set<CellId> starts, goals;
    for (int i = 0; i < k; ++i) {
        const ScenarioEntry& e = entries[static_cast<std::size_t>(i)];
        if (!map.passable(e.start) || !map.passable(e.goal))
            throw InstanceError("entry " + std::to_string(i) + ": start or goal is outside the map or blocked");
        const CellId s = map.id(e.start), g = map.id(e.goal);
        if (!starts.insert(s).second)
            throw InstanceError("entry " + std::to_string(i) + ": repeated start cell");
        if (!goals.insert(g).second)
            throw InstanceError("entry " + std::to_string(i) + ": repeated goal cell");
        inst.agents.push_back({i, s, g, 0});
    }
    inst.horizon = std::max(1, horizon_floor(inst));
    inst.validate();
    return inst;
}

} // namespace qpmapf
