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

// Writes the bundled data set: empty-32-32 and a random 32x32 map with 10%
// obstacles, each with 25 scenario files of 100 entries. The random map is a
// seeded stand-in for the MovingAI map of the same shape, not a copy of it.

#include "qpmapf/io/movingai.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace qpmapf;

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

// Largest 4-connected component, as cell ids.
std::vector<CellId> main_component(const GridMap& map)
{
    std::vector<int> label(static_cast<std::size_t>(map.size()), -1);
    std::vector<CellId> best;
    for (CellId c = 0; c < map.size(); ++c) {
        if (!map.passable(c) || label[static_cast<std::size_t>(c)] >= 0)
            continue;
        std::vector<CellId> comp{c};
        label[static_cast<std::size_t>(c)] = c;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            const CellId* m = map.moves(comp[i]);
            for (int k = 1; k < kNumMoves; ++k)
                if (m[k] != kNoCell && label[static_cast<std::size_t>(m[k])] < 0) {
                    label[static_cast<std::size_t>(m[k])] = c;
                    comp.push_back(m[k]);
                }
        }
        if (comp.size() > best.size())
            best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    return best;
}

ScenarioFile make_scenarios(const GridMap& map, const std::string& map_name, std::mt19937_64& rng, int entries)
{
    const std::vector<CellId> cells = main_component(map);
    std::vector<CellId> starts = cells, goals = cells;
    std::shuffle(starts.begin(), starts.end(), rng);
    std::shuffle(goals.begin(), goals.end(), rng);
    ScenarioFile file;
    for (int i = 0; i < entries; ++i) {
        const CellId s = starts[static_cast<std::size_t>(i)];
        const CellId g = goals[static_cast<std::size_t>(i)];
        const int d = map.distances_from(s)[static_cast<std::size_t>(g)];
        ScenarioEntry e;
        e.bucket = d / 4;
        e.map_name = map_name;
        e.map_width = map.width();
        e.map_height = map.height();
        e.start = map.coord(s);
        e.goal = map.coord(g);
        e.reference_length = d;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.8f", static_cast<double>(d));
        e.reference_text = buf;
        file.entries.push_back(std::move(e));
    }
    return file;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"generate the bundled maps and scenarios"};
    std::string dir = "data";
    std::uint64_t seed = 20260101;
    app.add_option("--out", dir, "output directory");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    try {
        const GridMap empty(32, 32, std::string(32 * 32, '.'));
        write_file(dir + "/empty-32-32.map", render_map(empty));

        std::mt19937_64 rng(seed);
        std::string glyphs(32 * 32, '.');
        std::vector<std::size_t> order(glyphs.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i = 0; i < glyphs.size() / 10; ++i)
            glyphs[order[i]] = '@';
        const GridMap random(32, 32, glyphs);
        write_file(dir + "/random-32-32-10-synthetic.map", render_map(random));

        for (int s = 1; s <= 25; ++s) {
            const std::string suffix = "-random-" + std::to_string(s) + ".scen";
            write_file(dir + "/empty-32-32" + suffix, render_scen(make_scenarios(empty, "empty-32-32.map", rng, 100)));
            write_file(dir + "/random-32-32-10-synthetic" + suffix,
                       render_scen(make_scenarios(random, "random-32-32-10-synthetic.map", rng, 100)));
        }
    } catch (const std::exception& e) {
        std::cerr << "gen_synthetic: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
