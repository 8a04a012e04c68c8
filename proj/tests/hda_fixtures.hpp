#pragma once

#include <bit>

#include "gen.hpp"
#include "ljoyal/hda.hpp"

namespace fixtures {

using namespace ljoyal;

// Corners 00, 01, 10, 11; a = bottom, b = right, c = left, d = top, so both
// routes 00 -> 11 are "a,b" and "c,d".
inline PrecubicalSet hollow_square() {
    return PrecubicalSet({"00", "01", "10", "11"}, {{"a", 0, 2, "x"}, {"b", 2, 3, "y"}, {"c", 0, 1, "y"}, {"d", 1, 3, "x"}},
                         {});
}

inline PrecubicalSet filled_square() { return hollow_square().with_square({"s", {2, 1, 0, 3}}); }

// The standard n-cube, n <= 3: every face of [0,1]^n, named by its vertex
// masks.
inline PrecubicalSet unit_cube(int n) {
    const unsigned full = (1u << n) - 1;
    auto name = [](unsigned base, unsigned free) { return std::to_string(base) + "+" + std::to_string(free); };
    std::vector<std::string> vertices;
    for (unsigned v = 0; v <= full; ++v)
        vertices.push_back(std::to_string(v));
    std::vector<PrecubicalSet::Edge> edges;
    std::vector<std::pair<unsigned, unsigned>> keys1, keys2;
    for (unsigned base = 0; base <= full; ++base)
        for (int c = 0; c < n; ++c)
            if (!((base >> c) & 1u)) {
                edges.push_back({name(base, 1u << c), int(base), int(base | (1u << c)), ""});
                keys1.push_back({base, 1u << c});
            }
    auto index = [](const std::vector<std::pair<unsigned, unsigned>>& keys, unsigned base, unsigned free) {
        return int(std::find(keys.begin(), keys.end(), std::pair{base, free}) - keys.begin());
    };
    // d^a_i fixes the i-th free coordinate at a
    auto faces = [&](const std::vector<std::pair<unsigned, unsigned>>& lower, unsigned base, unsigned free) {
        std::vector<int> out;
        for (unsigned rest = free; rest; rest &= rest - 1) {
            const unsigned bit = rest & -rest;
            out.push_back(index(lower, base, free & ~bit));
            out.push_back(index(lower, base | bit, free & ~bit));
        }
        return out;
    };
    std::vector<PrecubicalSet::Cube> squares, cubes;
    for (unsigned base = 0; base <= full; ++base)
        for (unsigned free = 1; free <= full; ++free)
            if (!(base & free) && std::popcount(free) == 2) {
                squares.push_back({name(base, free), faces(keys1, base, free)});
                keys2.push_back({base, free});
            }
    if (n == 3)
        cubes.push_back({name(0, 7), faces(keys2, 0, 7)});
    return PrecubicalSet(std::move(vertices), std::move(edges), std::move(squares), std::move(cubes));
}

// A w x h grid of vertices with every unit edge, directed right and up, and
// a chosen set of unit squares filled.
struct Grid {
    int w = 0, h = 0;
    std::vector<std::string> vertices;
    std::vector<PrecubicalSet::Edge> edges;
    std::vector<PrecubicalSet::Cube> cells; // every unit square

    int vertex(int i, int j) const { return j * w + i; }
    PrecubicalSet with(const std::vector<bool>& filled) const {
        std::vector<PrecubicalSet::Cube> squares;
        for (std::size_t s = 0; s < cells.size(); ++s)
            if (filled[s])
                squares.push_back(cells[s]);
        return PrecubicalSet(vertices, edges, std::move(squares));
    }
};

inline Grid grid(int w, int h) {
    Grid g{w, h, {}, {}, {}};
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i)
            g.vertices.push_back("v" + std::to_string(i) + "_" + std::to_string(j));
    auto horizontal = [&](int i, int j) { return "h" + std::to_string(i) + "_" + std::to_string(j); };
    auto vertical = [&](int i, int j) { return "u" + std::to_string(i) + "_" + std::to_string(j); };
    for (int j = 0; j < h; ++j)
        for (int i = 0; i < w; ++i) {
            if (i + 1 < w)
                g.edges.push_back({horizontal(i, j), g.vertex(i, j), g.vertex(i + 1, j), ""});
            if (j + 1 < h)
                g.edges.push_back({vertical(i, j), g.vertex(i, j), g.vertex(i, j + 1), ""});
        }
    auto edge = [&](const std::string& id) {
        return int(std::find_if(g.edges.begin(), g.edges.end(), [&](const auto& e) { return e.id == id; }) -
                   g.edges.begin());
    };
    for (int j = 0; j + 1 < h; ++j)
        for (int i = 0; i + 1 < w; ++i)
            g.cells.push_back({"s" + std::to_string(i) + "_" + std::to_string(j),
                               {edge(vertical(i, j)), edge(vertical(i + 1, j)), edge(horizontal(i, j)),
                                edge(horizontal(i, j + 1))}});
    return g;
}

// A grid with at most 12 unit squares, some of them filled.
inline Grid random_grid(testgen::Rng& rng, std::vector<bool>& filled) {
    int w = testgen::uniform(rng, 2, 4), h = testgen::uniform(rng, 2, 4);
    if ((w - 1) * (h - 1) > 12)
        h = 3;
    Grid g = grid(w, h);
    filled.assign(g.cells.size(), false);
    for (std::size_t s = 0; s < filled.size(); ++s)
        filled[s] = testgen::coin(rng, 0.4);
    return g;
}

} // namespace fixtures
