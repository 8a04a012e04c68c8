#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gen.hpp"
#include "ljoyal/finite_category.hpp"

namespace fixtures {

using ljoyal::FiniteCategory;

// A category with the given non-identity arrows, composition given by `comp`
// returning the id of g o f (may be an identity id "id:x").
inline FiniteCategory from_rule(const std::vector<std::string>& objects, std::vector<FiniteCategory::Arrow> arrows,
                                const std::function<std::string(const FiniteCategory::Arrow&,
                                                                const FiniteCategory::Arrow&)>& comp) {
    std::vector<std::vector<std::string>> table;
    for (const auto& f : arrows)
        for (const auto& g : arrows)
            if (f.tgt == g.src)
                table.push_back({f.id, g.id, comp(f, g)});
    return FiniteCategory(objects, std::move(arrows), table);
}

// x <= y given by `leq` on {0..k-1}, assumed reflexive and transitive.
inline FiniteCategory preorder(int k, const std::function<bool(int, int)>& leq) {
    std::vector<std::string> objs;
    for (int i = 0; i < k; ++i)
        objs.push_back("o" + std::to_string(i));
    std::vector<FiniteCategory::Arrow> arrows;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && leq(i, j))
                arrows.push_back({"r" + std::to_string(i) + std::to_string(j), i, j});
    return from_rule(objs, arrows, [](const auto& f, const auto& g) {
        if (f.src == g.tgt)
            return "id:o" + std::to_string(f.src);
        return "r" + std::to_string(f.src) + std::to_string(g.tgt);
    });
}

inline FiniteCategory linear_order(int n) {
    return preorder(n + 1, [](int i, int j) { return i <= j; });
}

// k objects, Hom(i, j) = Z/n for all i, j: a connected groupoid.
inline FiniteCategory cyclic_groupoid(int k, int n) {
    std::vector<std::string> objs;
    for (int i = 0; i < k; ++i)
        objs.push_back("o" + std::to_string(i));
    auto name = [](int i, int j, int g) {
        if (i == j && g == 0)
            return "id:o" + std::to_string(i);
        return "g" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(g);
    };
    std::vector<FiniteCategory::Arrow> arrows;
    std::vector<int> label;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int g = 0; g < n; ++g)
                if (i != j || g != 0)
                    arrows.push_back({name(i, j, g), i, j});
    return from_rule(objs, arrows, [&](const auto& f, const auto& g) {
        int a = std::stoi(f.id.substr(f.id.find('_') + 1));
        int b = std::stoi(g.id.substr(g.id.find('_') + 1));
        return name(f.src, g.tgt, (a + b) % n);
    });
}

// Random preorder on k objects: transitive closure of random relations.
inline FiniteCategory random_preorder(testgen::Rng& rng, int k, double p = 0.4) {
    std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            r[i][j] = i == j || testgen::coin(rng, p);
    for (int m = 0; m < k; ++m)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (r[i][m] && r[m][j])
                    r[i][j] = true;
    return preorder(k, [r](int i, int j) { return bool(r[i][j]); });
}

// A random category from the corpus mix: preorders, groups and groupoids.
inline FiniteCategory random_category(testgen::Rng& rng) {
    switch (testgen::uniform(rng, 0, 2)) {
    case 0: return random_preorder(rng, testgen::uniform(rng, 1, 4));
    case 1: return cyclic_groupoid(1, testgen::uniform(rng, 1, 3));
    default: return cyclic_groupoid(testgen::uniform(rng, 1, 2), testgen::uniform(rng, 1, 2));
    }
}

} // namespace fixtures
