#include "doctest.h"
#include "gen.hpp"

#include "ljoyal/enumerate.hpp"
#include "ljoyal/error.hpp"
#include "ljoyal/shapes.hpp"

using namespace ljoyal;

namespace {

// Number of nondecreasing maps [m] -> [n], counted directly.
long monotone_count(int m, int n) {
    std::vector<int> v(m + 1, 0);
    long count = 0;
    while (true) {
        ++count;
        int i = m;
        while (i >= 0 && v[i] == n)
            --i;
        if (i < 0)
            return count;
        ++v[i];
        for (int j = i + 1; j <= m; ++j)
            v[j] = v[i];
    }
}

} // namespace

TEST_CASE("standard simplex cell counts") {
    CHECK(shapes::simplex(2)->cell_counts() == std::vector<std::size_t>{3, 3, 1});
    CHECK(shapes::simplex(3)->cell_counts() == std::vector<std::size_t>{4, 6, 4, 1});
    CHECK(shapes::boundary(2)->cell_counts() == std::vector<std::size_t>{3, 3});
    CHECK(shapes::horn(2, 1)->cell_counts() == std::vector<std::size_t>{3, 2});
    CHECK(shapes::horn(3, 0)->cell_counts() == std::vector<std::size_t>{4, 6, 3});
    CHECK(shapes::boundary(0)->count(0) == 0);
    CHECK(shapes::simplex(2)->count(3) == 0);
}

TEST_CASE("maps between simplices are monotone maps") {
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(long(enumerate_maps(shapes::simplex(m), shapes::simplex(n)).size()) == monotone_count(m, n));
        }
    CHECK(enumerate_maps(shapes::horn(2, 1), shapes::simplex(1)).size() == 4);
    CHECK(enumerate_maps(shapes::boundary(2), shapes::simplex(1)).size() == 4);
    CHECK(enumerate_maps(shapes::boundary(0), shapes::simplex(1)).size() == 1);
}

TEST_CASE("operators on a simplex agree with composition of vertex sequences") {
    testgen::Rng rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        int n = testgen::uniform(rng, 0, 5);
        int k = testgen::uniform(rng, 0, 5);
        int j = testgen::uniform(rng, 0, 5);
        auto delta = shapes::simplex(n);
        auto v = testgen::monotone(rng, k + 1, n);
        auto theta = testgen::monotone(rng, j + 1, k);
        std::vector<int> composite;
        for (int t : theta)
            composite.push_back(v[t]);
        Simplex s = shapes::monotone_simplex(delta, v);
        CHECK(delta->apply(s, theta) == shapes::monotone_simplex(delta, composite));
        int i = testgen::uniform(rng, 0, k);
        std::vector<int> doubled(v);
        doubled.insert(doubled.begin() + i, v[i]);
        CHECK(SimplicialSet::degeneracy(s, i) == shapes::monotone_simplex(delta, doubled));
    }
}

TEST_CASE("simplicial identities hold on formal simplices") {
    auto x = shapes::interval(3);
    for (int n = 1; n <= 4; ++n)
        for (const Simplex& s : x->formal_simplices(n)) {
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (n >= 2)
                        CHECK(x->face(x->face(s, j), i) == x->face(x->face(s, i), j - 1));
            for (int j = 0; j <= n; ++j) {
                Simplex t = SimplicialSet::degeneracy(s, j);
                CHECK(x->face(t, j) == s);
                CHECK(x->face(t, j + 1) == s);
            }
        }
}

TEST_CASE("coskeletal levels materialize from spheres") {
    auto lazy = shapes::interval(2);
    auto stored = shapes::interval(5);
    for (int n = 0; n <= 5; ++n)
        CHECK(lazy->count(n) == 2);
    CHECK(stored->coskeletal_violation() == std::nullopt);
    CHECK(lazy->count(3) == stored->count(3));
    // Maps into I are determined by vertex images.
    CHECK(enumerate_maps(shapes::simplex(3), lazy).size() == 16);
    CHECK(enumerate_maps(lazy, lazy).size() == 4);
}

TEST_CASE("builder rejects malformed input") {
    {
        SimplicialSet::Builder b(1);
        b.add_vertex("a");
        b.add_cell(1, "f", {Simplex{0, 0, 0}, Simplex{0, 0, 3}});
        CHECK_THROWS_AS(std::move(b).build(), Error);
    }
    {
        SimplicialSet::Builder b(2);
        b.add_vertex("a");
        b.add_vertex("b");
        b.add_cell(1, "f", {Simplex{0, 0, 1}, Simplex{0, 0, 0}});
        b.add_cell(1, "g", {Simplex{0, 0, 0}, Simplex{0, 0, 1}});
        // d0 d1 must equal d0 d0
        b.add_cell(2, "t", {Simplex{1, 0, 0}, Simplex{1, 0, 1}, Simplex{1, 0, 0}});
        try {
            std::move(b).build();
            FAIL("accepted a bad 2-cell");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::SimplicialIdentityViolation);
        }
    }
    {
        SimplicialSet::Builder b(1);
        b.add_vertex("a");
        CHECK_THROWS_AS(b.add_vertex("a"), Error);
        CHECK_THROWS_AS(b.add_cell(2, "x", {}), Error);
    }
}

TEST_CASE("pinned and extended searches") {
    auto d2 = shapes::simplex(2);
    auto h = shapes::horn(2, 1);
    auto inc = shapes::standard_inclusion(shapes::parse_shape("horn:2,1"));
    CHECK(inc.is_monomorphism());
    CHECK(inc.simplicial_violation() == std::nullopt);
    // Every map out of the horn into Delta^1 extends uniquely along the inclusion.
    for (const auto& f : enumerate_maps(h, shapes::simplex(1)))
        CHECK(MapSearch(d2, shapes::simplex(1)).extend(inc, f).all().size() == 1);
    CHECK_THROWS_AS(MapSearch(shapes::simplex(4), shapes::simplex(4), 10).all(), Error);
}
