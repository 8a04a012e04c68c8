#include "doctest.h"
#include "ljoyal/error.hpp"
#include "site_fixtures.hpp"

using namespace ljoyal;

namespace {

int count_sieves(const FiniteSite& s, int u) { return int(s.covering(u).size()); }

SetPresheaf one_point(const FiniteSite& site) {
    const auto& c = site.category();
    return SetPresheaf{std::vector<int>(c.object_count(), 1), std::vector<std::vector<int>>(c.arrow_count(), {0})};
}

} // namespace

TEST_CASE("site validation") {
    auto one = FiniteSite::trivial(fixtures::cyclic_groupoid(1, 1));
    CHECK(one.is_trivial());
    CHECK(count_sieves(one, 0) == 1);

    auto two = fixtures::two_object_site();
    // {a} and the maximal sieve on U; the maximal sieve on V
    CHECK(count_sieves(two, 0) == 2);
    CHECK(count_sieves(two, 1) == 1);
    CHECK(two.covers(0, two.closure(0, {2})));
    CHECK_FALSE(two.is_trivial());

    try {
        FiniteSite bad(fixtures::arrow_category(), {{{}}, {}});
        FAIL("expected a violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TopologyAxiomViolation);
        CHECK(e.detail()["axiom"] == "stability");
    }
    // the generated topology repairs it: everything covers
    auto gen = FiniteSite::generated(fixtures::arrow_category(), {{{}}, {}});
    CHECK(gen.covers(1, 0));

    SUBCASE("json round trip") {
        auto again = site_from_json(two.to_json());
        for (int u = 0; u < 2; ++u)
            CHECK(again.covering(u) == two.covering(u));
    }

    SUBCASE("random generated topologies satisfy the axioms") {
        testgen::Rng rng(5);
        for (int i = 0; i < 15; ++i) {
            auto s = fixtures::random_site(rng);
            std::vector<std::vector<std::vector<int>>> families(s.objects());
            for (int u = 0; u < s.objects(); ++u)
                for (Sieve r : s.covering(u))
                    families[u].push_back(s.members(u, r));
            FiniteSite checked(s.category(), families);
            for (int u = 0; u < s.objects(); ++u)
                CHECK(checked.covering(u) == s.covering(u));
        }
    }
}

TEST_CASE("local epimorphisms") {
    auto two = fixtures::two_object_site();
    // G = point; F empty over U, a point over V
    SetPresheaf g = one_point(two);
    SetPresheaf f{{0, 1}, {{}, {0}, {}}};
    SetMap m{{{}, {0}}};
    validate(two, f);
    validate(two, f, g, m);
    CHECK(local_epi(two, g, m).is_yes());
    CHECK(local_epi(FiniteSite::trivial(fixtures::arrow_category()), g, m).is_no());
    SetMap id{{{0}, {0}}};
    CHECK(local_epi(FiniteSite::trivial(fixtures::arrow_category()), g, id).is_yes());

    SUBCASE("naturality is checked") {
        SetPresheaf g2{{2, 1}, {{0, 1}, {0}, {0, 0}}};
        SetPresheaf f2{{1, 1}, {{0}, {0}, {0}}};
        SetMap second{{{1}, {0}}};
        CHECK_NOTHROW(validate(two, f2, g2, second));
        SetPresheaf g3{{2, 2}, {{0, 1}, {0, 1}, {0, 1}}};
        SetMap twisted{{{0}, {1}}};
        CHECK_THROWS_AS(validate(two, f2, g3, twisted), Error);
        SetPresheaf broken{{2, 1}, {{0, 1}, {0}, {0, 3}}};
        CHECK_THROWS_AS(validate(two, broken), Error);
    }
}

TEST_CASE("sheafification") {
    auto two = fixtures::two_object_site();
    // two sections over U that agree over V merge
    SetPresheaf f{{2, 1}, {{0, 1}, {0}, {0, 0}}};
    CHECK(is_sheaf(two, f).is_no());
    auto l = sheafify_set(two, f);
    CHECK(l.sheaf.size == std::vector<int>{1, 1});
    CHECK(is_sheaf(two, l.sheaf).is_yes());
    // an empty value over U gets its section glued in
    SetPresheaf e{{0, 1}, {{}, {0}, {}}};
    CHECK(sheafify_set(two, e).sheaf.size == std::vector<int>{1, 1});

    auto trivial = FiniteSite::trivial(fixtures::arrow_category());
    auto t = sheafify_set(trivial, f);
    CHECK(t.sheaf.size == f.size);
    CHECK(is_bijective(f, t.sheaf, t.unit));

    SUBCASE("random presheaves") {
        testgen::Rng rng(17);
        int isos = 0, nontrivial = 0;
        for (int i = 0; i < 25; ++i) {
            auto site = fixtures::random_site(rng);
            auto inst = fixtures::random_set_map(rng, site);
            validate(site, inst.f);
            validate(site, inst.g);
            validate(site, inst.f, inst.g, inst.m);
            auto lf = sheafify_set(site, inst.f);
            validate(site, lf.sheaf);
            validate(site, inst.f, lf.sheaf, lf.unit);
            CHECK(is_sheaf(site, lf.sheaf).is_yes());
            // sheaves are fixed
            auto again = sheafify_set(site, lf.sheaf);
            CHECK(is_bijective(lf.sheaf, again.sheaf, again.unit));
            // L^2 m is an isomorphism iff m is locally epi and locally mono
            auto lg = sheafify_set(site, inst.g);
            SetMap lm = sheafify_map(site, inst.f, inst.g, inst.m);
            validate(site, lf.sheaf, lg.sheaf, lm);
            const bool local_iso = local_epi(site, inst.g, inst.m).is_yes() && local_mono(site, inst.f, inst.m).is_yes();
            CHECK(is_bijective(lf.sheaf, lg.sheaf, lm) == local_iso);
            isos += local_iso;
            nontrivial += !site.is_trivial();
        }
        CHECK(isos > 0);
        CHECK(isos < 25);
        CHECK(nontrivial > 5);
    }
}

namespace {

// X(U) = the horn, X(V) = Delta^2: the horn fills only after restriction to V.
fixtures::SimplicialPresheaf horn_then_simplex(const FiniteSite& site) {
    auto incl = shapes::standard_inclusion({shapes::Kind::horn, 2, 1});
    const auto& c = site.category();
    fixtures::SimplicialPresheaf x{{incl.source(), incl.target()}, {}};
    for (int a = 0; a < c.arrow_count(); ++a)
        x.restrict.push_back(c.is_identity(a) ? SimplicialMap::identity(x.values[a]) : incl);
    return x;
}

} // namespace

TEST_CASE("local lifting") {
    auto two = fixtures::two_object_site();
    auto trivial = FiniteSite::trivial(fixtures::arrow_category());
    auto horn = shapes::standard_inclusion({shapes::Kind::horn, 2, 1});
    auto x = horn_then_simplex(two);
    validate(two, x);
    auto f = terminal_map(two, x);
    validate(two, f);
    CHECK(sectionwise_rlp(f, horn).is_no());
    CHECK(has_local_rlp(two, f, horn).is_yes());
    Decision t = has_local_rlp(trivial, f, horn);
    REQUIRE(t.is_no());
    CHECK(t.certificate["object"] == "U");

    SUBCASE("classification") {
        auto id = identity_map(x);
        auto cls = classify_local_fibration(two, id, 3);
        CHECK(cls.inner.is_yes());
        CHECK(cls.kan.is_yes());
        CHECK(cls.trivial.is_yes());
        auto qc = terminal_map(two, constant_presheaf(two, shapes::simplex(2)));
        CHECK(classify_local_fibration(two, qc, 3).inner.is_yes());
        CHECK(classify_local_fibration(two, qc, 3).kan.is_no());
        auto bad = terminal_map(two, constant_presheaf(two, shapes::horn(2, 1)));
        auto b = classify_local_fibration(two, bad, 2);
        REQUIRE(b.inner.is_no());
        CHECK(b.inner.certificate["shape"] == "horn:2,1");
        CHECK(b.inner.certificate.contains("top"));
    }

    SUBCASE("presheaf json") {
        auto back = presheaf_map_from_json(two, nlohmann::json::parse(presheaf_map_to_json(two, f).dump()));
        CHECK(back.at[0] == f.at[0]);
        CHECK(back.source.restrict[2] == x.restrict[2]);
    }

    SUBCASE("both routes agree on random instances") {
        testgen::Rng rng(23);
        int yes = 0;
        for (int i = 0; i < 30; ++i) {
            auto site = fixtures::random_site(rng);
            auto g = fixtures::random_presheaf_map(rng, site);
            validate(site, g);
            auto incl = fixtures::random_test_inclusion(rng);
            Decision a = local_rlp_direct(site, g, incl);
            Decision b = local_rlp_via_epi(site, g, incl);
            CHECK(a.is_yes() == b.is_yes());
            yes += a.is_yes();
            if (sectionwise_rlp(g, incl).is_yes())
                CHECK(a.is_yes());
            auto flat = FiniteSite::trivial(site.category());
            CHECK(has_local_rlp(flat, g, incl).is_yes() == sectionwise_rlp(g, incl).is_yes());
        }
        CHECK(yes > 0);
        CHECK(yes < 30);
    }
}

TEST_CASE("local groupoid and joyal equivalence") {
    auto two = fixtures::two_object_site();
    auto trivial = FiniteSite::trivial(fixtures::arrow_category());

    auto id = identity_map(constant_presheaf(two, shapes::simplex(1)));
    CHECK(local_joyal_equiv(two, id, 2).verdict.is_yes());

    auto glued = fixtures::two_points_glued(two);
    validate(two, glued);
    CHECK(joyal_equivalent(glued.at[0], 2).verdict.is_no());
    CHECK(joyal_equivalent(glued.at[1], 2).verdict.is_yes());
    auto local = local_joyal_equiv(two, glued, 2);
    CHECK(local.verdict.is_yes());
    auto flat = local_joyal_equiv(trivial, glued, 2);
    REQUIRE(flat.verdict.is_no());
    CHECK(flat.verdict.certificate["detail"]["part"] == "components");

    SUBCASE("non quasi-categories are rejected") {
        auto bad = terminal_map(two, constant_presheaf(two, shapes::horn(2, 1)));
        try {
            local_joyal_equiv(two, bad, 1);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotSectionwiseQuasicategory);
        }
    }

    SUBCASE("trivial topology is sectionwise") {
        testgen::Rng rng(31);
        int yes = 0;
        for (int i = 0; i < 10; ++i) {
            auto site = FiniteSite::trivial(fixtures::random_site(rng).category());
            auto f = fixtures::random_qc_presheaf_map(rng, site);
            bool sectionwise = true;
            for (const auto& component : f.at)
                sectionwise = sectionwise && joyal_equivalent(component, 2).verdict.is_yes();
            auto r = local_joyal_equiv(site, f, 2);
            REQUIRE_FALSE(r.verdict.is_unknown());
            CHECK(r.verdict.is_yes() == sectionwise);
            yes += sectionwise;
        }
        CHECK(yes > 0);
        CHECK(yes < 10);
    }

    SUBCASE("groupoid presheaves directly") {
        // the discrete groupoid on two objects over U, one object over V
        FiniteCategory d2 = FiniteCategory({"p", "q"}, {}, {}), d1 = FiniteCategory({"p"}, {}, {});
        GroupoidPresheaf g{{d2, d1}, {{0, 1}, {0}, {0, 0}}};
        GroupoidPresheaf h{{d1, d1}, {{0}, {0}, {0}}};
        GroupoidPresheafMap m{{{0, 0}, {0}}};
        validate(two, g, h, m);
        CHECK(local_groupoid_equiv(two, g, h, m).is_yes());
        CHECK(local_groupoid_equiv(trivial, g, h, m).is_no());
        // Z/2 over U collapsing to the trivial group: hom sheaves differ
        auto z2 = fixtures::cyclic_groupoid(1, 2);
        GroupoidPresheaf gz{{z2, d1}, {{0, 1}, {0}, {0, 0}}};
        GroupoidPresheafMap mz{{{0, 0}, {0}}};
        validate(two, gz, h, mz);
        CHECK(local_groupoid_equiv(trivial, gz, h, mz).is_no());
        // over V the two automorphisms agree, so locally this is fine
        CHECK(local_groupoid_equiv(two, gz, h, mz).is_yes());
    }
}
