#include <map>
#include <tuple>

#include "ljoyal/error.hpp"
#include "ljoyal/lifting.hpp"
#include "ljoyal/quasicat.hpp"
#include "ljoyal/shapes.hpp"
#include "ljoyal/sset_io.hpp"

namespace ljoyal {

namespace {

[[noreturn]] void not_nerve(const std::string& why, nlohmann::json detail = nullptr) {
    throw Error(ErrorKind::TargetNotNerve, why, std::move(detail));
}

} // namespace

NerveData category_of_nerve(const SSetPtr& y, std::uint64_t budget) {
    if (!y->is_coskeletal() || *y->coskeletal_above() > 2)
        not_nerve("target is not 2-coskeletal");
    const int objects = int(y->count(0));
    std::vector<std::string> names;
    for (int v = 0; v < objects; ++v)
        names.push_back(y->cell(0, v).id);
    std::vector<FiniteCategory::Arrow> arrows;
    for (int e = 0; e < int(y->count(1)); ++e) {
        const Simplex s{1, 0, e};
        arrows.push_back({y->cell(1, e).id, y->vertex(s, 0).base, y->vertex(s, 1).base});
    }
    auto arrow_of = [&](const Simplex& e) { return e.degenerate() ? e.base : objects + e.base; };

    std::map<std::pair<int, int>, int> composite;
    for (const Simplex& t : y->formal_simplices(2)) {
        const int f = arrow_of(y->face(t, 2)), g = arrow_of(y->face(t, 0)), h = arrow_of(y->face(t, 1));
        auto [it, fresh] = composite.emplace(std::pair{f, g}, h);
        if (!fresh && it->second != h)
            not_nerve("a composable pair has two composites", {{"simplex", y->name(t)}});
    }
    auto src = [&](int a) { return a < objects ? a : arrows[a - objects].src; };
    auto tgt = [&](int a) { return a < objects ? a : arrows[a - objects].tgt; };
    auto id_of = [&](int a) { return a < objects ? "id:" + names[a] : arrows[a - objects].id; };
    std::vector<std::vector<std::string>> table;
    const int total = objects + int(arrows.size());
    for (int f = objects; f < total; ++f)
        for (int g = objects; g < total; ++g) {
            if (tgt(f) != src(g))
                continue;
            auto it = composite.find({f, g});
            if (it == composite.end())
                not_nerve("a composable pair has no composite", {{"pair", {id_of(f), id_of(g)}}});
            table.push_back({id_of(f), id_of(g), id_of(it->second)});
        }

    NerveData out;
    try {
        out.category = FiniteCategory(std::move(names), std::move(arrows), table);
    } catch (const Error& e) {
        not_nerve(std::string("composition is not a category: ") + e.what());
    }
    out.nerve = nerve(out.category);
    auto pinned = [&](const SSetPtr& from, const SSetPtr& to) {
        MapSearch search(from, to, budget);
        for (int v = 0; v < int(from->count(0)); ++v)
            search.pin(0, v, Simplex{0, 0, v});
        for (int e = 0; e < int(from->count(1)); ++e)
            search.pin(1, e, Simplex{1, 0, e});
        auto found = search.first();
        if (!found)
            not_nerve("target does not match the nerve of its path category");
        return *found;
    };
    out.to_set = pinned(out.nerve, y);
    out.from_set = pinned(y, out.nerve);
    return out;
}

IsoArrowCategory iso_arrow_category(const FiniteCategory& c) {
    std::vector<int> isos;
    for (int a = 0; a < c.arrow_count(); ++a)
        if (c.inverse(a))
            isos.push_back(a);
    std::vector<std::string> objects;
    std::map<int, int> object_of;
    for (int u : isos) {
        object_of[u] = int(objects.size());
        objects.push_back(c.arrow(u).id);
    }
    IsoArrowCategory out;
    using Key = std::tuple<int, int, int>; // (u, u', p)
    std::map<Key, int> index;
    std::vector<Key> keys;
    std::vector<FiniteCategory::Arrow> arrows;
    for (int u : isos) {
        index[{u, u, c.identity(c.arrow(u).src)}] = object_of[u];
        keys.push_back({u, u, c.identity(c.arrow(u).src)});
    }
    for (int u : isos)
        for (int v : isos)
            for (int p : c.hom(c.arrow(u).src, c.arrow(v).src)) {
                if (u == v && c.is_identity(p))
                    continue;
                index[{u, v, p}] = int(keys.size());
                keys.push_back({u, v, p});
                arrows.push_back({c.arrow(p).id + "@" + c.arrow(u).id + ">" + c.arrow(v).id, object_of[u], object_of[v]});
            }
    auto name = [&](int a) { return a < int(isos.size()) ? "id:" + objects[a] : arrows[a - isos.size()].id; };
    std::vector<std::vector<std::string>> table;
    for (int a = int(isos.size()); a < int(keys.size()); ++a)
        for (int b = int(isos.size()); b < int(keys.size()); ++b) {
            auto [u, v, p] = keys[a];
            auto [v2, w, q] = keys[b];
            if (v != v2)
                continue;
            table.push_back({name(a), name(b), name(index.at({u, w, c.then(p, q)}))});
        }
    out.category = FiniteCategory(objects, arrows, table);
    for (auto [u, v, p] : keys) {
        out.ev0.push_back(p);
        out.ev1.push_back(c.then(c.then(*c.inverse(u), p), v));
    }
    for (int p = 0; p < c.arrow_count(); ++p)
        out.s.push_back(index.at({c.identity(c.arrow(p).src), c.identity(c.arrow(p).tgt), p}));
    return out;
}

PathFactorization mapping_path_factorization(const SimplicialMap& f, int bound, std::uint64_t budget) {
    if (bound < 2 || bound > kMaxDim)
        throw Error(ErrorKind::InvalidArgument, "bound must lie in 2.." + std::to_string(kMaxDim));
    const SSetPtr& x = f.source();
    NerveData y = category_of_nerve(f.target(), budget);
    IsoArrowCategory d = iso_arrow_category(y.category);
    SSetPtr path = nerve(d.category);
    SimplicialMap fn = compose(y.from_set, f);
    SimplicialMap ev0 = nerve_map(path, d.category, y.nerve, y.category, d.ev0);
    SimplicialMap ev1 = nerve_map(path, d.category, y.nerve, y.category, d.ev1);
    SimplicialMap sf = compose(nerve_map(y.nerve, y.category, path, d.category, d.s), fn);

    PathFactorization out{pullback(fn, ev0), {}, {}, {}, {}, {}, bound};
    std::vector<std::vector<Simplex>> images(x->mapped_dim() + 1);
    for (int n = 0; n <= x->mapped_dim(); ++n)
        for (int i = 0; i < int(x->count(n)); ++i)
            images[n].push_back(out.z.pair(Simplex{n, 0, i}, sf.apply(Simplex{n, 0, i})));
    out.sigma = SimplicialMap(x, out.z.set, std::move(images));
    out.pi = compose(y.to_set, compose(ev1, out.z.pr2));
    out.rho = out.z.pr1;

    out.pi_inner_fibration = Decision::yes({{"bound", bound}});
    for (int n = 2; n <= bound && out.pi_inner_fibration.is_yes(); ++n)
        for (int k = 1; k < n; ++k) {
            auto incl = shapes::standard_inclusion({shapes::Kind::horn, n, k});
            if (auto sq = unliftable_square(incl, out.pi, budget)) {
                out.pi_inner_fibration = Decision::no("inner horn without lift", {{"horn", {n, k}},
                                                                                  {"top", map_to_json(sq->top)}});
                break;
            }
        }
    out.rho_trivial_fibration = Decision::yes({{"bound", bound}});
    for (int n = 0; n <= bound; ++n) {
        auto incl = shapes::standard_inclusion({shapes::Kind::boundary, n, 0});
        if (auto sq = unliftable_square(incl, out.rho, budget)) {
            out.rho_trivial_fibration = Decision::no("boundary without lift", {{"boundary", n},
                                                                              {"bottom", map_to_json(sq->bottom)}});
            break;
        }
    }
    return out;
}

nlohmann::ordered_json PathFactorization::to_json() const {
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (int n = 0; n <= std::min(z.set->dim_cap(), bound); ++n)
        counts.push_back(z.set->count(n));
    return {{"z", {{"cell_counts", counts}}},
            {"sigma", map_to_json(sigma)},
            {"pi_inner_fibration", pi_inner_fibration.to_json()},
            {"rho_trivial_fibration", rho_trivial_fibration.to_json()},
            {"bound", bound}};
}

} // namespace ljoyal
