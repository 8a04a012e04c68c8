#include "ljoyal/quasicat.hpp"

#include <numeric>

#include "ljoyal/error.hpp"
#include "ljoyal/lifting.hpp"
#include "ljoyal/parallel.hpp"
#include "ljoyal/shapes.hpp"
#include "ljoyal/sset_io.hpp"

namespace ljoyal {

Decision horn_filling(const SSetPtr& x, int max_dim, bool inner_only, std::uint64_t budget) {
    std::vector<std::pair<int, int>> horns;
    for (int n = 2; n <= max_dim; ++n)
        for (int k = inner_only ? 1 : 0; k <= (inner_only ? n - 1 : n); ++k)
            horns.push_back({n, k});
    auto failures = parallel_map(horns.size(), [&](std::size_t h) {
        auto [n, k] = horns[h];
        return unextendable(shapes::standard_inclusion({shapes::Kind::horn, n, k}), x, budget);
    });
    for (std::size_t h = 0; h < horns.size(); ++h)
        if (failures[h])
            return Decision::no("horn without filler", {{"horn", {horns[h].first, horns[h].second}},
                                                        {"map", map_to_json(*failures[h])}});
    return Decision::yes({{"max_dim", max_dim}, {"horns", horns.size()}});
}

Decision is_quasicategory(const SSetPtr& x, int max_dim, std::uint64_t budget) {
    if (max_dim < 2)
        throw Error(ErrorKind::InvalidArgument, "max_dim must be at least 2");
    Decision d = horn_filling(x, max_dim, true, budget);
    if (!d.is_yes())
        return d;
    bool certified = (x->is_coskeletal() && max_dim >= *x->coskeletal_above() + 1) ||
                     (!x->is_coskeletal() && max_dim >= x->dim_cap() + 1);
    if (certified)
        return d;
    return Decision::unknown("dimension-bound", {{"max_dim", max_dim}, {"dim_cap", x->dim_cap()}});
}

namespace {

Word edge_word(const Simplex& e) { return e.degenerate() ? Word{} : Word{e.base}; }

bool has_level(const SSetPtr& x, int n) { return x->dim_cap() >= n || x->is_coskeletal(); }

} // namespace

FpCategory path_category(const SSetPtr& x, bool complete) {
    std::vector<std::string> objects;
    for (int v = 0; v < int(x->count(0)); ++v)
        objects.push_back(x->cell(0, v).id);
    std::vector<FpCategory::Generator> gens;
    if (has_level(x, 1))
        for (int e = 0; e < int(x->count(1)); ++e) {
            Simplex s{1, 0, e};
            gens.push_back({x->cell(1, e).id, x->vertex(s, 0).base, x->vertex(s, 1).base});
        }
    std::vector<FpCategory::Relation> rels;
    if (has_level(x, 2))
        for (int t = 0; t < int(x->count(2)); ++t) {
            const auto& f = x->cell(2, t).faces;
            Word lhs = edge_word(f[2]), rhs = edge_word(f[1]);
            Word tail = edge_word(f[0]);
            lhs.insert(lhs.end(), tail.begin(), tail.end());
            if (lhs != rhs)
                rels.push_back({Path{x->vertex(Simplex{2, 0, t}, 0).base, std::move(lhs)}, std::move(rhs)});
        }
    FpCategory c(std::move(objects), std::move(gens), std::move(rels));
    if (complete)
        c.complete();
    return c;
}

JCore j_core(const SSetPtr& x, bool quasicategory, int length_bound) {
    JCore out;
    const int edges = has_level(x, 1) ? int(x->count(1)) : 0;
    out.invertible.assign(edges, false);
    std::optional<FpCategory> p;
    for (int e = 0; e < edges; ++e) {
        const Simplex f{1, 0, e};
        const int a = x->vertex(f, 0).base, b = x->vertex(f, 1).base;
        const Simplex id_a{1, 1, a}, id_b{1, 1, b};
        bool witnessed = false;
        if (has_level(x, 2))
            for (const Simplex& g : x->formal_simplices(1)) {
                if (x->vertex(g, 0).base != b || x->vertex(g, 1).base != a)
                    continue;
                if (!x->with_boundary(2, {g, id_a, f}).empty() && !x->with_boundary(2, {f, id_b, g}).empty()) {
                    witnessed = true;
                    break;
                }
            }
        if (witnessed || quasicategory) {
            out.invertible[e] = witnessed;
            continue;
        }
        if (!p)
            p = path_category(x);
        Decision d = is_invertible(*p, Path{a, {e}}, length_bound);
        out.invertible[e] = d.is_yes();
        if (d.is_unknown())
            out.undecided.push_back(x->cell(1, e).id);
    }
    std::optional<int> cosk;
    if (x->is_coskeletal())
        cosk = std::max(*x->coskeletal_above(), 1);
    const int cap = cosk ? std::max(x->dim_cap(), *cosk) : x->dim_cap();
    SimplicialSet::Builder b(cap, cosk);
    if (cosk && x->finite_dim())
        b.finite_dim(*x->finite_dim());
    std::vector<std::vector<int>> index(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        index[n].assign(x->count(n), -1);
        for (int i = 0; i < int(x->count(n)); ++i) {
            const Simplex s{n, 0, i};
            bool keep = true;
            for (int t = 0; t < n && keep; ++t)
                for (int u = t + 1; u <= n && keep; ++u) {
                    const int theta[2] = {t, u};
                    Simplex e = x->apply(s, theta);
                    keep = e.degenerate() || out.invertible[e.base];
                }
            if (!keep)
                continue;
            std::vector<Simplex> faces;
            for (Simplex f : x->cell(n, i).faces) {
                f.base = index[f.base_dim()][f.base];
                faces.push_back(f);
            }
            index[n][i] = b.add_cell(n, x->cell(n, i).id, std::move(faces));
        }
    }
    out.set = std::move(b).build();
    out.inclusion = shapes::inclusion_by_ids(out.set, x);
    return out;
}

FpCategory fundamental_groupoid(const SSetPtr& x, bool complete) {
    return groupoidify(path_category(x, false), complete ? kDefaultRewriteBudget : 0);
}

HomotopyClasses homotopy_classes(const SSetPtr& x, const SSetPtr& y, bool verify_target, std::uint64_t budget) {
    bool quasicategory = false;
    if (verify_target) {
        Decision d = is_quasicategory(y, 3, budget);
        if (d.is_no())
            throw Error(ErrorKind::NotAQuasicategory, "target is not a quasi-category", d.certificate);
        quasicategory = d.is_yes();
    }
    HomotopyClasses out{hom_complex(x, y, 2, budget), {}, 0};
    JCore j = j_core(out.hom.set, quasicategory);
    const int n = int(j.set->count(0));
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    if (has_level(j.set, 1))
        for (int e = 0; e < int(j.set->count(1)); ++e) {
            int a = root(j.set->vertex(Simplex{1, 0, e}, 0).base);
            int b = root(j.set->vertex(Simplex{1, 0, e}, 1).base);
            parent[std::max(a, b)] = std::min(a, b);
        }
    out.class_of.assign(n, -1);
    std::vector<int> label(n, -1);
    for (int v = 0; v < n; ++v) {
        int r = root(v);
        if (label[r] < 0)
            label[r] = out.count++;
        out.class_of[v] = label[r];
    }
    return out;
}

Decision edge_invertible_via_interval(const SSetPtr& x, const Simplex& edge, std::uint64_t budget) {
    if (edge.dim != 1)
        throw Error(ErrorKind::InvalidArgument, "expected an edge");
    const bool bounded = !x->is_coskeletal();
    const int skeleton = bounded ? std::min(kMaxDim, x->dim_cap() + 2) : 0;
    SSetPtr interval = bounded ? shapes::interval_skeleton(skeleton) : shapes::interval();
    MapSearch search(interval, x, budget);
    search.pin(1, *interval->find(1, "01"), edge);
    auto found = search.first();
    if (!found)
        return Decision::no("no map from the interval restricts to the edge", {{"edge", x->name(edge)}});
    if (bounded)
        return Decision::unknown("dimension-bound", {{"skeleton", skeleton}, {"coskeletal", false}});
    return Decision::yes({{"edge", x->name(edge)}, {"map", map_to_json(*found)}});
}

} // namespace ljoyal
