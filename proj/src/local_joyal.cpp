#include <map>
#include <numeric>
#include <set>

#include "ljoyal/error.hpp"
#include "ljoyal/parallel.hpp"
#include "ljoyal/presheaf.hpp"
#include "ljoyal/shapes.hpp"

namespace ljoyal {

namespace {

[[noreturn]] void not_functorial(const std::string& what) { throw Error(ErrorKind::FunctorialityViolation, what); }

void check_functor(const FiniteCategory& a, const FiniteCategory& b, const std::vector<int>& f, const std::string& what) {
    if (int(f.size()) != a.arrow_count())
        not_functorial(what + " is not given on every arrow");
    for (int x : f)
        if (x < 0 || x >= b.arrow_count())
            not_functorial(what + " leaves its target");
    for (int o = 0; o < a.object_count(); ++o)
        if (!b.is_identity(f[o]))
            not_functorial(what + " does not preserve identities");
    for (int p = 0; p < a.arrow_count(); ++p) {
        if (b.arrow(f[p]).src != f[a.arrow(p).src] || b.arrow(f[p]).tgt != f[a.arrow(p).tgt])
            not_functorial(what + " does not preserve endpoints");
        for (int q = 0; q < a.arrow_count(); ++q)
            if (a.then(p, q) >= 0 && b.then(f[p], f[q]) != f[a.then(p, q)])
                not_functorial(what + " does not preserve composition");
    }
}

std::vector<int> after(const std::vector<int>& g, const std::vector<int>& f) {
    std::vector<int> out;
    for (int x : f)
        out.push_back(g[x]);
    return out;
}

} // namespace

void validate(const FiniteSite& site, const GroupoidPresheaf& g) {
    const auto& c = site.category();
    if (int(g.values.size()) != c.object_count() || int(g.restrict.size()) != c.arrow_count())
        throw Error(ErrorKind::InvalidArgument, "groupoid presheaf does not match the site");
    for (int a = 0; a < c.arrow_count(); ++a) {
        check_functor(g.values[c.arrow(a).tgt], g.values[c.arrow(a).src], g.restrict[a],
                      "restriction along '" + c.arrow(a).id + "'");
        if (c.is_identity(a)) {
            std::vector<int> id(g.values[a].arrow_count());
            std::iota(id.begin(), id.end(), 0);
            if (g.restrict[a] != id)
                not_functorial("restriction along an identity is not the identity");
        }
    }
    for (int a = 0; a < c.arrow_count(); ++a)
        for (int b = 0; b < c.arrow_count(); ++b)
            if (c.then(b, a) >= 0 && after(g.restrict[b], g.restrict[a]) != g.restrict[c.then(b, a)])
                not_functorial("restrictions do not compose");
}

void validate(const FiniteSite& site, const GroupoidPresheaf& g, const GroupoidPresheaf& h,
              const GroupoidPresheafMap& f) {
    validate(site, g);
    validate(site, h);
    const auto& c = site.category();
    for (int u = 0; u < c.object_count(); ++u)
        check_functor(g.values[u], h.values[u], f.at[u], "component at '" + c.object(u) + "'");
    for (int a = 0; a < c.arrow_count(); ++a) {
        const int u = c.arrow(a).tgt, v = c.arrow(a).src;
        if (after(h.restrict[a], f.at[u]) != after(f.at[v], g.restrict[a]))
            not_functorial("map is not natural along '" + c.arrow(a).id + "'");
    }
}

SetPresheaf components(const FiniteSite& site, const GroupoidPresheaf& g,
                       std::vector<std::vector<int>>* component_of) {
    std::vector<std::vector<int>> comp(g.values.size());
    SetPresheaf out;
    for (const auto& c : g.values) {
        std::vector<int> parent(c.object_count());
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        for (int a = 0; a < c.arrow_count(); ++a) {
            int x = root(c.arrow(a).src), y = root(c.arrow(a).tgt);
            parent[std::max(x, y)] = std::min(x, y);
        }
        auto& labels = comp[out.size.size()];
        labels.assign(c.object_count(), -1);
        std::vector<int> label(c.object_count(), -1);
        int count = 0;
        for (int o = 0; o < c.object_count(); ++o) {
            int r = root(o);
            if (label[r] < 0)
                label[r] = count++;
            labels[o] = label[r];
        }
        out.size.push_back(count);
    }
    const auto& sc = site.category();
    for (int a = 0; a < sc.arrow_count(); ++a) {
        const int u = sc.arrow(a).tgt, v = sc.arrow(a).src;
        std::vector<int> r(out.size[u], -1);
        for (int o = 0; o < g.values[u].object_count(); ++o)
            r[comp[u][o]] = comp[v][g.restrict[a][o]];
        out.restrict.push_back(std::move(r));
    }
    if (component_of)
        *component_of = std::move(comp);
    return out;
}

Decision local_groupoid_equiv(const FiniteSite& site, const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                              const GroupoidPresheafMap& f) {
    const auto& c = site.category();
    std::vector<std::vector<int>> cg, ch;
    SetPresheaf pg = components(site, g, &cg), ph = components(site, h, &ch);
    SetMap m;
    for (int u = 0; u < c.object_count(); ++u) {
        m.at.emplace_back(pg.size[u], -1);
        for (int o = 0; o < g.values[u].object_count(); ++o)
            m.at[u][cg[u][o]] = ch[u][f.at[u][o]];
    }
    SetMap lm = sheafify_map(site, pg, ph, m);
    if (!is_bijective(sheafify_set(site, pg).sheaf, sheafify_set(site, ph).sheaf, lm)) {
        Decision epi = local_epi(site, ph, m);
        nlohmann::json why = epi.is_no() ? epi.certificate : local_mono(site, pg, m).certificate;
        why["part"] = "components";
        why["components"] = {pg.size, ph.size};
        return Decision::no("component sheaves are not isomorphic", why);
    }
    // Hom sheaves over each slice C/W; a pair over (V, b) is the restriction
    // of a pair over V, so it suffices to range over pairs at every W.
    for (int w = 0; w < c.object_count(); ++w) {
        const auto& gw = g.values[w];
        const auto& hw = h.values[w];
        for (int x = 0; x < gw.object_count(); ++x)
            for (int y = 0; y < gw.object_count(); ++y) {
                auto lifts = [&](int b, int target) {
                    const int v = c.arrow(b).src;
                    for (int p : g.values[v].hom(g.restrict[b][x], g.restrict[b][y]))
                        if (f.at[v][p] == target)
                            return true;
                    return false;
                };
                for (int q : hw.hom(f.at[w][x], f.at[w][y])) {
                    Sieve s = 0;
                    for (int b : site.into(w))
                        if (lifts(b, h.restrict[b][q]))
                            s |= Sieve(1) << site.slot(b);
                    if (!site.covers(w, s))
                        return Decision::no("hom sheaf map is not surjective",
                                            {{"part", "hom"}, {"object", c.object(w)}, {"pair", {x, y}},
                                             {"arrow", hw.arrow(q).id}});
                }
                const auto homs = gw.hom(x, y);
                for (std::size_t i = 0; i < homs.size(); ++i)
                    for (std::size_t j = i + 1; j < homs.size(); ++j) {
                        if (f.at[w][homs[i]] != f.at[w][homs[j]])
                            continue;
                        Sieve s = 0;
                        for (int b : site.into(w))
                            if (g.restrict[b][homs[i]] == g.restrict[b][homs[j]])
                                s |= Sieve(1) << site.slot(b);
                        if (!site.covers(w, s))
                            return Decision::no("hom sheaf map is not injective",
                                                {{"part", "hom"}, {"object", c.object(w)}, {"pair", {x, y}},
                                                 {"arrows", {gw.arrow(homs[i]).id, gw.arrow(homs[j]).id}}});
                    }
            }
    }
    return Decision::yes();
}

namespace {

// pi J hom(P, X) as an explicit finite groupoid.
struct Value {
    HomComplex hom;
    JCore core;
    FpCategory groupoid;
    FiniteCategory cat;
    std::vector<Path> words;
    std::map<std::pair<int, Word>, int> index;
};

Value make_value(const SSetPtr& p, const SSetPtr& x, bool quasicategory, std::uint64_t budget) {
    Value v{hom_complex(p, x, 2, budget), {}, {}, {}, {}, {}};
    v.core = j_core(v.hom.set, quasicategory);
    v.groupoid = groupoidify(path_category(v.core.set, false));
    v.cat = to_finite_category(v.groupoid, 12, &v.words);
    for (int k = 0; k < int(v.words.size()); ++k)
        v.index[{v.words[k].src, v.words[k].word}] = k;
    return v;
}

std::vector<int> arrow_map(const Value& a, const Value& b, const SimplicialMap& f) {
    const SimplicialMap induced = post_compose(a.hom, b.hom, f);
    std::vector<Word> gen(a.groupoid.generators().size());
    for (int e = 0; e < int(a.core.set->count(1)); ++e) {
        Simplex image = induced.apply(a.core.inclusion.image(1, e));
        if (image.degenerate())
            continue;
        auto idx = b.core.set->find(1, b.hom.set->cell(1, image.base).id);
        if (!idx)
            throw Error(ErrorKind::InvalidArgument, "an invertible edge maps outside the target core");
        gen[e] = {*idx};
        gen[a.groupoid.inverse_of[e]] = {b.groupoid.inverse_of[*idx]};
    }
    std::vector<int> out;
    for (const Path& p : a.words) {
        // the core keeps every vertex of hom in order
        const int src = induced.apply(Simplex{0, 0, p.src}).base;
        Word w;
        for (int letter : p.word)
            w.insert(w.end(), gen[letter].begin(), gen[letter].end());
        out.push_back(b.index.at({src, b.groupoid.normalize(w)}));
    }
    return out;
}

} // namespace

JoyalReport local_joyal_equiv(const FiniteSite& site, const PresheafMap& f, std::optional<int> max_n,
                              std::uint64_t budget) {
    validate(site, f);
    const auto& c = site.category();
    const int k = c.object_count();
    std::vector<bool> qx(k), qy(k);
    int top = 0;
    for (int u = 0; u < k; ++u) {
        for (auto [value, flag] : {std::pair{f.source.values[u], &qx}, std::pair{f.target.values[u], &qy}}) {
            Decision d = is_quasicategory(value, 3, budget);
            if (d.is_no())
                throw Error(ErrorKind::NotSectionwiseQuasicategory,
                            "value at '" + c.object(u) + "' is not a quasi-category", d.certificate);
            (*flag)[u] = d.is_yes();
            top = std::max(top, value->mapped_dim());
        }
    }
    JoyalReport report;
    report.max_n = max_n ? *max_n : top + 2;
    std::vector<shapes::ShapeSpec> specs;
    for (int n = 0; n <= report.max_n; ++n) {
        specs.push_back({shapes::Kind::simplex, n, 0});
        specs.push_back({shapes::Kind::boundary, n, 0});
    }
    auto results = parallel_map(specs.size(), [&](std::size_t s) {
        const SSetPtr p = shapes::standard_shape(specs[s]);
        std::vector<Value> vx, vy;
        try {
            for (int u = 0; u < k; ++u) {
                vx.push_back(make_value(p, f.source.values[u], qx[u], budget));
                vy.push_back(make_value(p, f.target.values[u], qy[u], budget));
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndecidedWordProblem)
                throw;
            return Decision::unknown("infinite-hom", {{"message", e.what()}});
        }
        GroupoidPresheaf gx, gy;
        GroupoidPresheafMap gf;
        for (int u = 0; u < k; ++u) {
            gx.values.push_back(vx[u].cat);
            gy.values.push_back(vy[u].cat);
            gf.at.push_back(arrow_map(vx[u], vy[u], f.at[u]));
        }
        for (int a = 0; a < c.arrow_count(); ++a) {
            const int u = c.arrow(a).tgt, v = c.arrow(a).src;
            gx.restrict.push_back(arrow_map(vx[u], vx[v], f.source.restrict[a]));
            gy.restrict.push_back(arrow_map(vy[u], vy[v], f.target.restrict[a]));
        }
        validate(site, gx, gy, gf);
        return local_groupoid_equiv(site, gx, gy, gf);
    });
    DecisionAccumulator acc;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        report.shapes.push_back({specs[s].to_string(), specs[s].n, results[s]});
        Decision d = results[s];
        d.certificate = {{"shape", specs[s].to_string()}, {"n", specs[s].n}, {"detail", d.certificate}};
        acc.add(d);
    }
    report.verdict = acc.result({{"max_n", report.max_n},
                                 {"shapes", specs.size()},
                                 {"note", "values are quasi-categories, so no fibrant replacement was applied"}});
    return report;
}

} // namespace ljoyal
