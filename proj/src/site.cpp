#include "ljoyal/site.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "ljoyal/error.hpp"

namespace ljoyal {

namespace {

std::vector<std::vector<std::vector<int>>> no_families(int n) { return std::vector<std::vector<std::vector<int>>>(n); }

} // namespace

void FiniteSite::index_arrows() {
    into_.assign(c_.object_count(), {});
    slot_.assign(c_.arrow_count(), -1);
    for (int a = 0; a < c_.arrow_count(); ++a) {
        auto& list = into_[c_.arrow(a).tgt];
        slot_[a] = int(list.size());
        list.push_back(a);
        if (list.size() > 64)
            throw Error(ErrorKind::InvalidArgument, "more than 64 arrows into object '" + c_.object(c_.arrow(a).tgt) + "'");
    }
    covering_.assign(c_.object_count(), {});
}

Sieve FiniteSite::maximal(int u) const {
    const auto n = into_[u].size();
    return n == 64 ? ~Sieve(0) : (Sieve(1) << n) - 1;
}

Sieve FiniteSite::closure(int u, const std::vector<int>& arrows) const {
    Sieve s = 0;
    for (int a : arrows) {
        if (c_.arrow(a).tgt != u)
            throw Error(ErrorKind::InvalidArgument, "arrow '" + c_.arrow(a).id + "' does not end at '" + c_.object(u) + "'");
        for (int h : into_[c_.arrow(a).src])
            s |= Sieve(1) << slot_[c_.then(h, a)];
    }
    return s;
}

Sieve FiniteSite::pullback(Sieve s, int a) const {
    Sieve out = 0;
    for (int h : into_[c_.arrow(a).src])
        if (in(s, c_.then(h, a)))
            out |= Sieve(1) << slot_[h];
    return out;
}

std::vector<Sieve> FiniteSite::all_sieves(int u) const {
    std::vector<Sieve> principal;
    for (int a : into_[u])
        principal.push_back(closure(u, {a}));
    std::set<Sieve> seen{0};
    std::vector<Sieve> stack{0};
    while (!stack.empty()) {
        Sieve s = stack.back();
        stack.pop_back();
        for (Sieve p : principal)
            if (seen.insert(s | p).second)
                stack.push_back(s | p);
    }
    return {seen.begin(), seen.end()};
}

bool FiniteSite::covers(int u, Sieve s) const { return std::binary_search(covering_[u].begin(), covering_[u].end(), s); }

bool FiniteSite::is_trivial() const {
    for (int u = 0; u < objects(); ++u)
        if (covering_[u].size() != 1)
            return false;
    return true;
}

std::vector<int> FiniteSite::members(int u, Sieve s) const {
    std::vector<int> out;
    for (int a : into_[u])
        if (in(s, a))
            out.push_back(a);
    return out;
}

void FiniteSite::close_upward() {
    for (int u = 0; u < objects(); ++u) {
        std::set<Sieve> out(covering_[u].begin(), covering_[u].end());
        out.insert(maximal(u));
        for (Sieve s : all_sieves(u))
            for (Sieve r : covering_[u])
                if ((s & r) == r)
                    out.insert(s);
        covering_[u].assign(out.begin(), out.end());
    }
}

void FiniteSite::check_axioms() const {
    auto names = [&](int u, Sieve s) {
        std::vector<std::string> ids;
        for (int a : members(u, s))
            ids.push_back(c_.arrow(a).id);
        return ids;
    };
    for (int u = 0; u < objects(); ++u)
        for (Sieve r : covering_[u])
            for (int a : into_[u])
                if (!covers(c_.arrow(a).src, pullback(r, a)))
                    throw Error(ErrorKind::TopologyAxiomViolation, "covering sieves are not stable under pullback",
                                {{"axiom", "stability"}, {"object", c_.object(u)}, {"sieve", names(u, r)},
                                 {"arrow", c_.arrow(a).id}});
    for (int u = 0; u < objects(); ++u)
        for (Sieve s : all_sieves(u)) {
            if (covers(u, s))
                continue;
            for (Sieve r : covering_[u]) {
                bool local = true;
                for (int a : members(u, r))
                    local = local && covers(c_.arrow(a).src, pullback(s, a));
                if (local)
                    throw Error(ErrorKind::TopologyAxiomViolation, "a locally covering sieve does not cover",
                                {{"axiom", "transitivity"}, {"object", c_.object(u)}, {"sieve", names(u, s)},
                                 {"along", names(u, r)}});
            }
        }
}

FiniteSite::FiniteSite(FiniteCategory c, const std::vector<std::vector<std::vector<int>>>& families) : c_(std::move(c)) {
    index_arrows();
    if (int(families.size()) != objects())
        throw Error(ErrorKind::InvalidArgument, "one list of covering families per object is required");
    for (int u = 0; u < objects(); ++u)
        for (const auto& fam : families[u])
            covering_[u].push_back(closure(u, fam));
    close_upward();
    check_axioms();
}

FiniteSite FiniteSite::trivial(FiniteCategory c) {
    const int n = c.object_count();
    return FiniteSite(std::move(c), no_families(n));
}

FiniteSite FiniteSite::generated(FiniteCategory c, const std::vector<std::vector<std::vector<int>>>& families) {
    FiniteSite s;
    s.c_ = std::move(c);
    s.index_arrows();
    if (int(families.size()) != s.objects())
        throw Error(ErrorKind::InvalidArgument, "one list of covering families per object is required");
    for (int u = 0; u < s.objects(); ++u)
        for (const auto& fam : families[u])
            s.covering_[u].push_back(s.closure(u, fam));
    for (bool changed = true; changed;) {
        changed = false;
        s.close_upward();
        std::vector<std::set<Sieve>> next(s.objects());
        for (int u = 0; u < s.objects(); ++u)
            next[u].insert(s.covering_[u].begin(), s.covering_[u].end());
        for (int u = 0; u < s.objects(); ++u)
            for (Sieve r : s.covering_[u])
                for (int a : s.into_[u])
                    changed |= next[s.c_.arrow(a).src].insert(s.pullback(r, a)).second;
        for (int u = 0; u < s.objects(); ++u)
            for (Sieve t : s.all_sieves(u))
                for (Sieve r : s.covering_[u]) {
                    bool local = true;
                    for (int a : s.members(u, r))
                        local = local && s.covers(s.c_.arrow(a).src, s.pullback(t, a));
                    if (local) {
                        changed |= next[u].insert(t).second;
                        break;
                    }
                }
        for (int u = 0; u < s.objects(); ++u)
            s.covering_[u].assign(next[u].begin(), next[u].end());
    }
    s.close_upward();
    s.check_axioms();
    return s;
}

nlohmann::ordered_json FiniteSite::to_json() const {
    nlohmann::ordered_json arrows = nlohmann::ordered_json::array();
    for (int a = objects(); a < c_.arrow_count(); ++a)
        arrows.push_back({{"id", c_.arrow(a).id}, {"src", c_.object(c_.arrow(a).src)}, {"tgt", c_.object(c_.arrow(a).tgt)}});
    nlohmann::ordered_json covers = nlohmann::ordered_json::object();
    for (int u = 0; u < objects(); ++u) {
        auto& list = covers[c_.object(u)] = nlohmann::ordered_json::array();
        for (Sieve r : covering_[u]) {
            nlohmann::ordered_json ids = nlohmann::ordered_json::array();
            for (int a : members(u, r))
                ids.push_back(c_.arrow(a).id);
            list.push_back(std::move(ids));
        }
    }
    return {{"objects", c_.objects()}, {"arrows", arrows}, {"compose", c_.composition_table()}, {"covers", covers}};
}

FiniteSite site_from_json(const nlohmann::json& j) {
    try {
        std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
        auto object = [&](const std::string& id) {
            auto it = std::find(objects.begin(), objects.end(), id);
            if (it == objects.end())
                throw Error(ErrorKind::InvalidArgument, "unknown object '" + id + "'");
            return int(it - objects.begin());
        };
        std::vector<FiniteCategory::Arrow> arrows;
        for (const auto& a : j.value("arrows", nlohmann::json::array()))
            arrows.push_back({a.at("id").get<std::string>(), object(a.at("src").get<std::string>()),
                              object(a.at("tgt").get<std::string>())});
        auto table = j.value("compose", nlohmann::json::array()).get<std::vector<std::vector<std::string>>>();
        FiniteCategory c(objects, std::move(arrows), table);
        auto families = no_families(c.object_count());
        if (j.contains("covers"))
            for (const auto& [u, list] : j.at("covers").items())
                for (const auto& fam : list) {
                    std::vector<int> ids;
                    for (const auto& a : fam) {
                        auto idx = c.find_arrow(a.get<std::string>());
                        if (!idx)
                            throw Error(ErrorKind::InvalidArgument, "unknown arrow '" + a.get<std::string>() + "'");
                        ids.push_back(*idx);
                    }
                    families[object(u)].push_back(std::move(ids));
                }
        if (j.value("generate", false))
            return FiniteSite::generated(std::move(c), families);
        return FiniteSite(std::move(c), families);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("site: ") + e.what());
    }
}

// presheaves of sets

void validate(const FiniteSite& site, const SetPresheaf& f) {
    const auto& c = site.category();
    if (int(f.size.size()) != c.object_count() || int(f.restrict.size()) != c.arrow_count())
        throw Error(ErrorKind::InvalidArgument, "presheaf does not match the site");
    for (int a = 0; a < c.arrow_count(); ++a) {
        const auto& r = f.restrict[a];
        if (int(r.size()) != f.size[c.arrow(a).tgt])
            throw Error(ErrorKind::FunctorialityViolation, "restriction along '" + c.arrow(a).id + "' has the wrong domain");
        for (int i = 0; i < int(r.size()); ++i)
            if (r[i] < 0 || r[i] >= f.size[c.arrow(a).src] || (c.is_identity(a) && r[i] != i))
                throw Error(ErrorKind::FunctorialityViolation, "bad restriction along '" + c.arrow(a).id + "'");
    }
    for (int a = 0; a < c.arrow_count(); ++a)
        for (int b = 0; b < c.arrow_count(); ++b) {
            const int ab = c.then(b, a); // a after b
            if (ab < 0)
                continue;
            for (int i = 0; i < f.size[c.arrow(a).tgt]; ++i)
                if (f.restrict[b][f.restrict[a][i]] != f.restrict[ab][i])
                    throw Error(ErrorKind::FunctorialityViolation,
                                "restrictions along '" + c.arrow(a).id + "' and '" + c.arrow(b).id + "' do not compose");
        }
}

void validate(const FiniteSite& site, const SetPresheaf& f, const SetPresheaf& g, const SetMap& m) {
    const auto& c = site.category();
    if (int(m.at.size()) != c.object_count())
        throw Error(ErrorKind::InvalidArgument, "map does not match the site");
    for (int u = 0; u < c.object_count(); ++u) {
        if (int(m.at[u].size()) != f.size[u])
            throw Error(ErrorKind::InvalidArgument, "map has the wrong domain at '" + c.object(u) + "'");
        for (int x : m.at[u])
            if (x < 0 || x >= g.size[u])
                throw Error(ErrorKind::InvalidArgument, "map leaves the target at '" + c.object(u) + "'");
    }
    for (int a = 0; a < c.arrow_count(); ++a) {
        const int u = c.arrow(a).tgt, v = c.arrow(a).src;
        for (int i = 0; i < f.size[u]; ++i)
            if (g.restrict[a][m.at[u][i]] != m.at[v][f.restrict[a][i]])
                throw Error(ErrorKind::FunctorialityViolation, "map is not natural along '" + c.arrow(a).id + "'");
    }
}

Decision local_epi(const FiniteSite& site, const SetPresheaf& g, const SetMap& m) {
    const auto& c = site.category();
    std::vector<std::vector<bool>> hit(c.object_count());
    for (int u = 0; u < c.object_count(); ++u) {
        hit[u].assign(g.size[u], false);
        for (int x : m.at[u])
            hit[u][x] = true;
    }
    for (int u = 0; u < c.object_count(); ++u)
        for (int y = 0; y < g.size[u]; ++y) {
            Sieve s = 0;
            for (int a : site.into(u))
                if (hit[c.arrow(a).src][g.restrict[a][y]])
                    s |= Sieve(1) << site.slot(a);
            if (!site.covers(u, s))
                return Decision::no("a section is not hit on any covering sieve", {{"object", c.object(u)}, {"section", y}});
        }
    return Decision::yes();
}

Decision local_mono(const FiniteSite& site, const SetPresheaf& f, const SetMap& m) {
    const auto& c = site.category();
    for (int u = 0; u < c.object_count(); ++u)
        for (int x = 0; x < f.size[u]; ++x)
            for (int x2 = x + 1; x2 < f.size[u]; ++x2) {
                if (m.at[u][x] != m.at[u][x2])
                    continue;
                Sieve s = 0;
                for (int a : site.into(u))
                    if (f.restrict[a][x] == f.restrict[a][x2])
                        s |= Sieve(1) << site.slot(a);
                if (!site.covers(u, s))
                    return Decision::no("identified sections never agree on a cover",
                                        {{"object", c.object(u)}, {"sections", {x, x2}}});
            }
    return Decision::yes();
}

namespace {

// A family indexed by into(U); -1 off the sieve.
using Family = std::vector<int>;

void matching_families(const FiniteSite& site, const SetPresheaf& f, int u, Sieve r,
                       const std::function<void(const Family&)>& visit) {
    const auto& c = site.category();
    std::vector<int> arrows = site.members(u, r);
    Family fam(site.into(u).size(), -1);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == arrows.size()) {
            visit(fam);
            return;
        }
        const int a = arrows[i];
        for (int x = 0; x < f.size[c.arrow(a).src]; ++x) {
            bool ok = true;
            // against assigned arrows b = a h and a = b h
            for (int h : site.into(c.arrow(a).src)) {
                const int b = c.then(h, a);
                if (fam[site.slot(b)] >= 0 && fam[site.slot(b)] != f.restrict[h][x]) {
                    ok = false;
                    break;
                }
            }
            for (std::size_t j = 0; ok && j < i; ++j) {
                const int b = arrows[j];
                for (int h : site.into(c.arrow(b).src))
                    if (c.then(h, b) == a && f.restrict[h][fam[site.slot(b)]] != x) {
                        ok = false;
                        break;
                    }
            }
            if (!ok)
                continue;
            fam[site.slot(a)] = x;
            go(i + 1);
            fam[site.slot(a)] = -1;
        }
    };
    go(0);
}

struct PlusTable {
    Sheafification result;
    std::vector<std::map<std::pair<Sieve, Family>, int>> lookup; // per object
    std::vector<std::vector<std::pair<Sieve, Family>>> rep;      // per object and class
};

PlusTable plus_table(const FiniteSite& site, const SetPresheaf& f) {
    const auto& c = site.category();
    const int objects = c.object_count();
    PlusTable t;
    t.lookup.resize(objects);
    t.rep.resize(objects);
    t.result.sheaf.size.assign(objects, 0);
    for (int u = 0; u < objects; ++u) {
        std::vector<std::pair<Sieve, Family>> elems;
        for (Sieve r : site.covering(u))
            matching_families(site, f, u, r, [&](const Family& fam) { elems.push_back({r, fam}); });
        std::vector<int> parent(elems.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int v) {
            while (parent[v] != v)
                v = parent[v] = parent[parent[v]];
            return v;
        };
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                Sieve agree = 0;
                const Sieve both = elems[i].first & elems[j].first;
                for (int a : site.members(u, both))
                    if (elems[i].second[site.slot(a)] == elems[j].second[site.slot(a)])
                        agree |= Sieve(1) << site.slot(a);
                if (site.covers(u, agree)) {
                    int x = root(int(i)), y = root(int(j));
                    parent[std::max(x, y)] = std::min(x, y);
                }
            }
        std::vector<int> label(elems.size(), -1);
        for (std::size_t i = 0; i < elems.size(); ++i) {
            int r = root(int(i));
            if (label[r] < 0) {
                label[r] = int(t.rep[u].size());
                t.rep[u].push_back(elems[i]);
            }
            t.lookup[u][elems[i]] = label[r];
        }
        t.result.sheaf.size[u] = int(t.rep[u].size());
    }
    t.result.sheaf.restrict.resize(c.arrow_count());
    for (int a = 0; a < c.arrow_count(); ++a) {
        const int u = c.arrow(a).tgt, v = c.arrow(a).src;
        for (const auto& [r, fam] : t.rep[u]) {
            Sieve pr = site.pullback(r, a);
            Family g(site.into(v).size(), -1);
            for (int h : site.members(v, pr))
                g[site.slot(h)] = fam[site.slot(c.then(h, a))];
            t.result.sheaf.restrict[a].push_back(t.lookup[v].at({pr, g}));
        }
    }
    t.result.unit.at.resize(objects);
    for (int u = 0; u < objects; ++u)
        for (int x = 0; x < f.size[u]; ++x) {
            Family fam(site.into(u).size(), -1);
            for (int a : site.into(u))
                fam[site.slot(a)] = f.restrict[a][x];
            t.result.unit.at[u].push_back(t.lookup[u].at({site.maximal(u), fam}));
        }
    return t;
}

SetMap plus_map(const FiniteSite& site, const PlusTable& tf, const PlusTable& tg, const SetMap& m) {
    const auto& c = site.category();
    SetMap out;
    out.at.resize(c.object_count());
    for (int u = 0; u < c.object_count(); ++u)
        for (const auto& [r, fam] : tf.rep[u]) {
            Family g(fam.size(), -1);
            for (int a : site.members(u, r))
                g[site.slot(a)] = m.at[c.arrow(a).src][fam[site.slot(a)]];
            out.at[u].push_back(tg.lookup[u].at({r, g}));
        }
    return out;
}

SetMap compose(const SetMap& g, const SetMap& f) {
    SetMap out;
    for (std::size_t u = 0; u < f.at.size(); ++u) {
        out.at.emplace_back();
        for (int x : f.at[u])
            out.at[u].push_back(g.at[u][x]);
    }
    return out;
}

} // namespace

Decision is_sheaf(const FiniteSite& site, const SetPresheaf& f) {
    const auto& c = site.category();
    for (int u = 0; u < c.object_count(); ++u)
        for (Sieve r : site.covering(u)) {
            std::map<Family, int> glued;
            for (int x = 0; x < f.size[u]; ++x) {
                Family fam(site.into(u).size(), -1);
                for (int a : site.members(u, r))
                    fam[site.slot(a)] = f.restrict[a][x];
                if (!glued.emplace(fam, x).second)
                    return Decision::no("two sections agree on a cover",
                                        {{"object", c.object(u)}, {"sections", {glued[fam], x}}});
            }
            std::optional<Family> missing;
            matching_families(site, f, u, r, [&](const Family& fam) {
                if (!missing && !glued.count(fam))
                    missing = fam;
            });
            if (missing)
                return Decision::no("a matching family has no amalgamation",
                                    {{"object", c.object(u)}, {"family", *missing}});
        }
    return Decision::yes();
}

Sheafification plus(const FiniteSite& site, const SetPresheaf& f) { return plus_table(site, f).result; }

Sheafification sheafify_set(const FiniteSite& site, const SetPresheaf& f) {
    Sheafification once = plus(site, f);
    Sheafification twice = plus(site, once.sheaf);
    return {std::move(twice.sheaf), compose(twice.unit, once.unit)};
}

SetMap sheafify_map(const FiniteSite& site, const SetPresheaf& f, const SetPresheaf& g, const SetMap& m) {
    PlusTable f1 = plus_table(site, f), g1 = plus_table(site, g);
    SetMap m1 = plus_map(site, f1, g1, m);
    PlusTable f2 = plus_table(site, f1.result.sheaf), g2 = plus_table(site, g1.result.sheaf);
    return plus_map(site, f2, g2, m1);
}

bool is_bijective(const SetPresheaf& f, const SetPresheaf& g, const SetMap& m) {
    for (std::size_t u = 0; u < f.size.size(); ++u) {
        if (f.size[u] != g.size[u])
            return false;
        std::set<int> image(m.at[u].begin(), m.at[u].end());
        if (int(image.size()) != g.size[u])
            return false;
    }
    return true;
}

} // namespace ljoyal
