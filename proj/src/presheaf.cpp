#include "ljoyal/presheaf.hpp"

#include <map>

#include "ljoyal/error.hpp"
#include "ljoyal/lifting.hpp"
#include "ljoyal/shapes.hpp"

namespace ljoyal {

namespace {

[[noreturn]] void not_functorial(const std::string& what) { throw Error(ErrorKind::FunctorialityViolation, what); }

} // namespace

void validate(const FiniteSite& site, const SimplicialPresheaf& x) {
    const auto& c = site.category();
    if (int(x.values.size()) != c.object_count() || int(x.restrict.size()) != c.arrow_count())
        throw Error(ErrorKind::InvalidArgument, "presheaf does not match the site");
    for (int a = 0; a < c.arrow_count(); ++a) {
        const auto& r = x.restrict[a];
        if (r.source() != x.values[c.arrow(a).tgt] || r.target() != x.values[c.arrow(a).src])
            not_functorial("restriction along '" + c.arrow(a).id + "' has the wrong endpoints");
        if (c.is_identity(a) && !(r == SimplicialMap::identity(r.source())))
            not_functorial("restriction along '" + c.arrow(a).id + "' is not the identity");
    }
    for (int a = 0; a < c.arrow_count(); ++a)
        for (int b = 0; b < c.arrow_count(); ++b) {
            const int ab = c.then(b, a);
            if (ab >= 0 && !(compose(x.restrict[b], x.restrict[a]) == x.restrict[ab]))
                not_functorial("restrictions along '" + c.arrow(a).id + "' and '" + c.arrow(b).id + "' do not compose");
        }
}

void validate(const FiniteSite& site, const PresheafMap& f) {
    validate(site, f.source);
    validate(site, f.target);
    const auto& c = site.category();
    if (int(f.at.size()) != c.object_count())
        throw Error(ErrorKind::InvalidArgument, "map does not match the site");
    for (int u = 0; u < c.object_count(); ++u)
        if (f.at[u].source() != f.source.values[u] || f.at[u].target() != f.target.values[u])
            not_functorial("component at '" + c.object(u) + "' has the wrong endpoints");
    for (int a = 0; a < c.arrow_count(); ++a) {
        const int u = c.arrow(a).tgt, v = c.arrow(a).src;
        if (!(compose(f.target.restrict[a], f.at[u]) == compose(f.at[v], f.source.restrict[a])))
            not_functorial("map is not natural along '" + c.arrow(a).id + "'");
    }
}

SimplicialPresheaf constant_presheaf(const FiniteSite& site, const SSetPtr& x) {
    const auto& c = site.category();
    return {std::vector<SSetPtr>(c.object_count(), x),
            std::vector<SimplicialMap>(c.arrow_count(), SimplicialMap::identity(x))};
}

PresheafMap identity_map(const SimplicialPresheaf& x) {
    PresheafMap f{x, x, {}};
    for (const auto& v : x.values)
        f.at.push_back(SimplicialMap::identity(v));
    return f;
}

PresheafMap terminal_map(const FiniteSite& site, const SimplicialPresheaf& x) {
    PresheafMap f{x, constant_presheaf(site, shapes::simplex(0)), {}};
    for (const auto& v : x.values)
        f.at.push_back(terminal_map(v));
    return f;
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
    PresheafMap out{f.source, g.target, {}};
    for (std::size_t u = 0; u < f.at.size(); ++u)
        out.at.push_back(compose(g.at[u], f.at[u]));
    return out;
}

Decision sectionwise_rlp(const PresheafMap& f, const SimplicialMap& i, std::uint64_t budget) {
    for (std::size_t u = 0; u < f.at.size(); ++u)
        if (auto sq = unliftable_square(i, f.at[u], budget))
            return Decision::no("square without lift", {{"object", u},
                                                         {"top", map_to_json(sq->top)},
                                                         {"bottom", map_to_json(sq->bottom)}});
    return Decision::yes();
}

namespace {

Square restrict_square(const PresheafMap& f, int a, const Square& sq) {
    return {compose(f.source.restrict[a], sq.top), compose(f.target.restrict[a], sq.bottom)};
}

nlohmann::json square_witness(const FiniteSite& site, int u, const Square& sq) {
    return {{"object", site.category().object(u)}, {"top", map_to_json(sq.top)}, {"bottom", map_to_json(sq.bottom)}};
}

} // namespace

Decision local_rlp_direct(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i, std::uint64_t budget) {
    const auto& c = site.category();
    for (int u = 0; u < c.object_count(); ++u)
        for (const Square& sq : squares(i, f.at[u], budget)) {
            std::vector<int> lifts(site.into(u).size(), -1);
            auto liftable = [&](int a) {
                int& memo = lifts[site.slot(a)];
                if (memo < 0)
                    memo = lift(i, f.at[c.arrow(a).src], restrict_square(f, a, sq), budget).has_value();
                return memo == 1;
            };
            bool found = false;
            for (Sieve r : site.covering(u)) {
                bool all = true;
                for (int a : site.members(u, r))
                    if (!liftable(a)) {
                        all = false;
                        break;
                    }
                if (all) {
                    found = true;
                    break;
                }
            }
            if (!found)
                return Decision::no("no covering sieve on which the square lifts", square_witness(site, u, sq));
        }
    return Decision::yes();
}

Decision local_rlp_via_epi(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i, std::uint64_t budget) {
    const auto& c = site.category();
    const int k = c.object_count();
    using SquareKey = std::pair<std::vector<Simplex>, std::vector<Simplex>>;
    std::vector<std::vector<SimplicialMap>> maps(k);
    std::vector<std::vector<Square>> sqs(k);
    std::vector<std::map<std::vector<Simplex>, int>> map_index(k);
    std::vector<std::map<SquareKey, int>> square_index(k);
    for (int u = 0; u < k; ++u) {
        maps[u] = MapSearch(i.target(), f.source.values[u], budget).all();
        for (int n = 0; n < int(maps[u].size()); ++n)
            map_index[u][maps[u][n].key()] = n;
        sqs[u] = squares(i, f.at[u], budget);
        for (int n = 0; n < int(sqs[u].size()); ++n)
            square_index[u][{sqs[u][n].top.key(), sqs[u][n].bottom.key()}] = n;
    }
    SetPresheaf lhs, rhs;
    for (int u = 0; u < k; ++u) {
        lhs.size.push_back(int(maps[u].size()));
        rhs.size.push_back(int(sqs[u].size()));
    }
    for (int a = 0; a < c.arrow_count(); ++a) {
        const int u = c.arrow(a).tgt, v = c.arrow(a).src;
        std::vector<int> rl, rr;
        for (const auto& g : maps[u])
            rl.push_back(map_index[v].at(compose(f.source.restrict[a], g).key()));
        for (const auto& sq : sqs[u]) {
            Square r = restrict_square(f, a, sq);
            rr.push_back(square_index[v].at({r.top.key(), r.bottom.key()}));
        }
        lhs.restrict.push_back(std::move(rl));
        rhs.restrict.push_back(std::move(rr));
    }
    SetMap m;
    for (int u = 0; u < k; ++u) {
        m.at.emplace_back();
        for (const auto& g : maps[u])
            m.at[u].push_back(square_index[u].at({compose(g, i).key(), compose(f.at[u], g).key()}));
    }
    Decision d = local_epi(site, rhs, m);
    if (d.is_no()) {
        const int u = *c.find_object(d.certificate["object"].get<std::string>());
        return Decision::no("no covering sieve on which the square lifts",
                            square_witness(site, u, sqs[u][d.certificate["section"].get<int>()]));
    }
    return d;
}

Decision has_local_rlp(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i, std::uint64_t budget) {
    Decision direct = local_rlp_direct(site, f, i, budget);
    Decision criterion = local_rlp_via_epi(site, f, i, budget);
    if (direct.is_yes() != criterion.is_yes())
        throw Error(ErrorKind::OracleDisagreement, "direct lifting search and the local epimorphism criterion disagree",
                    {{"direct", direct.to_json()}, {"criterion", criterion.to_json()}});
    return direct;
}

nlohmann::ordered_json LocalFibration::to_json() const {
    return {{"local_inner_fibration", inner.to_json()},
            {"local_kan_fibration", kan.to_json()},
            {"local_trivial_fibration", trivial.to_json()},
            {"max_dim", max_dim}};
}

LocalFibration classify_local_fibration(const FiniteSite& site, const PresheafMap& f, int max_dim,
                                        std::uint64_t budget) {
    if (max_dim < 2 || max_dim > kMaxDim)
        throw Error(ErrorKind::InvalidArgument, "max_dim must lie in 2.." + std::to_string(kMaxDim));
    auto run = [&](const std::vector<shapes::ShapeSpec>& specs) {
        for (const auto& s : specs) {
            Decision d = has_local_rlp(site, f, shapes::standard_inclusion(s), budget);
            if (d.is_no()) {
                d.certificate["shape"] = s.to_string();
                return d;
            }
        }
        return Decision::yes({{"max_dim", max_dim}, {"shapes", specs.size()}});
    };
    std::vector<shapes::ShapeSpec> inner, all, boundaries;
    for (int n = 2; n <= max_dim; ++n)
        for (int k = 0; k <= n; ++k) {
            all.push_back({shapes::Kind::horn, n, k});
            if (0 < k && k < n)
                inner.push_back({shapes::Kind::horn, n, k});
        }
    // the 1-dimensional horns are vertices of the interval
    for (int k = 0; k <= 1; ++k)
        all.insert(all.begin() + k, {shapes::Kind::horn, 1, k});
    for (int n = 0; n <= max_dim; ++n)
        boundaries.push_back({shapes::Kind::boundary, n, 0});
    LocalFibration out;
    out.max_dim = max_dim;
    out.inner = run(inner);
    out.kan = out.inner.is_no() ? out.inner : run(all);
    out.trivial = run(boundaries);
    return out;
}

// json

namespace {

nlohmann::json resolve(const nlohmann::json& j) { return j.is_string() ? read_json_file(j.get<std::string>()) : j; }

} // namespace

SimplicialPresheaf presheaf_from_json(const FiniteSite& site, const nlohmann::json& raw) {
    const auto& c = site.category();
    try {
        const nlohmann::json j = resolve(raw);
        SimplicialPresheaf x;
        for (int u = 0; u < c.object_count(); ++u)
            x.values.push_back(sset_from_json(resolve(j.at("values").at(c.object(u)))));
        for (int a = 0; a < c.arrow_count(); ++a) {
            const auto& src = x.values[c.arrow(a).tgt];
            const auto& tgt = x.values[c.arrow(a).src];
            if (c.is_identity(a))
                x.restrict.push_back(SimplicialMap::identity(src));
            else
                x.restrict.push_back(map_from_json(src, tgt, j.at("restrictions").at(c.arrow(a).id)));
        }
        validate(site, x);
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("presheaf: ") + e.what());
    }
}

ojson presheaf_to_json(const FiniteSite& site, const SimplicialPresheaf& x) {
    const auto& c = site.category();
    ojson values = ojson::object(), restrictions = ojson::object();
    for (int u = 0; u < c.object_count(); ++u)
        values[c.object(u)] = sset_to_json(*x.values[u]);
    for (int a = c.object_count(); a < c.arrow_count(); ++a)
        restrictions[c.arrow(a).id] = map_to_json(x.restrict[a]);
    return {{"values", values}, {"restrictions", restrictions}};
}

PresheafMap presheaf_map_from_json(const FiniteSite& site, const nlohmann::json& raw) {
    const auto& c = site.category();
    try {
        const nlohmann::json j = resolve(raw);
        PresheafMap f{presheaf_from_json(site, j.at("source")), presheaf_from_json(site, j.at("target")), {}};
        for (int u = 0; u < c.object_count(); ++u)
            f.at.push_back(map_from_json(f.source.values[u], f.target.values[u], j.at("components").at(c.object(u))));
        validate(site, f);
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("presheaf map: ") + e.what());
    }
}

ojson presheaf_map_to_json(const FiniteSite& site, const PresheafMap& f) {
    const auto& c = site.category();
    ojson comps = ojson::object();
    for (int u = 0; u < c.object_count(); ++u)
        comps[c.object(u)] = map_to_json(f.at[u]);
    return {{"source", presheaf_to_json(site, f.source)},
            {"target", presheaf_to_json(site, f.target)},
            {"components", comps}};
}

} // namespace ljoyal
