#include "ljoyal/finite_category.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ljoyal/error.hpp"

namespace ljoyal {

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               const std::vector<std::vector<std::string>>& composition)
    : objects_(std::move(objects)) {
    for (std::size_t o = 0; o < objects_.size(); ++o) {
        for (std::size_t p = 0; p < o; ++p)
            if (objects_[p] == objects_[o])
                throw Error(ErrorKind::DuplicateId, "duplicate object '" + objects_[o] + "'");
        arrows_.push_back(Arrow{"id:" + objects_[o], int(o), int(o)});
    }
    for (auto& a : arrows) {
        if (a.src < 0 || a.tgt < 0 || a.src >= object_count() || a.tgt >= object_count())
            throw Error(ErrorKind::InvalidArgument, "arrow '" + a.id + "' has an unknown endpoint");
        if (find_arrow(a.id))
            throw Error(ErrorKind::DuplicateId, "duplicate arrow '" + a.id + "'");
        arrows_.push_back(std::move(a));
    }
    const int n = arrow_count();
    table_.assign(n, std::vector<int>(n, -1));
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (arrows_[f].tgt != arrows_[g].src)
                continue;
            if (is_identity(f))
                table_[f][g] = g;
            else if (is_identity(g))
                table_[f][g] = f;
        }
    for (const auto& row : composition) {
        if (row.size() != 3)
            throw Error(ErrorKind::Parse, "composition entries are [f, g, g o f] triples");
        auto f = find_arrow(row[0]), g = find_arrow(row[1]), h = find_arrow(row[2]);
        if (!f || !g || !h)
            throw Error(ErrorKind::InvalidArgument, "composition mentions an unknown arrow");
        if (arrows_[*f].tgt != arrows_[*g].src || arrows_[*h].src != arrows_[*f].src ||
            arrows_[*h].tgt != arrows_[*g].tgt)
            throw Error(ErrorKind::EndpointMismatch, "composite " + row[1] + " o " + row[0] + " = " + row[2] +
                                                         " has mismatched endpoints");
        int& slot = table_[*f][*g];
        if (slot >= 0 && slot != *h)
            throw Error(ErrorKind::AssociativityViolation,
                        "conflicting composites for " + row[1] + " o " + row[0]);
        slot = *h;
    }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
            if (arrows_[f].tgt == arrows_[g].src && table_[f][g] < 0)
                throw Error(ErrorKind::InvalidArgument,
                            "missing composite " + arrows_[g].id + " o " + arrows_[f].id);
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            int fg = table_[f][g];
            if (fg < 0)
                continue;
            for (int h = 0; h < n; ++h) {
                if (table_[g][h] < 0)
                    continue;
                if (table_[fg][h] != table_[f][table_[g][h]])
                    throw Error(ErrorKind::AssociativityViolation,
                                "composition is not associative on " + arrows_[f].id + ", " + arrows_[g].id + ", " +
                                    arrows_[h].id,
                                {{"arrows", {arrows_[f].id, arrows_[g].id, arrows_[h].id}}});
            }
        }
}

std::optional<int> FiniteCategory::find_object(std::string_view id) const {
    for (int o = 0; o < object_count(); ++o)
        if (objects_[o] == id)
            return o;
    return std::nullopt;
}

std::optional<int> FiniteCategory::find_arrow(std::string_view id) const {
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows_[a].id == id)
            return a;
    return std::nullopt;
}

int FiniteCategory::then(int f, int g) const { return table_[f][g]; }

std::vector<int> FiniteCategory::hom(int x, int y) const {
    std::vector<int> out;
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows_[a].src == x && arrows_[a].tgt == y)
            out.push_back(a);
    return out;
}

std::optional<int> FiniteCategory::inverse(int a) const {
    for (int b : hom(arrows_[a].tgt, arrows_[a].src))
        if (then(a, b) == identity(arrows_[a].src) && then(b, a) == identity(arrows_[a].tgt))
            return b;
    return std::nullopt;
}

bool FiniteCategory::is_groupoid() const {
    for (int a = 0; a < arrow_count(); ++a)
        if (!inverse(a))
            return false;
    return true;
}

std::optional<int> FiniteCategory::longest_chain() const {
    const int n = object_count();
    std::vector<std::vector<int>> next(n);
    for (int a = object_count(); a < arrow_count(); ++a) {
        if (arrows_[a].src == arrows_[a].tgt)
            return std::nullopt;
        next[arrows_[a].src].push_back(arrows_[a].tgt);
    }
    std::vector<int> state(n, 0), depth(n, 0);
    bool cyclic = false;
    std::function<void(int)> visit = [&](int v) {
        state[v] = 1;
        for (int w : next[v]) {
            if (state[w] == 1)
                cyclic = true;
            else if (state[w] == 0)
                visit(w);
            depth[v] = std::max(depth[v], depth[w] + 1);
        }
        state[v] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0)
            visit(v);
    if (cyclic)
        return std::nullopt;
    int best = 0;
    for (int d : depth)
        best = std::max(best, d);
    return best;
}

std::vector<std::vector<std::string>> FiniteCategory::composition_table() const {
    std::vector<std::vector<std::string>> out;
    for (int f = object_count(); f < arrow_count(); ++f)
        for (int g = object_count(); g < arrow_count(); ++g)
            if (table_[f][g] >= 0)
                out.push_back({arrows_[f].id, arrows_[g].id, arrows_[table_[f][g]].id});
    return out;
}

namespace {

std::vector<std::vector<int>> chains(const FiniteCategory& c, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        if (int(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int a = c.object_count(); a < c.arrow_count(); ++a)
            if (cur.empty() || c.arrow(cur.back()).tgt == c.arrow(a).src) {
                cur.push_back(a);
                rec();
                cur.pop_back();
            }
    };
    rec();
    return out;
}

std::string chain_id(const FiniteCategory& c, const std::vector<int>& chain) {
    std::string id;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i)
            id += "|";
        id += c.arrow(chain[i]).id;
    }
    return id;
}

// Degeneracy mask and nondegenerate part of a chain that may contain identities.
std::pair<DegenMask, std::vector<int>> normalize(const FiniteCategory& c, const std::vector<int>& chain) {
    DegenMask mask = 0;
    std::vector<int> base;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (c.is_identity(chain[i]))
            mask |= DegenMask(1) << i;
        else
            base.push_back(chain[i]);
    }
    return {mask, base};
}

std::vector<int> chain_face(const FiniteCategory& c, const std::vector<int>& chain, int i) {
    const int n = int(chain.size());
    std::vector<int> out;
    for (int t = 0; t < n; ++t) {
        if ((i == 0 && t == 0) || (i == n && t == n - 1))
            continue;
        if (i > 0 && i < n && t == i - 1) {
            out.push_back(c.then(chain[t], chain[t + 1]));
            ++t;
            continue;
        }
        out.push_back(chain[t]);
    }
    return out;
}

} // namespace

SSetPtr nerve(const FiniteCategory& c, int cap) {
    auto longest = c.longest_chain();
    cap = std::max(cap, 2);
    if (longest)
        cap = std::max(cap, std::min(*longest, kMaxDim));
    if (cap > kMaxDim)
        throw Error(ErrorKind::CapExceeded, "nerve cap out of range");
    SimplicialSet::Builder b(cap, 2);
    if (longest)
        b.finite_dim(*longest);
    for (int o = 0; o < c.object_count(); ++o)
        b.add_vertex(c.object(o));
    for (int n = 1; n <= cap; ++n)
        for (const auto& chain : chains(c, n)) {
            std::vector<Simplex> faces;
            for (int i = 0; i <= n; ++i) {
                auto face = chain_face(c, chain, i);
                auto [mask, base] = normalize(c, face);
                int bdim = int(base.size());
                int index;
                if (bdim == 0) {
                    int obj = i == 0 ? c.arrow(chain[0]).tgt : c.arrow(chain[0]).src;
                    index = obj;
                } else {
                    index = *b.find(bdim, chain_id(c, base));
                }
                faces.push_back(Simplex{n - 1, mask, index});
            }
            b.add_cell(n, chain_id(c, chain), std::move(faces));
        }
    return std::move(b).build();
}

Simplex nerve_simplex(const SSetPtr& nerve, const FiniteCategory& c, const std::vector<int>& chain, int start) {
    const int n = int(chain.size());
    auto [mask, base] = normalize(c, chain);
    const int bdim = int(base.size());
    if (bdim == 0)
        return Simplex{n, mask, n ? c.arrow(chain[0]).src : start};
    if (bdim <= nerve->dim_cap()) {
        auto idx = nerve->find(bdim, chain_id(c, base));
        if (!idx)
            throw Error(ErrorKind::InvalidArgument, "chain is not composable");
        return Simplex{n, mask, *idx};
    }
    std::vector<Simplex> bd;
    for (int i = 0; i <= bdim; ++i)
        bd.push_back(nerve_simplex(nerve, c, chain_face(c, base, i)));
    auto fillers = nerve->with_boundary(bdim, bd);
    if (fillers.size() != 1)
        throw Error(ErrorKind::NotCoskeletal, "chain above the cap has no unique filler");
    return push_forward(Simplex{n, mask, 0}, fillers[0]);
}

SimplicialMap nerve_map(const SSetPtr& source_nerve, const FiniteCategory& source, const SSetPtr& target_nerve,
                        const FiniteCategory& target, const std::vector<int>& on_arrows) {
    if (int(on_arrows.size()) != source.arrow_count())
        throw Error(ErrorKind::InvalidArgument, "functor must be given on every arrow");
    for (int f = 0; f < source.arrow_count(); ++f)
        for (int g = 0; g < source.arrow_count(); ++g)
            if (source.then(f, g) >= 0 &&
                target.then(on_arrows[f], on_arrows[g]) != on_arrows[source.then(f, g)])
                throw Error(ErrorKind::FunctorialityViolation, "assignment does not preserve composition");
    for (int o = 0; o < source.object_count(); ++o)
        if (!target.is_identity(on_arrows[o]))
            throw Error(ErrorKind::FunctorialityViolation, "identities must map to identities");
    const int top = source_nerve->mapped_dim();
    std::vector<std::vector<Simplex>> images(top + 1);
    for (int o = 0; o < source.object_count(); ++o)
        images[0].push_back(Simplex{0, 0, target.arrow(on_arrows[o]).src});
    for (int n = 1; n <= top; ++n)
        for (const auto& chain : chains(source, n)) {
            std::vector<int> mapped;
            for (int a : chain)
                mapped.push_back(on_arrows[a]);
            images[n].push_back(nerve_simplex(target_nerve, target, mapped));
        }
    return SimplicialMap(source_nerve, target_nerve, std::move(images));
}

} // namespace ljoyal
