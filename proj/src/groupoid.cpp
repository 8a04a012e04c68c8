#include "ljoyal/groupoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "ljoyal/error.hpp"

namespace ljoyal {

GroupWord free_reduce(const GroupWord& w) {
    GroupWord out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

GroupWord group_inverse(const GroupWord& w) {
    GroupWord out(w.rbegin(), w.rend());
    for (int& x : out)
        x = -x;
    return out;
}

namespace {

int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
int inverse_column(int col) { return col ^ 1; }

} // namespace

int FiniteGroup::element(const GroupWord& w, int start) const {
    int c = start;
    for (int x : w)
        c = action[c][column(x)];
    return c;
}

int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int c = a; c != 0; c = multiply(c, a))
        ++k;
    return k;
}

std::optional<FiniteGroup> enumerate_group(const GroupPresentation& p, std::size_t coset_limit) {
    const int cols = 2 * p.generators;
    std::vector<std::vector<int>> table;
    std::vector<int> parent;
    auto new_coset = [&] {
        table.emplace_back(cols, -1);
        parent.push_back(int(parent.size()));
        return int(parent.size()) - 1;
    };
    new_coset();
    std::function<int(int)> rep = [&](int k) {
        int l = k;
        while (parent[l] != l)
            l = parent[l];
        while (parent[k] != l) {
            int next = parent[k];
            parent[k] = l;
            k = next;
        }
        return l;
    };
    auto merge = [&](int k, int l, std::vector<int>& queue) {
        int a = rep(k), b = rep(l);
        if (a == b)
            return;
        int mu = std::min(a, b), nu = std::max(a, b);
        parent[nu] = mu;
        queue.push_back(nu);
    };
    auto coincidence = [&](int alpha, int beta) {
        std::vector<int> queue;
        merge(alpha, beta, queue);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int gamma = queue[i];
            for (int x = 0; x < cols; ++x) {
                int delta = table[gamma][x];
                if (delta < 0)
                    continue;
                if (table[delta][inverse_column(x)] == gamma)
                    table[delta][inverse_column(x)] = -1;
                int mu = rep(gamma), nu = rep(delta);
                if (table[mu][x] >= 0)
                    merge(nu, table[mu][x], queue);
                else if (table[nu][inverse_column(x)] >= 0)
                    merge(mu, table[nu][inverse_column(x)], queue);
                else {
                    table[mu][x] = nu;
                    table[nu][inverse_column(x)] = mu;
                }
            }
        }
    };
    auto define = [&](int c, int x) {
        int d = new_coset();
        table[c][x] = d;
        table[d][inverse_column(x)] = c;
    };
    std::vector<std::vector<int>> relators;
    for (const auto& r : p.relators) {
        std::vector<int> cols_of;
        for (int x : free_reduce(r))
            cols_of.push_back(column(x));
        if (!cols_of.empty())
            relators.push_back(std::move(cols_of));
    }
    auto scan_and_fill = [&](int alpha, const std::vector<int>& w) {
        int f = alpha, b = alpha;
        int i = 0, j = int(w.size()) - 1;
        while (true) {
            while (i <= j && table[f][w[i]] >= 0)
                f = table[f][w[i++]];
            if (i > j) {
                if (f != b)
                    coincidence(f, b);
                return;
            }
            while (j >= i && table[b][inverse_column(w[j])] >= 0)
                b = table[b][inverse_column(w[j--])];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table[f][w[i]] = b;
                table[b][inverse_column(w[i])] = f;
                return;
            }
            define(f, w[i]);
        }
    };
    for (int alpha = 0; alpha < int(table.size()); ++alpha) {
        for (const auto& w : relators) {
            if (parent[alpha] != alpha)
                break;
            scan_and_fill(alpha, w);
        }
        for (int x = 0; x < cols && parent[alpha] == alpha; ++x)
            if (table[alpha][x] < 0)
                define(alpha, x);
        if (table.size() > coset_limit)
            return std::nullopt;
    }
    // Compact the live cosets in breadth-first order from the identity.
    std::vector<int> index(table.size(), -1);
    std::vector<int> order{0};
    index[0] = 0;
    FiniteGroup g;
    g.generators = p.generators;
    g.representative.push_back({});
    for (std::size_t q = 0; q < order.size(); ++q)
        for (int x = 0; x < cols; ++x) {
            int d = rep(table[order[q]][x]);
            if (index[d] < 0) {
                index[d] = int(order.size());
                order.push_back(d);
                GroupWord w = g.representative[q];
                w.push_back(x % 2 == 0 ? x / 2 + 1 : -(x / 2 + 1));
                g.representative.push_back(std::move(w));
            }
        }
    g.order = int(order.size());
    g.action.assign(g.order, std::vector<int>(cols, 0));
    for (int e = 0; e < g.order; ++e)
        for (int x = 0; x < cols; ++x)
            g.action[e][x] = index[rep(table[order[e]][x])];
    return g;
}

AbelianInvariants abelianization(const GroupPresentation& p) {
    const int n = p.generators;
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& r : p.relators) {
        std::vector<std::int64_t> row(n, 0);
        for (int x : r)
            row[std::abs(x) - 1] += x > 0 ? 1 : -1;
        if (std::any_of(row.begin(), row.end(), [](std::int64_t v) { return v != 0; }))
            m.push_back(std::move(row));
    }
    // Smith normal form by repeated pivoting on the smallest entry.
    const int rows = int(m.size());
    std::vector<std::int64_t> diagonal;
    int t = 0;
    while (t < rows && t < n) {
        int pr = -1, pc = -1;
        std::int64_t best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < n; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pr = i;
                    pc = j;
                }
        if (pr < 0)
            break;
        std::swap(m[t], m[pr]);
        for (auto& row : m)
            std::swap(row[t], row[pc]);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            std::int64_t q = m[i][t] / m[t][t];
            for (int j = t; j < n; ++j)
                m[i][j] -= q * m[t][j];
            clean &= m[i][t] == 0;
        }
        for (int j = t + 1; j < n; ++j) {
            std::int64_t q = m[t][j] / m[t][t];
            for (int i = t; i < rows; ++i)
                m[i][j] -= q * m[i][t];
            clean &= m[t][j] == 0;
        }
        if (!clean)
            continue;
        // The pivot must divide every remaining entry.
        bool divides = true;
        for (int i = t + 1; i < rows && divides; ++i)
            for (int j = t + 1; j < n && divides; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (int k = t; k < n; ++k)
                        m[t][k] += m[i][k];
                    divides = false;
                }
        if (!divides)
            continue;
        diagonal.push_back(std::llabs(m[t][t]));
        ++t;
    }
    AbelianInvariants out;
    for (auto d : diagonal)
        if (d > 1)
            out.torsion.push_back(d);
    std::sort(out.torsion.begin(), out.torsion.end());
    out.free_rank = n - int(diagonal.size());
    return out;
}

namespace {

std::vector<int> order_profile(const FiniteGroup& g) {
    std::vector<int> out;
    for (int e = 0; e < g.order; ++e)
        out.push_back(g.element_order(e));
    std::sort(out.begin(), out.end());
    return out;
}

// Elements of the subgroup generated by `gens`.
std::vector<bool> closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<bool> in(g.order, false);
    std::vector<int> stack{0};
    in[0] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int s : gens) {
            int y = g.multiply(x, s);
            if (!in[y]) {
                in[y] = true;
                stack.push_back(y);
            }
        }
    }
    return in;
}

// Extends generator images to a map on all elements; nullopt if inconsistent.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& gens,
                                           const std::vector<int>& images) {
    std::vector<int> phi(a.order, -1);
    phi[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int y = a.multiply(x, gens[i]);
            int v = b.multiply(phi[x], images[i]);
            if (phi[y] < 0) {
                phi[y] = v;
                queue.push_back(y);
            } else if (phi[y] != v) {
                return std::nullopt;
            }
        }
    }
    return phi;
}

bool bijective(const std::vector<int>& phi, int order) {
    std::vector<bool> hit(order, false);
    for (int v : phi) {
        if (v < 0 || hit[v])
            return false;
        hit[v] = true;
    }
    return true;
}

} // namespace

Decision finite_groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order != b.order)
        return Decision::no("orders differ", {{"orders", {a.order, b.order}}});
    if (order_profile(a) != order_profile(b))
        return Decision::no("element orders differ");
    std::vector<int> gens;
    std::vector<bool> span = closure(a, gens);
    for (int e = 1; e < a.order; ++e)
        if (!span[e]) {
            gens.push_back(e);
            span = closure(a, gens);
        }
    std::vector<int> images(gens.size());
    std::vector<int> bord(b.order);
    for (int e = 0; e < b.order; ++e)
        bord[e] = b.element_order(e);
    std::uint64_t nodes = 0;
    std::optional<std::vector<int>> found;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (found || ++nodes > 5'000'000)
            return;
        if (i == gens.size()) {
            auto phi = extend_hom(a, b, gens, images);
            if (phi && bijective(*phi, b.order))
                found = phi;
            return;
        }
        int want = a.element_order(gens[i]);
        for (int e = 0; e < b.order && !found; ++e)
            if (bord[e] == want) {
                images[i] = e;
                rec(i + 1);
            }
    };
    rec(0);
    if (found)
        return Decision::yes({{"order", a.order}});
    if (nodes > 5'000'000)
        return Decision::unknown("budget");
    return Decision::no("no isomorphism exists", {{"order", a.order}});
}

GroupWord GroupoidStructure::loop_image(const Word& w) const {
    GroupWord out;
    for (int g : w)
        out.insert(out.end(), generator_image[g].begin(), generator_image[g].end());
    return free_reduce(out);
}

namespace {

GroupWord cyclic_reduce(GroupWord w) {
    w = free_reduce(w);
    std::size_t a = 0, b = w.size();
    while (b - a >= 2 && w[a] == -w[b - 1]) {
        ++a;
        --b;
    }
    return GroupWord(w.begin() + long(a), w.begin() + long(b));
}

GroupWord substitute(const GroupWord& w, int x, const GroupWord& value) {
    GroupWord out;
    GroupWord inv = group_inverse(value);
    for (int l : w) {
        if (l == x)
            out.insert(out.end(), value.begin(), value.end());
        else if (l == -x)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(l);
    }
    return free_reduce(out);
}

} // namespace

GroupPresentation tietze_reduce(const GroupPresentation& p, std::vector<GroupWord>& expr, std::vector<int>& kept) {
    const int n = p.generators;
    expr.assign(n, {});
    for (int k = 1; k <= n; ++k)
        expr[k - 1] = {k};
    std::vector<GroupWord> rels;
    for (const auto& r : p.relators)
        if (auto c = cyclic_reduce(r); !c.empty())
            rels.push_back(std::move(c));
    std::vector<bool> alive(n + 1, true);
    while (true) {
        // shortest relator with a letter occurring once
        int best = -1, letter = 0;
        for (int i = 0; i < int(rels.size()); ++i) {
            if (best >= 0 && rels[i].size() >= rels[best].size())
                continue;
            std::map<int, int> occurrences;
            for (int l : rels[i])
                ++occurrences[std::abs(l)];
            for (auto [g, count] : occurrences)
                if (count == 1) {
                    best = i;
                    letter = g;
                    break;
                }
        }
        if (best < 0 || rels[best].size() > 64)
            break;
        GroupWord r = rels[best];
        rels.erase(rels.begin() + best);
        std::size_t pos = 0;
        while (std::abs(r[pos]) != letter)
            ++pos;
        GroupWord u(r.begin(), r.begin() + long(pos)), v(r.begin() + long(pos) + 1, r.end());
        // u x^e v = 1
        GroupWord value;
        if (r[pos] > 0) {
            value = group_inverse(u);
            GroupWord vi = group_inverse(v);
            value.insert(value.end(), vi.begin(), vi.end());
        } else {
            value = v;
            value.insert(value.end(), u.begin(), u.end());
        }
        value = free_reduce(value);
        alive[letter] = false;
        for (auto& w : rels)
            w = cyclic_reduce(substitute(w, letter, value));
        std::erase_if(rels, [](const GroupWord& w) { return w.empty(); });
        for (auto& e : expr)
            e = substitute(e, letter, value);
    }
    std::vector<int> renumber(n + 1, 0);
    kept.clear();
    for (int k = 1; k <= n; ++k)
        if (alive[k]) {
            kept.push_back(k);
            renumber[k] = int(kept.size());
        }
    auto rename = [&](GroupWord& w) {
        for (int& l : w)
            l = l > 0 ? renumber[l] : -renumber[-l];
    };
    for (auto& w : rels)
        rename(w);
    for (auto& e : expr)
        rename(e);
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    return GroupPresentation{int(kept.size()), std::move(rels)};
}

Word GroupoidStructure::inverse(const Word& w) const {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(groupoid->inverse_of[*it]);
    return out;
}

GroupoidStructure analyze_groupoid(const FpCategory& groupoid, std::size_t coset_limit) {
    if (groupoid.inverse_of.size() != groupoid.generators().size())
        throw Error(ErrorKind::InvalidArgument, "groupoid presentation without formal inverses");
    GroupoidStructure s;
    s.groupoid = &groupoid;
    const int objects = int(groupoid.objects().size());
    const int gens = int(groupoid.generators().size());
    s.component_of.assign(objects, -1);
    s.tree_path.assign(objects, {});
    std::vector<bool> tree(gens, false);
    for (int start = 0; start < objects; ++start) {
        if (s.component_of[start] >= 0)
            continue;
        int comp = s.components();
        s.base.push_back(start);
        s.component_of[start] = comp;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (int g = 0; g < gens; ++g) {
                const auto& gen = groupoid.generators()[g];
                if (gen.src != x || s.component_of[gen.tgt] >= 0)
                    continue;
                s.component_of[gen.tgt] = comp;
                s.tree_path[gen.tgt] = s.tree_path[x];
                s.tree_path[gen.tgt].push_back(g);
                tree[g] = tree[groupoid.inverse_of[g]] = true;
                queue.push_back(gen.tgt);
            }
        }
    }
    // raw vertex groups: one generator per non-tree edge pair
    std::vector<GroupPresentation> raw(s.components());
    std::vector<std::vector<int>> raw_edges(s.components());
    s.generator_image.assign(gens, {});
    for (int g = 0; g < gens; ++g) {
        int inv = groupoid.inverse_of[g];
        if (tree[g] || g > inv || (g == inv))
            continue;
        int c = s.component_of[groupoid.generators()[g].src];
        int k = ++raw[c].generators;
        raw_edges[c].push_back(g);
        s.generator_image[g] = {k};
        s.generator_image[inv] = {-k};
    }
    for (const auto& r : groupoid.relations()) {
        GroupWord rel = s.loop_image(r.lhs.word);
        GroupWord rhs = group_inverse(s.loop_image(r.rhs));
        rel.insert(rel.end(), rhs.begin(), rhs.end());
        rel = free_reduce(rel);
        if (!rel.empty())
            raw[s.component_of[r.lhs.src]].relators.push_back(std::move(rel));
    }
    s.group_edges.resize(s.components());
    for (int c = 0; c < s.components(); ++c) {
        std::vector<GroupWord> expr;
        std::vector<int> kept;
        s.groups.push_back(tietze_reduce(raw[c], expr, kept));
        for (int k : kept)
            s.group_edges[c].push_back(raw_edges[c][k - 1]);
        for (std::size_t k = 0; k < raw_edges[c].size(); ++k) {
            int g = raw_edges[c][k];
            s.generator_image[g] = expr[k];
            s.generator_image[groupoid.inverse_of[g]] = group_inverse(expr[k]);
        }
    }
    for (auto& grp : s.groups)
        s.finite.push_back(enumerate_group(grp, coset_limit));
    return s;
}

namespace {

Decision vertex_groups_isomorphic(const GroupoidStructure& g, int cg, const GroupoidStructure& h, int ch) {
    const auto& fa = g.finite[cg];
    const auto& fb = h.finite[ch];
    if (fa && fb)
        return finite_groups_isomorphic(*fa, *fb);
    auto aa = abelianization(g.groups[cg]);
    auto ab = abelianization(h.groups[ch]);
    if (!(aa == ab))
        return Decision::no("abelianizations differ");
    if ((fa && aa.free_rank > 0) || (fb && ab.free_rank > 0))
        return Decision::no("finite versus infinite vertex group");
    if (g.groups[cg].relators.empty() && h.groups[ch].relators.empty() &&
        g.groups[cg].generators == h.groups[ch].generators)
        return Decision::yes({{"free_rank", g.groups[cg].generators}});
    return Decision::unknown("vertex groups agree on invariants but no isomorphism is certified");
}

// Perfect matching using only the allowed pairs.
bool perfect_matching(const std::vector<std::vector<bool>>& allowed) {
    const int n = int(allowed.size());
    std::vector<int> match(n, -1);
    for (int u = 0; u < n; ++u) {
        std::vector<bool> seen(n, false);
        std::function<bool(int)> augment = [&](int x) {
            for (int v = 0; v < n; ++v)
                if (allowed[x][v] && !seen[v]) {
                    seen[v] = true;
                    if (match[v] < 0 || augment(match[v])) {
                        match[v] = x;
                        return true;
                    }
                }
            return false;
        };
        if (!augment(u))
            return false;
    }
    return true;
}

} // namespace

Decision groupoid_equivalent(const FpCategory& g, const FpCategory& h, std::size_t coset_limit) {
    FpCategory gg = g.inverse_of.empty() ? groupoidify(g) : g;
    FpCategory hh = h.inverse_of.empty() ? groupoidify(h) : h;
    auto sg = analyze_groupoid(gg, coset_limit);
    auto sh = analyze_groupoid(hh, coset_limit);
    if (sg.components() != sh.components())
        return Decision::no("component counts differ", {{"components", {sg.components(), sh.components()}}});
    const int n = sg.components();
    std::vector<std::vector<bool>> yes(n, std::vector<bool>(n)), maybe(n, std::vector<bool>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Decision d = vertex_groups_isomorphic(sg, a, sh, b);
            yes[a][b] = d.is_yes();
            maybe[a][b] = !d.is_no();
        }
    if (perfect_matching(yes))
        return Decision::yes({{"components", n}});
    if (!perfect_matching(maybe))
        return Decision::no("vertex groups cannot be matched", {{"components", n}});
    return Decision::unknown("vertex groups agree on invariants but no isomorphism is certified");
}

Decision functor_is_equivalence(const GroupoidStructure& g, const GroupoidStructure& h,
                                const std::vector<int>& on_objects, const std::vector<Word>& on_generators) {
    const FpCategory& gc = *g.groupoid;
    const int originals = int(gc.generators().size()) / 2;
    auto image_word = [&](const Word& w) {
        Word out;
        for (int x : w) {
            Word piece = x < originals ? on_generators[x] : h.inverse(on_generators[gc.inverse_of[x]]);
            out.insert(out.end(), piece.begin(), piece.end());
        }
        return out;
    };
    // components
    std::vector<int> hit(h.components(), -1);
    for (int c = 0; c < g.components(); ++c) {
        int target = h.component_of[on_objects[g.base[c]]];
        if (hit[target] >= 0)
            return Decision::no("not injective on components",
                                {{"objects", {gc.objects()[g.base[hit[target]]], gc.objects()[g.base[c]]}},
                                 {"components", {g.components(), h.components()}}});
        hit[target] = c;
    }
    for (int t = 0; t < h.components(); ++t)
        if (hit[t] < 0)
            return Decision::no("not surjective on components",
                                {{"missed", h.groupoid->objects()[h.base[t]]},
                                 {"components", {g.components(), h.components()}}});
    DecisionAccumulator acc;
    for (int c = 0; c < g.components(); ++c) {
        const int fb = on_objects[g.base[c]];
        const int tc = h.component_of[fb];
        // images of the vertex-group generators, moved to the target base
        std::vector<GroupWord> images;
        for (int x : g.group_edges[c]) {
            const auto& gen = gc.generators()[x];
            Word loop = g.tree_path[gen.src];
            loop.push_back(x);
            Word back = g.inverse(g.tree_path[gen.tgt]);
            loop.insert(loop.end(), back.begin(), back.end());
            Word mapped = h.tree_path[fb];
            Word body = image_word(loop);
            mapped.insert(mapped.end(), body.begin(), body.end());
            Word ret = h.inverse(h.tree_path[fb]);
            mapped.insert(mapped.end(), ret.begin(), ret.end());
            images.push_back(h.loop_image(mapped));
        }
        const auto& fa = g.finite[c];
        const auto& fbg = h.finite[tc];
        nlohmann::json where = {{"component", gc.objects()[g.base[c]]}};
        if (fa && fbg) {
            if (fa->order != fbg->order) {
                acc.add(Decision::no("vertex group orders differ",
                                     {{"component", where["component"]}, {"orders", {fa->order, fbg->order}}}));
                break;
            }
            std::vector<int> phi(fa->order);
            for (int e = 0; e < fa->order; ++e) {
                GroupWord w;
                for (int letter : fa->representative[e]) {
                    GroupWord piece = letter > 0 ? images[letter - 1] : group_inverse(images[-letter - 1]);
                    w.insert(w.end(), piece.begin(), piece.end());
                }
                phi[e] = fbg->element(w);
            }
            bool hom = true;
            for (int e = 0; e < fa->order && hom; ++e)
                for (int k = 0; k < fa->generators; ++k)
                    if (phi[fa->action[e][2 * k]] != fbg->element(images[k], phi[e]))
                        hom = false;
            if (!hom) {
                acc.add(Decision::no("images violate a vertex group relation", where));
                break;
            }
            if (!bijective(phi, fbg->order)) {
                acc.add(Decision::no("not bijective on a vertex group", where));
                break;
            }
            continue;
        }
        auto aa = abelianization(g.groups[c]);
        auto ab = abelianization(h.groups[tc]);
        if (!(aa == ab)) {
            acc.add(Decision::no("vertex group abelianizations differ", where));
            break;
        }
        acc.add(Decision::unknown("infinite vertex group", where));
    }
    return acc.result({{"components", g.components()}});
}

} // namespace ljoyal
