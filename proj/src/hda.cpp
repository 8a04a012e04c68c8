#include "ljoyal/hda.hpp"

#include <functional>
#include <map>

#include "ljoyal/error.hpp"

namespace ljoyal {

namespace {

[[noreturn]] void dangling(const std::string& what) { throw Error(ErrorKind::DanglingBoundary, what); }

} // namespace

PrecubicalSet::PrecubicalSet(std::vector<std::string> vertices, std::vector<Edge> edges, std::vector<Cube> squares,
                             std::vector<Cube> cubes)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), squares_(std::move(squares)), cubes_(std::move(cubes)) {
    validate();
}

int PrecubicalSet::dim() const {
    if (!cubes_.empty())
        return 3;
    if (!squares_.empty())
        return 2;
    return edges_.empty() ? 0 : 1;
}

int PrecubicalSet::count(int k) const {
    switch (k) {
    case 0: return int(vertices_.size());
    case 1: return int(edges_.size());
    case 2: return int(squares_.size());
    case 3: return int(cubes_.size());
    default: return 0;
    }
}

const std::string& PrecubicalSet::id(int k, int i) const {
    switch (k) {
    case 0: return vertices_[i];
    case 1: return edges_[i].id;
    case 2: return squares_[i].id;
    default: return cubes_[i].id;
    }
}

std::optional<int> PrecubicalSet::find(int k, std::string_view id) const {
    for (int i = 0; i < count(k); ++i)
        if (this->id(k, i) == id)
            return i;
    return std::nullopt;
}

int PrecubicalSet::face(int k, int cell, int i, int a) const {
    if (k == 1)
        return a ? edges_[cell].tgt : edges_[cell].src;
    const Cube& c = k == 2 ? squares_[cell] : cubes_[cell];
    return c.faces[2 * (i - 1) + a];
}

void PrecubicalSet::validate() const {
    for (int k = 0; k <= 3; ++k)
        for (int i = 0; i < count(k); ++i)
            for (int j = 0; j < i; ++j)
                if (id(k, i) == id(k, j))
                    throw Error(ErrorKind::DuplicateId, "duplicate cell '" + id(k, i) + "'");
    for (const Edge& e : edges_)
        if (e.src < 0 || e.src >= count(0) || e.tgt < 0 || e.tgt >= count(0))
            dangling("edge '" + e.id + "' has an unknown endpoint");
    for (int k = 2; k <= 3; ++k)
        for (int c = 0; c < count(k); ++c) {
            const Cube& cube = k == 2 ? squares_[c] : cubes_[c];
            if (int(cube.faces.size()) != 2 * k)
                dangling("cell '" + cube.id + "' needs " + std::to_string(2 * k) + " faces");
            for (int f : cube.faces)
                if (f < 0 || f >= count(k - 1))
                    dangling("cell '" + cube.id + "' has an unknown face");
            for (int i = 1; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j)
                    for (int a = 0; a <= 1; ++a)
                        for (int b = 0; b <= 1; ++b)
                            if (face(k - 1, face(k, c, j, b), i, a) != face(k - 1, face(k, c, i, a), j - 1, b))
                                throw Error(ErrorKind::CubicalIdentityViolation,
                                            "faces of '" + cube.id + "' do not meet",
                                            {{"cell", cube.id}, {"i", i}, {"j", j}, {"a", a}, {"b", b}});
        }
}

PrecubicalSet PrecubicalSet::with_square(Cube square) const {
    auto squares = squares_;
    squares.push_back(std::move(square));
    return PrecubicalSet(vertices_, edges_, std::move(squares), cubes_);
}

PrecubicalSet pcs_from_json(const nlohmann::json& j) {
    try {
        std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
        std::vector<PrecubicalSet::Edge> edges;
        std::map<std::string, int> vindex, eindex, sindex;
        for (int v = 0; v < int(vertices.size()); ++v)
            vindex[vertices[v]] = v;
        auto lookup = [](const std::map<std::string, int>& m, const std::string& id) {
            auto it = m.find(id);
            if (it == m.end())
                dangling("unknown cell '" + id + "'");
            return it->second;
        };
        for (const auto& e : j.value("edges", nlohmann::json::array())) {
            eindex[e.at("id").get<std::string>()] = int(edges.size());
            edges.push_back({e.at("id").get<std::string>(), lookup(vindex, e.at("src").get<std::string>()),
                             lookup(vindex, e.at("tgt").get<std::string>()), e.value("label", std::string())});
        }
        auto cells = [&](const char* key, const std::map<std::string, int>& faces, std::map<std::string, int>* index) {
            std::vector<PrecubicalSet::Cube> out;
            for (const auto& c : j.value(key, nlohmann::json::array())) {
                PrecubicalSet::Cube cube{c.at("id").get<std::string>(), {}};
                for (const auto& f : c.at("faces"))
                    cube.faces.push_back(lookup(faces, f.get<std::string>()));
                if (index)
                    (*index)[cube.id] = int(out.size());
                out.push_back(std::move(cube));
            }
            return out;
        };
        auto squares = cells("squares", eindex, &sindex);
        auto cubes = cells("cubes", sindex, nullptr);
        if (j.contains("cells4") || j.contains("hypercubes"))
            throw Error(ErrorKind::DimensionUnsupported, "cells above dimension 3 are not supported");
        return PrecubicalSet(std::move(vertices), std::move(edges), std::move(squares), std::move(cubes));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("precubical set: ") + e.what());
    }
}

nlohmann::ordered_json pcs_to_json(const PrecubicalSet& k) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& e : k.edges()) {
        nlohmann::ordered_json o = {{"id", e.id}, {"src", k.vertices()[e.src]}, {"tgt", k.vertices()[e.tgt]}};
        if (!e.label.empty())
            o["label"] = e.label;
        edges.push_back(std::move(o));
    }
    auto cells = [&](const std::vector<PrecubicalSet::Cube>& list, int dim) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& c : list) {
            nlohmann::ordered_json faces = nlohmann::ordered_json::array();
            for (int f : c.faces)
                faces.push_back(k.id(dim - 1, f));
            out.push_back({{"id", c.id}, {"faces", faces}});
        }
        return out;
    };
    nlohmann::ordered_json out = {{"vertices", k.vertices()}, {"edges", edges}, {"squares", cells(k.squares(), 2)}};
    if (!k.cubes().empty())
        out["cubes"] = cells(k.cubes(), 3);
    return out;
}

namespace {

// A chain of vertex subsets of the m-cube `cell`, from the empty set to the
// full set once canonical.
struct Chain {
    int m = 0;
    int cell = 0;
    std::vector<unsigned> masks;
};

unsigned drop_bit(unsigned mask, int bit) { return (mask & ((1u << bit) - 1)) | ((mask >> (bit + 1)) << bit); }

// Moves the chain to the smallest face containing it.
Chain canonical(const PrecubicalSet& k, Chain c) {
    const unsigned lo = c.masks.front(), hi = c.masks.back();
    for (int i = c.m; i >= 1; --i) {
        const int bit = i - 1;
        const bool one = (lo >> bit) & 1u, zero = !((hi >> bit) & 1u);
        if (!one && !zero)
            continue;
        c.cell = k.face(c.m, c.cell, i, one ? 1 : 0);
        --c.m;
        for (unsigned& mask : c.masks)
            mask = drop_bit(mask, bit);
    }
    return c;
}

std::string chain_id(const PrecubicalSet& k, const Chain& c) {
    if (c.m <= 1)
        return k.id(c.m, c.cell);
    std::string id = k.id(c.m, c.cell) + ":";
    if (c.masks.size() == 2)
        return id + "diag";
    for (std::size_t s = 1; s + 1 < c.masks.size(); ++s) {
        if (s > 1)
            id += "<";
        for (int bit = 0; bit < c.m; ++bit)
            if ((c.masks[s] >> bit) & 1u)
                id += char('1' + bit);
    }
    return id;
}

// Strictly increasing chains 0 = v0 < ... < vn = full with n steps.
void chains(int m, int n, const std::function<void(const std::vector<unsigned>&)>& visit) {
    const unsigned full = (1u << m) - 1;
    std::vector<unsigned> chain{0};
    std::function<void()> go = [&] {
        const unsigned last = chain.back();
        if (int(chain.size()) == n + 1) {
            if (last == full)
                visit(chain);
            return;
        }
        for (unsigned next = 1; next <= full; ++next)
            if ((next & last) == last && next != last) {
                chain.push_back(next);
                go();
                chain.pop_back();
            }
    };
    if (n == 0) {
        if (m == 0)
            visit(chain);
        return;
    }
    go();
}

} // namespace

SSetPtr triangulate(const PrecubicalSet& k) {
    const int top = k.dim();
    if (top > 3)
        throw Error(ErrorKind::DimensionUnsupported, "cubes above dimension 3 are not supported");
    SimplicialSet::Builder b(top);
    for (int n = 0; n <= top; ++n)
        for (int m = n; m <= top; ++m)
            for (int cell = 0; cell < k.count(m); ++cell)
                chains(m, n, [&](const std::vector<unsigned>& masks) {
                    Chain c{m, cell, masks};
                    std::vector<Simplex> faces;
                    if (n > 0)
                        for (int i = 0; i <= n; ++i) {
                            Chain f = c;
                            f.masks.erase(f.masks.begin() + i);
                            f = canonical(k, f);
                            faces.push_back(Simplex{n - 1, 0, *b.find(n - 1, chain_id(k, f))});
                        }
                    b.add_cell(n, chain_id(k, c), std::move(faces));
                });
    return std::move(b).build();
}

FpCategory hda_path_category(const PrecubicalSet& k) {
    std::vector<FpCategory::Generator> gens;
    for (const auto& e : k.edges())
        gens.push_back({e.id, e.src, e.tgt});
    std::vector<FpCategory::Relation> rels;
    for (int s = 0; s < k.count(2); ++s) {
        const int left = k.face(2, s, 1, 0), right = k.face(2, s, 1, 1);
        const int bottom = k.face(2, s, 2, 0), top = k.face(2, s, 2, 1);
        rels.push_back({Path{k.edges()[bottom].src, {bottom, right}}, {left, top}});
    }
    FpCategory c(k.vertices(), std::move(gens), std::move(rels));
    c.complete();
    return c;
}

ExecPaths exec_paths(const PrecubicalSet& k, int x, int y, int max_len) {
    if (x < 0 || x >= k.count(0) || y < 0 || y >= k.count(0))
        throw Error(ErrorKind::InvalidArgument, "unknown vertex");
    FpCategory c = hda_path_category(k);
    const bool complete = c.status() != RewriteStatus::incomplete;
    ExecPaths out;
    std::vector<Word> frontier{Word{}};
    std::vector<int> at{x};
    std::map<Word, int> by_normal_form;
    std::vector<Word> pending;
    for (int len = 0; len <= max_len && !frontier.empty(); ++len) {
        for (std::size_t i = 0; i < frontier.size(); ++i)
            if (at[i] == y) {
                ++out.words;
                if (complete) {
                    if (by_normal_form.emplace(c.normalize(frontier[i]), int(out.classes.size())).second)
                        out.classes.push_back(frontier[i]);
                } else {
                    pending.push_back(frontier[i]);
                }
            }
        std::vector<Word> next;
        std::vector<int> next_at;
        for (std::size_t i = 0; i < frontier.size(); ++i)
            for (int e = 0; e < k.count(1); ++e)
                if (k.edges()[e].src == at[i]) {
                    Word w = frontier[i];
                    w.push_back(e);
                    next.push_back(std::move(w));
                    next_at.push_back(k.edges()[e].tgt);
                }
        frontier = std::move(next);
        at = std::move(next_at);
    }
    for (const Word& w : pending) {
        bool merged = false;
        std::vector<int> open;
        for (int r = 0; r < int(out.classes.size()) && !merged; ++r) {
            Decision d = word_equal(c, Path{x, w}, Path{x, out.classes[r]});
            merged = d.is_yes();
            if (d.is_unknown())
                open.push_back(r);
        }
        if (merged)
            continue;
        for (int r : open)
            out.undecided.push_back({r, int(out.classes.size())});
        out.classes.push_back(w);
    }
    return out;
}

Decision exec_equivalent(const PrecubicalSet& k, const std::vector<std::string>& p, const std::vector<std::string>& q) {
    auto parse = [&](const std::vector<std::string>& ids) {
        Word w;
        for (const auto& id : ids) {
            auto e = k.find(1, id);
            if (!e)
                throw Error(ErrorKind::InvalidArgument, "unknown edge '" + id + "'");
            if (!w.empty() && k.edges()[w.back()].tgt != k.edges()[*e].src)
                throw Error(ErrorKind::EndpointMismatch, "edges do not compose at '" + id + "'");
            w.push_back(*e);
        }
        return w;
    };
    Word wp = parse(p), wq = parse(q);
    if (wp.empty() && wq.empty())
        return Decision::yes({{"reason", "both words are empty"}});
    const Word& any = wp.empty() ? wq : wp;
    const int src = k.edges()[any.front()].src;
    auto ends = [&](const Word& w) {
        return w.empty() ? std::pair{src, src} : std::pair{k.edges()[w.front()].src, k.edges()[w.back()].tgt};
    };
    if (ends(wp) != ends(wq))
        throw Error(ErrorKind::EndpointMismatch, "execution words have different endpoints");
    return word_equal(hda_path_category(k), Path{src, wp}, Path{src, wq});
}

} // namespace ljoyal
