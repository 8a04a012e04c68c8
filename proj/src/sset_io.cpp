#include "ljoyal/sset_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ljoyal/error.hpp"

namespace ljoyal {

ojson formal_to_json(const SimplicialSet& x, const Simplex& s) {
    ojson j;
    j["degens"] = ops::word(s.degen);
    j["base"] = x.cell(s.base_dim(), s.base).id;
    return j;
}

namespace {

DegenMask degens_from_json(const nlohmann::json& j, int dim) {
    if (!j.is_object() || !j.contains("base") || !j["base"].is_string())
        throw Error(ErrorKind::Parse, "formal simplex needs a string 'base'");
    DegenMask mask = 0;
    int last = dim;
    if (j.contains("degens")) {
        if (!j["degens"].is_array())
            throw Error(ErrorKind::Parse, "'degens' must be an array");
        for (const auto& e : j["degens"]) {
            if (!e.is_number_integer())
                throw Error(ErrorKind::Parse, "degeneracy indices are integers");
            int v = e.get<int>();
            if (v < 0 || v >= last)
                throw Error(ErrorKind::BadNormalForm, "degeneracy word must be strictly decreasing and below the dimension",
                            {{"degens", j["degens"]}, {"dim", dim}});
            mask |= DegenMask(1) << v;
            last = v;
        }
    }
    return mask;
}

std::string require_string(const nlohmann::json& j, const char* what) {
    if (!j.is_string())
        throw Error(ErrorKind::Parse, std::string(what) + " must be a string");
    return j.get<std::string>();
}

} // namespace

Simplex formal_from_json(const SimplicialSet& x, int dim, const nlohmann::json& j) {
    DegenMask mask = degens_from_json(j, dim);
    Simplex s{dim, mask, 0};
    std::string base = j["base"].get<std::string>();
    auto idx = x.find(s.base_dim(), base);
    if (!idx)
        throw Error(ErrorKind::DanglingFace, "no " + std::to_string(s.base_dim()) + "-simplex '" + base + "'",
                    {{"base", base}, {"dim", s.base_dim()}});
    s.base = *idx;
    return s;
}

ojson sset_to_json(const SimplicialSet& x) {
    ojson j;
    j["dim_cap"] = x.dim_cap();
    if (x.coskeletal_above())
        j["coskeletal_above"] = *x.coskeletal_above();
    else
        j["coskeletal_above"] = nullptr;
    if (x.is_coskeletal() && x.finite_dim())
        j["finite_dim"] = *x.finite_dim();
    ojson cells = ojson::object();
    for (int n = 0; n <= x.dim_cap(); ++n) {
        ojson level = ojson::array();
        for (int i = 0; i < int(x.count(n)); ++i) {
            const auto& c = x.cell(n, i);
            if (n == 0) {
                level.push_back(c.id);
                continue;
            }
            ojson cell;
            cell["id"] = c.id;
            ojson faces = ojson::array();
            for (const Simplex& f : c.faces)
                faces.push_back(formal_to_json(x, f));
            cell["faces"] = std::move(faces);
            level.push_back(std::move(cell));
        }
        cells[std::to_string(n)] = std::move(level);
    }
    j["cells"] = std::move(cells);
    return j;
}

SSetPtr sset_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim_cap") || !j["dim_cap"].is_number_integer())
        throw Error(ErrorKind::Parse, "simplicial set needs an integer 'dim_cap'");
    int cap = j["dim_cap"].get<int>();
    std::optional<int> cosk;
    if (j.contains("coskeletal_above") && !j["coskeletal_above"].is_null()) {
        if (!j["coskeletal_above"].is_number_integer())
            throw Error(ErrorKind::Parse, "'coskeletal_above' must be an integer or null");
        cosk = j["coskeletal_above"].get<int>();
    }
    SimplicialSet::Builder b(cap, cosk);
    if (j.contains("finite_dim")) {
        if (!j["finite_dim"].is_number_integer())
            throw Error(ErrorKind::Parse, "'finite_dim' must be an integer");
        b.finite_dim(j["finite_dim"].get<int>());
    }
    const auto& cells = j.contains("cells") ? j["cells"] : nlohmann::json::object();
    if (!cells.is_object())
        throw Error(ErrorKind::Parse, "'cells' must be an object");
    for (auto it = cells.begin(); it != cells.end(); ++it) {
        int n = -1;
        try {
            n = std::stoi(it.key());
        } catch (...) {
        }
        if (n < 0 || std::to_string(n) != it.key())
            throw Error(ErrorKind::Parse, "cell dimension keys are natural numbers");
        if (n > cap && !it.value().empty())
            throw Error(ErrorKind::CapExceeded, "cells of dimension " + it.key() + " exceed dim_cap");
    }
    for (int n = 0; n <= cap; ++n) {
        auto key = std::to_string(n);
        if (!cells.contains(key))
            continue;
        if (!cells[key].is_array())
            throw Error(ErrorKind::Parse, "cells[" + key + "] must be an array");
        for (const auto& c : cells[key]) {
            if (n == 0) {
                b.add_vertex(require_string(c, "vertex id"));
                continue;
            }
            if (!c.is_object() || !c.contains("id") || !c.contains("faces") || !c["faces"].is_array())
                throw Error(ErrorKind::Parse, "cells need 'id' and 'faces'");
            std::string id = require_string(c["id"], "cell id");
            std::vector<Simplex> faces;
            for (const auto& f : c["faces"]) {
                DegenMask mask = degens_from_json(f, n - 1);
                Simplex s{n - 1, mask, 0};
                std::string base = f["base"].get<std::string>();
                auto idx = b.find(s.base_dim(), base);
                if (!idx)
                    throw Error(ErrorKind::DanglingFace, "face of '" + id + "' refers to missing '" + base + "'",
                                {{"cell", id}, {"base", base}});
                s.base = *idx;
                faces.push_back(s);
            }
            b.add_cell(n, std::move(id), std::move(faces));
        }
    }
    SSetPtr x = std::move(b).build();
    if (auto bad = x->coskeletal_violation())
        throw Error(ErrorKind::NotCoskeletal,
                    "boundaries in dimension " + std::to_string(*bad) + " do not determine their fillers",
                    {{"dim", *bad}});
    return x;
}

ojson map_to_json(const SimplicialMap& f) {
    ojson j = ojson::object();
    for (int n = 0; n < int(f.images().size()); ++n) {
        ojson level = ojson::object();
        for (int i = 0; i < int(f.images()[n].size()); ++i)
            level[f.source()->cell(n, i).id] = formal_to_json(*f.target(), f.image(n, i));
        j[std::to_string(n)] = std::move(level);
    }
    return j;
}

SimplicialMap map_from_json(const SSetPtr& source, const SSetPtr& target, const nlohmann::json& j) {
    if (!j.is_object())
        throw Error(ErrorKind::Parse, "map table must be an object");
    const int top = source->mapped_dim();
    std::vector<std::vector<Simplex>> images(top + 1);
    for (int n = 0; n <= top; ++n) {
        auto key = std::to_string(n);
        for (int i = 0; i < int(source->count(n)); ++i) {
            const std::string& id = source->cell(n, i).id;
            if (!j.contains(key) || !j[key].contains(id))
                throw Error(ErrorKind::NotSimplicial, "map table misses " + key + "-simplex '" + id + "'");
            images[n].push_back(formal_from_json(*target, n, j[key][id]));
        }
    }
    SimplicialMap f(source, target, std::move(images));
    if (auto bad = f.simplicial_violation())
        throw Error(ErrorKind::NotSimplicial,
                    "map does not commute with faces at '" + source->cell(bad->first, bad->second).id + "'",
                    {{"dim", bad->first}, {"id", source->cell(bad->first, bad->second).id}});
    return f;
}

ojson presentation_to_json(const FpCategory& c) {
    ojson out;
    out["objects"] = c.objects();
    ojson gens = ojson::array();
    for (std::size_t g = 0; g < c.generators().size(); ++g) {
        const auto& gen = c.generators()[g];
        ojson e = {{"id", gen.id}, {"src", c.objects()[gen.src]}, {"tgt", c.objects()[gen.tgt]}};
        if (!c.inverse_of.empty())
            e["inverse"] = c.generators()[c.inverse_of[g]].id;
        gens.push_back(std::move(e));
    }
    out["generators"] = std::move(gens);
    auto ids = [&](const Word& w) {
        ojson a = ojson::array();
        for (int g : w)
            a.push_back(c.generators()[g].id);
        return a;
    };
    ojson rels = ojson::array();
    for (const auto& r : c.relations()) {
        ojson pair = ojson::array({ids(r.lhs.word), ids(r.rhs)});
        if (r.lhs.word.empty() && r.rhs.empty())
            pair.push_back(c.objects()[r.lhs.src]);
        rels.push_back(std::move(pair));
    }
    out["relations"] = std::move(rels);
    return out;
}

FpCategory presentation_from_json(const nlohmann::json& j) {
    auto text = [](const nlohmann::json& v, const char* what) {
        if (!v.is_string())
            throw Error(ErrorKind::Parse, std::string(what) + " must be a string");
        return v.get<std::string>();
    };
    if (!j.is_object() || !j.contains("objects") || !j["objects"].is_array())
        throw Error(ErrorKind::Parse, "presentation needs an 'objects' array");
    std::vector<std::string> objects;
    for (const auto& o : j["objects"]) {
        objects.push_back(text(o, "object"));
        for (std::size_t p = 0; p + 1 < objects.size(); ++p)
            if (objects[p] == objects.back())
                throw Error(ErrorKind::DuplicateId, "duplicate object '" + objects.back() + "'");
    }
    auto object = [&](const nlohmann::json& v) {
        std::string id = text(v, "endpoint");
        for (std::size_t o = 0; o < objects.size(); ++o)
            if (objects[o] == id)
                return int(o);
        throw Error(ErrorKind::DanglingFace, "unknown object '" + id + "'");
    };
    std::vector<FpCategory::Generator> gens;
    std::vector<std::string> inverse_ids;
    const auto& gj = j.contains("generators") ? j["generators"] : nlohmann::json::array();
    if (!gj.is_array())
        throw Error(ErrorKind::Parse, "'generators' must be an array");
    for (const auto& g : gj) {
        if (!g.is_object() || !g.contains("id") || !g.contains("src") || !g.contains("tgt"))
            throw Error(ErrorKind::Parse, "generators need 'id', 'src' and 'tgt'");
        gens.push_back({text(g["id"], "generator id"), object(g["src"]), object(g["tgt"])});
        for (std::size_t p = 0; p + 1 < gens.size(); ++p)
            if (gens[p].id == gens.back().id)
                throw Error(ErrorKind::DuplicateId, "duplicate generator '" + gens.back().id + "'");
        inverse_ids.push_back(g.contains("inverse") ? text(g["inverse"], "inverse") : "");
    }
    auto generator = [&](const nlohmann::json& v) {
        std::string id = text(v, "generator reference");
        for (std::size_t g = 0; g < gens.size(); ++g)
            if (gens[g].id == id)
                return int(g);
        throw Error(ErrorKind::DanglingFace, "unknown generator '" + id + "'");
    };
    std::vector<FpCategory::Relation> rels;
    const auto& rj = j.contains("relations") ? j["relations"] : nlohmann::json::array();
    if (!rj.is_array())
        throw Error(ErrorKind::Parse, "'relations' must be an array");
    for (const auto& r : rj) {
        if (!r.is_array() || r.size() < 2 || r.size() > 3 || !r[0].is_array() || !r[1].is_array())
            throw Error(ErrorKind::Parse, "relations are [[lhs ids], [rhs ids]] pairs");
        Word lhs, rhs;
        for (const auto& g : r[0])
            lhs.push_back(generator(g));
        for (const auto& g : r[1])
            rhs.push_back(generator(g));
        int src = 0;
        if (!lhs.empty())
            src = gens[lhs[0]].src;
        else if (!rhs.empty())
            src = gens[rhs[0]].src;
        else if (r.size() == 3)
            src = object(r[2]);
        rels.push_back({Path{src, std::move(lhs)}, std::move(rhs)});
    }
    FpCategory c(std::move(objects), std::move(gens), std::move(rels));
    if (std::any_of(inverse_ids.begin(), inverse_ids.end(), [](const std::string& s) { return !s.empty(); })) {
        c.inverse_of.resize(inverse_ids.size());
        for (std::size_t g = 0; g < inverse_ids.size(); ++g) {
            auto found = c.find_generator(inverse_ids[g]);
            if (!found)
                throw Error(ErrorKind::DanglingFace, "unknown inverse '" + inverse_ids[g] + "'");
            int inv = *found;
            const auto& a = c.generators()[g];
            const auto& b = c.generators()[inv];
            if (a.src != b.tgt || a.tgt != b.src)
                throw Error(ErrorKind::EndpointMismatch, "inverse of '" + a.id + "' has the wrong endpoints");
            c.inverse_of[g] = inv;
        }
    }
    return c;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
    }
}

} // namespace ljoyal
