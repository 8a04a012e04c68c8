#include "ljoyal/shapes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <map>
#include <mutex>

#include "ljoyal/error.hpp"

namespace ljoyal::shapes {

std::string face_id(std::uint32_t mask, int n) {
    std::string id;
    for (int v = 0; v <= n; ++v)
        if ((mask >> v) & 1u) {
            if (n >= 10 && !id.empty())
                id += ".";
            id += std::to_string(v);
        }
    return id;
}

namespace {

std::vector<int> vertices_of(std::uint32_t m) {
    std::vector<int> out;
    for (int v = 0; v < 32; ++v)
        if ((m >> v) & 1u)
            out.push_back(v);
    return out;
}

// Vertex subsets of [n] accepted by `keep`; faces drop one vertex.
SSetPtr subcomplex(int n, int cap, std::optional<int> cosk, std::optional<int> finite,
                   const std::function<bool(std::uint32_t)>& keep) {
    SimplicialSet::Builder b(std::max(cap, 0), cosk);
    if (finite)
        b.finite_dim(*finite);
    for (int k = 0; k <= cap; ++k) {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 1; m < (std::uint32_t(1) << (n + 1)); ++m)
            if (std::popcount(m) == k + 1 && keep(m))
                masks.push_back(m);
        std::sort(masks.begin(), masks.end(),
                  [](std::uint32_t a, std::uint32_t c) { return vertices_of(a) < vertices_of(c); });
        for (std::uint32_t m : masks) {
            std::vector<Simplex> faces;
            if (k > 0)
                for (int v : vertices_of(m))
                    faces.push_back(Simplex{k - 1, 0, *b.find(k - 1, face_id(m & ~(std::uint32_t(1) << v), n))});
            b.add_cell(k, face_id(m, n), std::move(faces));
        }
    }
    return std::move(b).build();
}

template <class Make>
SSetPtr cached(int key_a, int key_b, Make make) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, SSetPtr> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{key_a, key_b}];
    if (!slot)
        slot = make();
    return slot;
}

void check_n(int n, int lo) {
    if (n < lo || n > kMaxDim)
        throw Error(ErrorKind::DimensionUnsupported, "shape dimension " + std::to_string(n) + " out of range");
}

// Alternating 0/1 strings: the nondegenerate simplices of the nerve of the
// free-standing isomorphism.
SSetPtr interval_impl(int cap, bool coskeletal) {
    std::optional<int> cosk;
    if (coskeletal)
        cosk = std::min(cap, 2);
    SimplicialSet::Builder b(cap, cosk);
    auto collapse = [&](const std::string& seq) {
        std::vector<int> values;
        std::string base;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            values.push_back(int(base.size()) - (i > 0 && seq[i] == seq[i - 1] ? 1 : 0));
            if (i == 0 || seq[i] != seq[i - 1])
                base += seq[i];
        }
        int bdim = int(base.size()) - 1;
        return Simplex{int(seq.size()) - 1, ops::mask_of(values), *b.find(bdim, base)};
    };
    for (int m = 0; m <= cap; ++m)
        for (char start : {'0', '1'}) {
            std::string id;
            for (int i = 0; i <= m; ++i)
                id += char(start ^ (i & 1));
            std::vector<Simplex> faces;
            if (m > 0)
                for (int i = 0; i <= m; ++i)
                    faces.push_back(collapse(id.substr(0, i) + id.substr(i + 1)));
            b.add_cell(m, id, std::move(faces));
        }
    return std::move(b).build();
}

} // namespace

SSetPtr simplex(int n) {
    check_n(n, 0);
    return cached(0, n, [n] { return subcomplex(n, n, std::min(n, 1), n, [](std::uint32_t) { return true; }); });
}

SSetPtr boundary(int n) {
    check_n(n, 0);
    return cached(1, n, [n] {
        std::uint32_t full = (std::uint32_t(1) << (n + 1)) - 1;
        return subcomplex(n, n - 1, std::nullopt, std::nullopt, [full](std::uint32_t m) { return m != full; });
    });
}

SSetPtr horn(int n, int k) {
    check_n(n, 1);
    if (k < 0 || k > n)
        throw Error(ErrorKind::InvalidArgument, "horn index out of range");
    return cached(2 + k, n, [n, k] {
        std::uint32_t full = (std::uint32_t(1) << (n + 1)) - 1;
        std::uint32_t missing = full & ~(std::uint32_t(1) << k);
        return subcomplex(n, n - 1, std::nullopt, std::nullopt,
                          [full, missing](std::uint32_t m) { return m != full && m != missing; });
    });
}

SSetPtr interval(int cap) {
    check_n(cap, 0);
    return cached(-1, cap, [cap] { return interval_impl(cap, true); });
}

SSetPtr interval_skeleton(int cap) {
    check_n(cap, 0);
    return cached(-2, cap, [cap] { return interval_impl(cap, false); });
}

SimplicialMap inclusion_by_ids(const SSetPtr& sub, const SSetPtr& whole) {
    std::vector<std::vector<Simplex>> images(std::size_t(sub->mapped_dim()) + 1);
    for (int n = 0; n <= sub->mapped_dim(); ++n)
        for (int i = 0; i < int(sub->count(n)); ++i) {
            auto j = whole->find(n, sub->cell(n, i).id);
            if (!j)
                throw Error(ErrorKind::InvalidArgument, "no simplex '" + sub->cell(n, i).id + "' in target");
            images[n].push_back(Simplex{n, 0, *j});
        }
    return SimplicialMap(sub, whole, std::move(images));
}

namespace {

// Index of the face with a given vertex mask, per standard simplex.
const std::vector<int>& face_index(const SSetPtr& delta_n, int n) {
    static std::mutex mutex;
    static std::map<const SimplicialSet*, std::vector<int>> tables;
    std::lock_guard lock(mutex);
    auto& table = tables[delta_n.get()];
    if (table.empty()) {
        table.assign(std::size_t(1) << (n + 1), -1);
        for (std::uint32_t m = 1; m < table.size(); ++m)
            if (auto i = delta_n->find(std::popcount(m) - 1, face_id(m, n)))
                table[m] = *i;
    }
    return table;
}

} // namespace

Simplex monotone_simplex(const SSetPtr& delta_n, std::span<const int> values) {
    int n = delta_n->top_dim();
    std::uint32_t mask = 0;
    for (int v : values) {
        if (v < 0 || v > n)
            throw Error(ErrorKind::InvalidArgument, "vertex sequence outside the simplex");
        mask |= std::uint32_t(1) << v;
    }
    int base = delta_n == simplex(n) ? face_index(delta_n, n)[mask] : -1;
    if (base < 0) {
        auto found = delta_n->find(std::popcount(mask) - 1, face_id(mask, n));
        if (!found)
            throw Error(ErrorKind::InvalidArgument, "vertex sequence outside the simplex");
        base = *found;
    }
    return Simplex{int(values.size()) - 1, ops::mask_of(values), base};
}

std::string ShapeSpec::to_string() const {
    switch (kind) {
    case Kind::simplex: return "simplex:" + std::to_string(n);
    case Kind::boundary: return "boundary:" + std::to_string(n);
    case Kind::horn: return "horn:" + std::to_string(n) + "," + std::to_string(k);
    case Kind::interval: return "interval";
    }
    return "";
}

ShapeSpec parse_shape(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::Parse, "bad shape '" + std::string(text) + "'"); };
    auto number = [&](std::string_view s) {
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw bad();
        return v;
    };
    if (text == "interval")
        return ShapeSpec{Kind::interval, 1, 0};
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw bad();
    std::string_view head = text.substr(0, colon), rest = text.substr(colon + 1);
    ShapeSpec spec;
    if (head == "simplex") {
        spec = {Kind::simplex, number(rest), 0};
    } else if (head == "boundary") {
        spec = {Kind::boundary, number(rest), 0};
    } else if (head == "horn") {
        auto comma = rest.find(',');
        if (comma == std::string_view::npos)
            throw bad();
        spec = {Kind::horn, number(rest.substr(0, comma)), number(rest.substr(comma + 1))};
        if (spec.n < 1 || spec.k < 0 || spec.k > spec.n)
            throw bad();
    } else {
        throw bad();
    }
    if (spec.n < 0 || spec.n > kMaxDim)
        throw bad();
    return spec;
}

SSetPtr standard_shape(const ShapeSpec& spec) {
    switch (spec.kind) {
    case Kind::simplex: return simplex(spec.n);
    case Kind::boundary: return boundary(spec.n);
    case Kind::horn: return horn(spec.n, spec.k);
    case Kind::interval: return interval();
    }
    throw Error(ErrorKind::InvalidArgument, "unknown shape");
}

SimplicialMap standard_inclusion(const ShapeSpec& spec) {
    switch (spec.kind) {
    case Kind::simplex: return SimplicialMap::identity(simplex(spec.n));
    case Kind::boundary: return inclusion_by_ids(boundary(spec.n), simplex(spec.n));
    case Kind::horn: return inclusion_by_ids(horn(spec.n, spec.k), simplex(spec.n));
    case Kind::interval: break;
    }
    throw Error(ErrorKind::InvalidArgument, "the interval has no standard inclusion");
}

} // namespace ljoyal::shapes
