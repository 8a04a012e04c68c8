#include "ljoyal/simplicial_set.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "ljoyal/error.hpp"

namespace ljoyal {

namespace {

void check_dim(int n) {
    if (n < 0 || n > kMaxDim + 1)
        throw Error(ErrorKind::DimensionUnsupported, "dimension " + std::to_string(n) + " out of range");
}

} // namespace

SimplicialSet::Builder::Builder(int dim_cap, std::optional<int> coskeletal_above)
    : cap_(dim_cap), cosk_(coskeletal_above) {
    if (dim_cap < 0 || dim_cap > kMaxDim)
        throw Error(ErrorKind::DimensionUnsupported, "dim_cap " + std::to_string(dim_cap) + " out of range");
    if (cosk_ && (*cosk_ < 0 || *cosk_ > dim_cap))
        throw Error(ErrorKind::InvalidArgument, "coskeletal_above must lie in [0, dim_cap]");
    if (!cosk_)
        finite_ = dim_cap;
    cells_.resize(dim_cap + 1);
    ids_.resize(dim_cap + 1);
}

SimplicialSet::Builder& SimplicialSet::Builder::finite_dim(int n) {
    if (!cosk_ || n < 0 || n > kMaxDim)
        throw Error(ErrorKind::InvalidArgument, "finite_dim needs a coskeletal builder");
    finite_ = n;
    return *this;
}

int SimplicialSet::Builder::add_vertex(std::string id) { return add_cell(0, std::move(id), {}); }

int SimplicialSet::Builder::add_cell(int dim, std::string id, std::vector<Simplex> faces) {
    if (dim < 0 || dim > cap_)
        throw Error(ErrorKind::CapExceeded, "cell '" + id + "' of dimension " + std::to_string(dim) +
                                                " exceeds dim_cap " + std::to_string(cap_));
    if (ids_[dim].count(id))
        throw Error(ErrorKind::DuplicateId, "duplicate id '" + id + "' in dimension " + std::to_string(dim));
    if (int(faces.size()) != (dim == 0 ? 0 : dim + 1))
        throw Error(ErrorKind::NotSimplicial, "cell '" + id + "' needs " + std::to_string(dim + 1) + " faces");
    int index = int(cells_[dim].size());
    ids_[dim].emplace(id, index);
    cells_[dim].push_back(Cell{std::move(id), std::move(faces)});
    return index;
}

std::optional<int> SimplicialSet::Builder::find(int dim, std::string_view id) const {
    if (dim < 0 || dim > cap_)
        return std::nullopt;
    auto it = ids_[dim].find(std::string(id));
    if (it == ids_[dim].end())
        return std::nullopt;
    return it->second;
}

SSetPtr SimplicialSet::Builder::build() && {
    std::shared_ptr<SimplicialSet> out(new SimplicialSet());
    out->cap_ = cap_;
    out->cosk_ = cosk_;
    out->finite_ = finite_;
    for (int n = 0; n <= cap_; ++n) {
        for (const Cell& c : cells_[n]) {
            for (std::size_t i = 0; i < c.faces.size(); ++i) {
                const Simplex& f = c.faces[i];
                nlohmann::json where = {{"dim", n}, {"id", c.id}, {"face", i}};
                if (f.dim != n - 1 || (f.degen >> f.dim) != 0 || f.base_dim() < 0)
                    throw Error(ErrorKind::BadNormalForm, "face " + std::to_string(i) + " of '" + c.id +
                                                              "' is not a valid normal form", where);
                if (f.base < 0 || std::size_t(f.base) >= out->level(f.base_dim()).cells.size())
                    throw Error(ErrorKind::DanglingFace,
                                "face " + std::to_string(i) + " of '" + c.id + "' refers to a missing cell", where);
            }
            for (int j = 1; j < int(c.faces.size()); ++j)
                for (int i = 0; i < j; ++i)
                    if (n >= 2 && out->face(c.faces[j], i) != out->face(c.faces[i], j - 1))
                        throw Error(ErrorKind::SimplicialIdentityViolation,
                                    "d" + std::to_string(i) + "d" + std::to_string(j) + " != d" +
                                        std::to_string(j - 1) + "d" + std::to_string(i) + " on '" + c.id + "'",
                                    {{"dim", n}, {"id", c.id}, {"i", i}, {"j", j}});
        }
        out->add_level(n, std::move(cells_[n]), std::move(ids_[n]));
        out->materialized_.store(n, std::memory_order_release);
    }
    return out;
}

SimplicialSet::~SimplicialSet() = default;

void SimplicialSet::add_level(int n, std::vector<Cell> cells, std::unordered_map<std::string, int> ids) const {
    auto lv = std::make_unique<Level>();
    lv->cells = std::move(cells);
    lv->ids = std::move(ids);
    const std::uint32_t full = (std::uint32_t(1) << (n + 1)) - 1;
    lv->subfaces.resize(lv->cells.size());
    for (std::size_t c = 0; c < lv->cells.size(); ++c) {
        auto& table = lv->subfaces[c];
        table.resize(std::size_t(full) + 1);
        table[full] = Simplex{n, 0, int(c)};
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            int h = 31 - std::countl_zero(~mask & full);
            std::uint32_t low = mask & ((std::uint32_t(1) << h) - 1);
            std::uint32_t reduced = low | ((mask >> (h + 1)) << h);
            int theta[kMaxDim + 2];
            int k = 0;
            for (int v = 0; v < n; ++v)
                if ((reduced >> v) & 1u)
                    theta[k++] = v;
            table[mask] = apply(lv->cells[c].faces[h], std::span<const int>(theta, k));
        }
    }
    levels_[n] = std::move(lv);
}

const SimplicialSet::Level& SimplicialSet::level(int n) const {
    check_dim(n);
    if (n > materialized_.load(std::memory_order_acquire))
        materialize_to(n);
    return *levels_[n];
}

void SimplicialSet::materialize_to(int n) const {
    std::lock_guard lock(mutex_);
    for (int m = materialized_.load() + 1; m <= n; ++m) {
        if (!cosk_ || (finite_ && m > *finite_)) {
            add_level(m, {}, {});
            materialized_.store(m, std::memory_order_release);
            continue;
        }
        // Every compatible sphere not bounding a degenerate simplex becomes a cell.
        std::set<std::vector<Simplex>> degenerate_boundaries;
        for (const Simplex& s : degenerate_simplices(m))
            degenerate_boundaries.insert(boundary(s));
        std::vector<Cell> cells;
        std::unordered_map<std::string, int> ids;
        for_each_sphere(m, [&](const std::vector<Simplex>& sphere) {
            if (degenerate_boundaries.count(sphere))
                return;
            std::string id = "<";
            for (int i = 0; i <= m; ++i) {
                if (i)
                    id += ",";
                id += name(sphere[i]);
            }
            id += ">";
            ids.emplace(id, int(cells.size()));
            cells.push_back(Cell{std::move(id), sphere});
        });
        add_level(m, std::move(cells), std::move(ids));
        materialized_.store(m, std::memory_order_release);
    }
}

std::vector<Simplex> SimplicialSet::degenerate_simplices(int n) const {
    std::vector<Simplex> out;
    for (int p = n - 1; p >= 0; --p) {
        const Level& lv = level(p);
        if (lv.cells.empty())
            continue;
        for (DegenMask mask = 0; mask < (DegenMask(1) << n); ++mask) {
            if (std::popcount(mask) != n - p)
                continue;
            for (int b = 0; b < int(lv.cells.size()); ++b)
                out.push_back(Simplex{n, mask, b});
        }
    }
    return out;
}

const SimplicialSet::Index& SimplicialSet::index(int n) const {
    check_dim(n);
    if (indexed_[n].load(std::memory_order_acquire))
        return *indices_[n];
    std::lock_guard lock(mutex_);
    if (indexed_[n].load())
        return *indices_[n];
    auto idx = std::make_unique<Index>();
    const Level& top = level(n);
    for (int b = 0; b < int(top.cells.size()); ++b)
        idx->all.push_back(Simplex{n, 0, b});
    auto degenerate = degenerate_simplices(n);
    idx->all.insert(idx->all.end(), degenerate.begin(), degenerate.end());
    if (n >= 1)
        for (const Simplex& s : idx->all)
            idx->by_boundary[boundary(s)].push_back(s);
    indices_[n] = std::move(idx);
    indexed_[n].store(true, std::memory_order_release);
    return *indices_[n];
}

std::size_t SimplicialSet::count(int n) const {
    if (n < 0)
        return 0;
    if (n > kMaxDim + 1) {
        if (!cosk_ || (finite_ && n > *finite_))
            return 0;
        check_dim(n);
    }
    return level(n).cells.size();
}

const SimplicialSet::Cell& SimplicialSet::cell(int n, int i) const { return level(n).cells.at(std::size_t(i)); }

std::optional<int> SimplicialSet::find(int n, std::string_view id) const {
    if (n < 0 || n > kMaxDim + 1)
        return std::nullopt;
    const Level& lv = level(n);
    auto it = lv.ids.find(std::string(id));
    if (it == lv.ids.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::size_t> SimplicialSet::cell_counts() const {
    std::vector<std::size_t> out;
    for (int n = 0; n <= cap_; ++n)
        out.push_back(count(n));
    return out;
}

int SimplicialSet::top_dim() const {
    for (int n = cap_; n >= 0; --n)
        if (count(n) > 0)
            return n;
    return -1;
}

Simplex SimplicialSet::subface(const Simplex& base, std::uint32_t vertex_mask) const {
    return level(base.dim).subfaces[std::size_t(base.base)][vertex_mask];
}

Simplex SimplicialSet::apply(const Simplex& s, std::span<const int> theta) const {
    const int k = int(theta.size()) - 1;
    int sigma[kMaxDim + 2];
    sigma[0] = 0;
    for (int i = 0; i < s.dim; ++i)
        sigma[i + 1] = sigma[i] + (((s.degen >> i) & 1u) ? 0 : 1);
    int values[kMaxDim + 2];
    std::uint32_t image = 0;
    for (int t = 0; t <= k; ++t) {
        values[t] = sigma[theta[t]];
        image |= std::uint32_t(1) << values[t];
    }
    DegenMask tau = ops::mask_of(std::span<const int>(values, k + 1));
    Simplex sub = subface(Simplex{s.base_dim(), 0, s.base}, image);
    return Simplex{k, ops::compose(tau, k, sub.degen), sub.base};
}

Simplex SimplicialSet::face(const Simplex& s, int i) const {
    int theta[kMaxDim + 2];
    int k = 0;
    for (int v = 0; v <= s.dim; ++v)
        if (v != i)
            theta[k++] = v;
    return apply(s, std::span<const int>(theta, k));
}

Simplex SimplicialSet::vertex(const Simplex& s, int j) const {
    int theta[1] = {j};
    return apply(s, theta);
}

std::vector<Simplex> SimplicialSet::boundary(const Simplex& s) const {
    std::vector<Simplex> out;
    out.reserve(std::size_t(s.dim) + 1);
    for (int i = 0; i <= s.dim; ++i)
        out.push_back(face(s, i));
    return out;
}

Simplex SimplicialSet::degeneracy(const Simplex& s, int j) {
    return Simplex{s.dim + 1, ops::degeneracy(s.degen, j), s.base};
}

std::span<const Simplex> SimplicialSet::formal_simplices(int n) const { return index(n).all; }

std::span<const Simplex> SimplicialSet::with_boundary(int n, const std::vector<Simplex>& boundary) const {
    const Index& idx = index(n);
    auto it = idx.by_boundary.find(boundary);
    if (it == idx.by_boundary.end())
        return {};
    return it->second;
}

std::string SimplicialSet::name(const Simplex& s) const {
    const std::string& id = cell(s.base_dim(), s.base).id;
    if (!s.degenerate())
        return id;
    std::string out;
    for (int j : ops::word(s.degen))
        out += "s" + std::to_string(j);
    return out + "(" + id + ")";
}

void SimplicialSet::for_each_sphere(int n, const std::function<void(const std::vector<Simplex>&)>& visit) const {
    const Index& prev = index(n - 1);
    std::map<Simplex, std::vector<Simplex>> by_d0;
    if (n >= 2)
        for (const Simplex& s : prev.all)
            by_d0[face(s, 0)].push_back(s);
    std::vector<Simplex> sphere(std::size_t(n) + 1);
    auto rec = [&](auto&& self, int j) -> void {
        if (j > n) {
            visit(sphere);
            return;
        }
        const std::vector<Simplex>* cands = &prev.all;
        if (j >= 1 && n >= 2) {
            auto it = by_d0.find(face(sphere[0], j - 1));
            if (it == by_d0.end())
                return;
            cands = &it->second;
        }
        for (const Simplex& x : *cands) {
            bool ok = true;
            for (int i = 1; i < j && ok && n >= 2; ++i)
                ok = face(x, i) == face(sphere[i], j - 1);
            if (!ok)
                continue;
            sphere[j] = x;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
}

std::optional<int> SimplicialSet::coskeletal_violation() const {
    if (!cosk_)
        return std::nullopt;
    for (int n = *cosk_ + 1; n <= cap_; ++n) {
        bool bad = false;
        for_each_sphere(n, [&](const std::vector<Simplex>& sphere) {
            if (!bad && with_boundary(n, sphere).size() != 1)
                bad = true;
        });
        if (bad)
            return n;
    }
    return std::nullopt;
}

} // namespace ljoyal
