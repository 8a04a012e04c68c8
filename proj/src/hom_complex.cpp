#include "ljoyal/hom_complex.hpp"

#include <numeric>

#include "ljoyal/error.hpp"
#include "ljoyal/shapes.hpp"

namespace ljoyal {

namespace {

Simplex cell_image(const Product& from_shape, const SimplicialMap& psi, const Product& shape,
                   std::span<const int> theta, const SimplicialMap* j, int n, int c) {
    const SSetPtr& delta_to = shape.pr1.target();
    const SSetPtr& delta_from = from_shape.pr1.target();
    const Simplex& a = shape.pr1.image(n, c);
    const Simplex& b = shape.pr2.image(n, c);
    int seq[kMaxDim + 1];
    for (int t = 0; t <= n; ++t)
        seq[t] = theta[delta_to->vertex(a, t).base];
    Simplex a2 = shapes::monotone_simplex(delta_from, std::span<const int>(seq, std::size_t(n) + 1));
    Simplex b2 = j ? j->apply(b) : b;
    return psi.apply(from_shape.pair(a2, b2));
}

// psi o (s^j x id) == psi, compared cell by cell with an early exit.
bool factors_through(const Product& shape, const SimplicialMap& psi, int m, int j) {
    std::vector<int> theta(m + 1);
    std::iota(theta.begin(), theta.end(), 0);
    theta[j] = j + 1;
    for (int n = 0; n < int(shape.pr1.images().size()); ++n)
        for (int c = 0; c < int(shape.pr1.images()[n].size()); ++c)
            if (cell_image(shape, psi, shape, theta, nullptr, n, c) != psi.image(n, c))
                return false;
    return true;
}

} // namespace

SimplicialMap HomComplex::precompose(const Product& from_shape, const SimplicialMap& psi, const Product& shape,
                                     std::span<const int> theta, const SimplicialMap* j) {
    std::vector<std::vector<Simplex>> images(shape.pr1.images().size());
    for (std::size_t n = 0; n < images.size(); ++n)
        for (std::size_t c = 0; c < shape.pr1.images()[n].size(); ++c)
            images[n].push_back(cell_image(from_shape, psi, shape, theta, j, int(n), int(c)));
    return SimplicialMap(shape.set, psi.target(), std::move(images));
}

Simplex HomComplex::classify(int m, const SimplicialMap& psi) const {
    DegenMask mask = 0;
    for (int j = 0; j < m; ++j)
        if (factors_through(shapes[m], psi, m, j))
            mask |= DegenMask(1) << j;
    std::vector<int> section;
    for (int t = 0; t <= m; ++t)
        if (t == 0 || !((mask >> (t - 1)) & 1u))
            section.push_back(t);
    int d = int(section.size()) - 1;
    SimplicialMap base = mask ? precompose(shapes[m], psi, shapes[d], section) : psi;
    auto it = (*keys)[d].find(base.key());
    if (it == (*keys)[d].end())
        throw Error(ErrorKind::InvalidArgument, "map is not a simplex of the function complex");
    return Simplex{m, mask, it->second};
}

HomComplex hom_complex(const SSetPtr& k, const SSetPtr& x, int trunc, std::uint64_t budget) {
    if (trunc < 0 || trunc > kMaxDim)
        throw Error(ErrorKind::CapExceeded, "truncation out of range");
    HomComplex h;
    h.source = k;
    h.target = x;
    h.trunc = trunc;
    h.keys = std::make_shared<std::vector<std::unordered_map<std::vector<Simplex>, int, SimplexVectorHash>>>(trunc + 1);
    h.cells.resize(trunc + 1);
    std::optional<int> cosk;
    if (x->is_coskeletal() && *x->coskeletal_above() <= trunc)
        cosk = *x->coskeletal_above();
    SimplicialSet::Builder b(trunc, cosk);
    for (int m = 0; m <= trunc; ++m) {
        h.shapes.push_back(product(shapes::simplex(m), k));
        auto maps = MapSearch(h.shapes[m].set, x, budget).all();
        for (auto& psi : maps) {
            bool degenerate = false;
            for (int j = 0; j < m && !degenerate; ++j)
                degenerate = factors_through(h.shapes[m], psi, m, j);
            if (degenerate)
                continue;
            std::vector<Simplex> faces;
            for (int i = 0; m > 0 && i <= m; ++i) {
                std::vector<int> delta;
                for (int t = 0; t <= m; ++t)
                    if (t != i)
                        delta.push_back(t);
                faces.push_back(h.classify(m - 1, HomComplex::precompose(h.shapes[m], psi, h.shapes[m - 1], delta)));
            }
            std::string id = "[";
            bool first = true;
            for (const auto& level : psi.images())
                for (const Simplex& s : level) {
                    if (!first)
                        id += ",";
                    first = false;
                    id += x->name(s);
                }
            id += "]";
            int idx = b.add_cell(m, std::move(id), std::move(faces));
            (*h.keys)[m].emplace(psi.key(), idx);
            h.cells[m].push_back(std::move(psi));
        }
    }
    h.set = std::move(b).build();
    return h;
}

namespace {

template <class Transform>
SimplicialMap induced(const HomComplex& from, const HomComplex& to, Transform transform) {
    if (from.trunc != to.trunc)
        throw Error(ErrorKind::InvalidArgument, "function complexes truncated at different levels");
    int top = from.trunc;
    std::vector<std::vector<Simplex>> images(top + 1);
    for (int m = 0; m <= top; ++m)
        for (const SimplicialMap& psi : from.cells[m])
            images[m].push_back(to.classify(m, transform(m, psi)));
    return SimplicialMap(from.set, to.set, std::move(images));
}

} // namespace

SimplicialMap post_compose(const HomComplex& from, const HomComplex& to, const SimplicialMap& f) {
    return induced(from, to, [&](int m, const SimplicialMap& psi) {
        SimplicialMap g = compose(f, psi);
        return SimplicialMap(to.shapes[m].set, to.target, g.images());
    });
}

SimplicialMap pre_compose(const HomComplex& from, const HomComplex& to, const SimplicialMap& i) {
    return induced(from, to, [&](int m, const SimplicialMap& psi) {
        std::vector<int> id(m + 1);
        std::iota(id.begin(), id.end(), 0);
        return HomComplex::precompose(from.shapes[m], psi, to.shapes[m], id, &i);
    });
}

} // namespace ljoyal
