#include "ljoyal/product.hpp"

#include <algorithm>
#include <bit>

#include "ljoyal/error.hpp"

namespace ljoyal {

namespace {

// Removes the positions in `common` from `mask` and reindexes the rest.
DegenMask collapse(DegenMask mask, DegenMask common, int dim) {
    DegenMask out = 0;
    int k = 0;
    for (int t = 0; t < dim; ++t) {
        if ((common >> t) & 1u)
            continue;
        if ((mask >> t) & 1u)
            out |= DegenMask(1) << k;
        ++k;
    }
    return out;
}

Product build(const SSetPtr& x, const SSetPtr& y, const SimplicialMap* f, const SimplicialMap* g) {
    int cap;
    std::optional<int> cosk;
    std::optional<int> finite;
    if (x->is_finite() && y->is_finite()) {
        cap = *x->finite_dim() + *y->finite_dim();
        if (x->is_coskeletal() && y->is_coskeletal()) {
            cosk = std::max(*x->coskeletal_above(), *y->coskeletal_above());
            finite = cap;
        }
    } else if (x->is_coskeletal() && y->is_coskeletal()) {
        cosk = std::max(*x->coskeletal_above(), *y->coskeletal_above());
        cap = std::max(std::min(x->dim_cap(), y->dim_cap()), *cosk);
    } else {
        throw Error(ErrorKind::CapExceeded,
                    "product of an unbounded coskeletal object with a non-coskeletal one is not representable");
    }
    if (cap > kMaxDim)
        throw Error(ErrorKind::CapExceeded, "product dimension " + std::to_string(cap) + " exceeds the supported range");
    if (cosk)
        cosk = std::min(*cosk, cap);

    SimplicialSet::Builder b(cap, cosk);
    if (finite && cosk)
        b.finite_dim(*finite);
    auto table = std::make_shared<std::vector<std::map<std::pair<Simplex, Simplex>, int>>>(cap + 1);
    std::vector<std::vector<std::pair<Simplex, Simplex>>> cells(cap + 1);

    auto lookup = [&](const Simplex& a, const Simplex& c) {
        DegenMask common = a.degen & c.degen;
        int d = a.dim - std::popcount(common);
        Simplex a2{d, collapse(a.degen, common, a.dim), a.base};
        Simplex c2{d, collapse(c.degen, common, c.dim), c.base};
        return Simplex{a.dim, common, (*table)[d].at({a2, c2})};
    };

    for (int n = 0; n <= cap; ++n) {
        auto xs = x->formal_simplices(n);
        auto ys = y->formal_simplices(n);
        std::map<Simplex, std::vector<Simplex>> by_image;
        for (const Simplex& c : ys)
            by_image[g ? g->apply(c) : Simplex{}].push_back(c);
        for (const Simplex& a : xs) {
            auto it = by_image.find(f ? f->apply(a) : Simplex{});
            if (it == by_image.end())
                continue;
            for (const Simplex& c : it->second) {
                if (a.degen & c.degen)
                    continue;
                std::vector<Simplex> faces;
                if (n > 0)
                    for (int i = 0; i <= n; ++i)
                        faces.push_back(lookup(x->face(a, i), y->face(c, i)));
                std::string id = "(" + x->name(a) + "," + y->name(c) + ")";
                int idx = b.add_cell(n, std::move(id), std::move(faces));
                (*table)[n].emplace(std::pair{a, c}, idx);
                cells[n].emplace_back(a, c);
            }
        }
    }
    SSetPtr set = std::move(b).build();
    std::vector<std::vector<Simplex>> im1(cap + 1), im2(cap + 1);
    for (int n = 0; n <= cap; ++n)
        for (const auto& [a, c] : cells[n]) {
            im1[n].push_back(a);
            im2[n].push_back(c);
        }
    Product out;
    out.set = set;
    out.pr1 = SimplicialMap(set, x, std::move(im1));
    out.pr2 = SimplicialMap(set, y, std::move(im2));
    out.table = table;
    return out;
}

} // namespace

Simplex Product::pair(const Simplex& a, const Simplex& b) const {
    DegenMask common = a.degen & b.degen;
    int d = a.dim - std::popcount(common);
    Simplex a2{d, collapse(a.degen, common, a.dim), a.base};
    Simplex b2{d, collapse(b.degen, common, b.dim), b.base};
    if (d < int(table->size())) {
        auto it = (*table)[d].find({a2, b2});
        if (it == (*table)[d].end())
            throw Error(ErrorKind::InvalidArgument, "pair is not a simplex of the product");
        return Simplex{a.dim, common, it->second};
    }
    // Above the stored cap of a coskeletal product: locate by boundary.
    std::vector<Simplex> bd;
    for (int i = 0; i <= d; ++i)
        bd.push_back(pair(pr1.target()->face(a2, i), pr2.target()->face(b2, i)));
    auto fillers = set->with_boundary(d, bd);
    if (fillers.size() != 1)
        throw Error(ErrorKind::NotCoskeletal, "pair above the cap is not determined by its boundary");
    return push_forward(Simplex{a.dim, common, 0}, fillers[0]);
}

Product product(const SSetPtr& x, const SSetPtr& y) { return build(x, y, nullptr, nullptr); }

Product pullback(const SimplicialMap& f, const SimplicialMap& g) {
    if (f.target() != g.target())
        throw Error(ErrorKind::InvalidArgument, "pullback needs maps with a common target");
    return build(f.source(), g.source(), &f, &g);
}

} // namespace ljoyal
