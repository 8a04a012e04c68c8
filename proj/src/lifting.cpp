#include "ljoyal/lifting.hpp"

#include "ljoyal/shapes.hpp"

namespace ljoyal {

SimplicialMap terminal_map(const SSetPtr& x) {
    std::vector<std::vector<Simplex>> images(std::size_t(x->mapped_dim()) + 1);
    for (int n = 0; n <= x->mapped_dim(); ++n)
        images[n].assign(x->count(n), Simplex{n, (DegenMask(1) << n) - 1, 0});
    return SimplicialMap(x, shapes::simplex(0), std::move(images));
}

std::vector<Square> squares(const SimplicialMap& i, const SimplicialMap& p, std::uint64_t budget) {
    std::vector<Square> out;
    MapSearch(i.target(), p.target(), budget).run([&](const SimplicialMap& bottom) {
        SimplicialMap restricted = compose(bottom, i);
        MapSearch(i.source(), p.source(), budget).over(p, restricted).run([&](const SimplicialMap& top) {
            out.push_back(Square{top, bottom});
            return true;
        });
        return true;
    });
    return out;
}

std::optional<SimplicialMap> lift(const SimplicialMap& i, const SimplicialMap& p, const Square& sq,
                                  std::uint64_t budget) {
    return MapSearch(i.target(), p.source(), budget).extend(i, sq.top).over(p, sq.bottom).first();
}

std::optional<Square> unliftable_square(const SimplicialMap& i, const SimplicialMap& p, std::uint64_t budget) {
    std::optional<Square> bad;
    MapSearch(i.target(), p.target(), budget).run([&](const SimplicialMap& bottom) {
        SimplicialMap restricted = compose(bottom, i);
        MapSearch(i.source(), p.source(), budget).over(p, restricted).run([&](const SimplicialMap& top) {
            Square sq{top, bottom};
            if (!lift(i, p, sq, budget))
                bad = sq;
            return !bad;
        });
        return !bad;
    });
    return bad;
}

std::optional<SimplicialMap> unextendable(const SimplicialMap& i, const SSetPtr& x, std::uint64_t budget) {
    std::optional<SimplicialMap> bad;
    MapSearch(i.source(), x, budget).run([&](const SimplicialMap& top) {
        if (!MapSearch(i.target(), x, budget).extend(i, top).exists())
            bad = top;
        return !bad;
    });
    return bad;
}

} // namespace ljoyal
