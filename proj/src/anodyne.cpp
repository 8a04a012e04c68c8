#include "ljoyal/error.hpp"
#include "ljoyal/parallel.hpp"
#include "ljoyal/quasicat.hpp"
#include "ljoyal/shapes.hpp"

namespace ljoyal {

namespace {

struct Glue {
    int n, k, serial;
    SimplicialMap horn_map;
};

} // namespace

AnodyneStep anodyne_step(const SSetPtr& x, int dim_cap, const std::string& tag, std::uint64_t budget) {
    if (!x->is_finite())
        throw Error(ErrorKind::InvalidArgument, "the anodyne step needs a finite simplicial set");
    if (dim_cap < 2 || dim_cap > kMaxDim)
        throw Error(ErrorKind::InvalidArgument, "dim_cap must lie in 2.." + std::to_string(kMaxDim));
    AnodyneStep out;
    std::vector<std::pair<int, int>> horns;
    for (int n = 2; n <= dim_cap; ++n)
        for (int k = 1; k < n; ++k)
            horns.push_back({n, k});
    auto found = parallel_map(horns.size(), [&](std::size_t h) {
        auto [n, k] = horns[h];
        SimplicialMap incl = shapes::standard_inclusion({shapes::Kind::horn, n, k});
        std::vector<SimplicialMap> open;
        int total = 0;
        MapSearch(incl.source(), x, budget).run([&](const SimplicialMap& m) {
            ++total;
            if (!MapSearch(incl.target(), x, budget).extend(incl, m).exists())
                open.push_back(m);
            return true;
        });
        return std::pair{total, std::move(open)};
    });
    std::vector<Glue> glue;
    for (std::size_t h = 0; h < horns.size(); ++h) {
        out.horn_maps += found[h].first;
        int serial = 0;
        for (auto& m : found[h].second)
            glue.push_back({horns[h].first, horns[h].second, serial++, std::move(m)});
    }
    out.glued = int(glue.size());

    int cap = *x->finite_dim();
    for (const Glue& g : glue)
        cap = std::max(cap, g.n);
    SimplicialSet::Builder b(cap);
    for (int d = 0; d <= cap; ++d) {
        for (int i = 0; d <= *x->finite_dim() && i < int(x->count(d)); ++i)
            b.add_cell(d, x->cell(d, i).id, x->cell(d, i).faces);
        for (const Glue& g : glue) {
            if (d != g.n - 1 && d != g.n)
                continue;
            const SSetPtr& horn = g.horn_map.source();
            const std::uint32_t full = (std::uint32_t(1) << (g.n + 1)) - 1;
            const std::uint32_t missing = full & ~(std::uint32_t(1) << g.k);
            const std::string base_id = tag + ":" + std::to_string(g.n) + "." + std::to_string(g.k) + "." +
                                        std::to_string(g.serial);
            auto image_of = [&](std::uint32_t mask, int dim) {
                return g.horn_map.apply(Simplex{dim, 0, *horn->find(dim, shapes::face_id(mask, g.n))});
            };
            std::vector<Simplex> faces;
            if (d == g.n - 1) {
                // the missing face d_k
                for (int v = 0; v <= g.n; ++v)
                    if (v != g.k)
                        faces.push_back(image_of(missing & ~(std::uint32_t(1) << v), g.n - 2));
                b.add_cell(d, base_id + "/d" + std::to_string(g.k), std::move(faces));
            } else {
                for (int v = 0; v <= g.n; ++v) {
                    if (v == g.k)
                        faces.push_back(Simplex{g.n - 1, 0, *b.find(g.n - 1, base_id + "/d" + std::to_string(g.k))});
                    else
                        faces.push_back(image_of(full & ~(std::uint32_t(1) << v), g.n - 1));
                }
                b.add_cell(d, base_id, std::move(faces));
            }
        }
    }
    out.set = std::move(b).build();
    std::vector<std::vector<Simplex>> images(std::size_t(*x->finite_dim()) + 1);
    for (int d = 0; d <= *x->finite_dim(); ++d)
        for (int i = 0; i < int(x->count(d)); ++i)
            images[d].push_back(Simplex{d, 0, i});
    out.inclusion = SimplicialMap(x, out.set, std::move(images));
    return out;
}

FibrantApprox fibrant_approx(const SSetPtr& x, int steps, int dim_cap, std::uint64_t budget) {
    if (steps < 1)
        throw Error(ErrorKind::InvalidArgument, "at least one step is required");
    FibrantApprox out;
    out.steps = steps;
    out.dim_cap = dim_cap;
    out.set = x;
    out.inclusion = SimplicialMap::identity(x);
    for (int s = 1; s <= steps; ++s) {
        AnodyneStep step = anodyne_step(out.set, dim_cap, "e" + std::to_string(s), budget);
        out.inclusion = compose(step.inclusion, out.inclusion);
        out.set = step.set;
        out.glued.push_back(step.glued);
    }
    return out;
}

} // namespace ljoyal
