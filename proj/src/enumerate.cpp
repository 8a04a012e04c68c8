#include "ljoyal/enumerate.hpp"

#include <algorithm>

#include "ljoyal/error.hpp"

namespace ljoyal {

MapSearch::MapSearch(SSetPtr source, SSetPtr target, std::uint64_t budget)
    : source_(std::move(source)), target_(std::move(target)), budget_(budget) {
    if (source_->is_finite()) {
        top_ = *source_->finite_dim();
    } else {
        if (!target_->is_coskeletal())
            throw Error(ErrorKind::NotCoskeletal,
                        "maps out of an infinite coskeletal object need a coskeletal target");
        top_ = std::max(source_->dim_cap(), *target_->coskeletal_above());
    }
    pins_.resize(std::size_t(top_) + 1);
    for (int n = 0; n <= top_; ++n)
        pins_[n].resize(source_->count(n));
}

MapSearch& MapSearch::pin(int n, int i, Simplex image) {
    if (n < 0 || n > top_ || i < 0 || i >= int(pins_[n].size()))
        throw Error(ErrorKind::InvalidArgument, "pinned simplex out of range");
    auto& slot = pins_[n][i];
    if (slot && *slot != image)
        slot = Simplex{-1, 0, -1}; // contradictory pins: no map
    else
        slot = image;
    return *this;
}

MapSearch& MapSearch::extend(const SimplicialMap& inclusion, const SimplicialMap& partial) {
    for (int n = 0; n < int(inclusion.images().size()) && n <= top_; ++n)
        for (int j = 0; j < int(inclusion.images()[n].size()); ++j) {
            const Simplex& s = inclusion.image(n, j);
            if (s.degenerate())
                throw Error(ErrorKind::InvalidArgument, "extend needs a monomorphism");
            pin(n, s.base, partial.apply(Simplex{n, 0, j}));
        }
    return *this;
}

MapSearch& MapSearch::over(const SimplicialMap& projection, const SimplicialMap& base) {
    projection_ = projection;
    base_ = base;
    return *this;
}

void MapSearch::plan() {
    order_.clear();
    const int nv = int(source_->count(0));
    std::vector<std::vector<int>> adj(nv);
    if (top_ >= 1)
        for (int e = 0; e < int(source_->count(1)); ++e) {
            int a = source_->vertex(Simplex{1, 0, e}, 0).base;
            int b = source_->vertex(Simplex{1, 0, e}, 1).base;
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    std::vector<int> position(nv, -1);
    std::vector<int> vorder;
    for (int start = 0; start < nv; ++start) {
        if (position[start] >= 0)
            continue;
        position[start] = int(vorder.size());
        vorder.push_back(start);
        for (std::size_t q = vorder.size() - 1; q < vorder.size(); ++q)
            for (int w : adj[vorder[q]])
                if (position[w] < 0) {
                    position[w] = int(vorder.size());
                    vorder.push_back(w);
                }
    }
    // Each simplex goes right after its last vertex, lower dimensions first.
    std::vector<std::vector<Step>> after(nv);
    for (int n = 1; n <= top_; ++n)
        for (int i = 0; i < int(source_->count(n)); ++i) {
            int last = 0;
            for (int j = 0; j <= n; ++j)
                last = std::max(last, position[source_->vertex(Simplex{n, 0, i}, j).base]);
            after[last].push_back(Step{n, i});
        }
    for (int q = 0; q < nv; ++q) {
        order_.push_back(Step{0, vorder[q]});
        order_.insert(order_.end(), after[q].begin(), after[q].end());
    }
}

bool MapSearch::descend(std::size_t step, const std::function<bool(const SimplicialMap&)>& visit) {
    if (step == order_.size())
        return visit(SimplicialMap(source_, target_, images_));
    const auto [n, i] = order_[step];
    const Simplex self{n, 0, i};

    std::vector<Simplex> bd;
    std::span<const Simplex> candidates;
    if (n == 0) {
        candidates = target_->formal_simplices(0);
    } else {
        for (const Simplex& f : source_->cell(n, i).faces)
            bd.push_back(push_forward(f, images_[f.base_dim()][f.base]));
        candidates = target_->with_boundary(n, bd);
    }
    std::optional<Simplex> want_base;
    if (projection_)
        want_base = base_->apply(self);
    const auto& pinned = pins_[n][i];

    for (const Simplex& c : candidates) {
        if (++nodes_ > budget_)
            throw Error(ErrorKind::SearchBudgetExceeded, "map search exceeded " + std::to_string(budget_) + " nodes");
        if (pinned && c != *pinned)
            continue;
        if (want_base && projection_->apply(c) != *want_base)
            continue;
        images_[n][i] = c;
        if (!descend(step + 1, visit))
            return false;
    }
    return true;
}

void MapSearch::run(const std::function<bool(const SimplicialMap&)>& visit) {
    plan();
    images_.assign(std::size_t(top_) + 1, {});
    for (int n = 0; n <= top_; ++n)
        images_[n].assign(source_->count(n), Simplex{n, 0, 0});
    nodes_ = 0;
    descend(0, visit);
}

std::vector<SimplicialMap> MapSearch::all() {
    std::vector<SimplicialMap> out;
    run([&](const SimplicialMap& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

std::optional<SimplicialMap> MapSearch::first() {
    std::optional<SimplicialMap> out;
    run([&](const SimplicialMap& f) {
        out = f;
        return false;
    });
    return out;
}

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& source, const SSetPtr& target, std::uint64_t budget) {
    return MapSearch(source, target, budget).all();
}

} // namespace ljoyal
