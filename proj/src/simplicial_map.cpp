#include "ljoyal/simplicial_map.hpp"

#include <set>

#include "ljoyal/error.hpp"

namespace ljoyal {

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Simplex>> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

SimplicialMap SimplicialMap::identity(const SSetPtr& x) {
    std::vector<std::vector<Simplex>> images(std::size_t(x->mapped_dim()) + 1);
    for (int n = 0; n <= x->mapped_dim(); ++n)
        for (int i = 0; i < int(x->count(n)); ++i)
            images[n].push_back(Simplex{n, 0, i});
    return SimplicialMap(x, x, std::move(images));
}

Simplex push_forward(const Simplex& s, const Simplex& image_of_base) {
    return Simplex{s.dim, ops::compose(s.degen, s.dim, image_of_base.degen), image_of_base.base};
}

Simplex SimplicialMap::apply(const Simplex& s) const {
    const int p = s.base_dim();
    if (p < int(images_.size()))
        return push_forward(s, images_[p][s.base]);
    // An implied simplex of a coskeletal source: its image is the unique
    // filler of the image of its boundary.
    std::vector<Simplex> bd;
    for (const Simplex& f : source_->cell(p, s.base).faces)
        bd.push_back(apply(f));
    auto fillers = target_->with_boundary(p, bd);
    if (fillers.size() != 1)
        throw Error(ErrorKind::NotCoskeletal, "image of an implied " + std::to_string(p) +
                                                  "-simplex is not determined by its boundary");
    return push_forward(s, fillers[0]);
}

std::optional<std::pair<int, int>> SimplicialMap::simplicial_violation() const {
    for (int n = 0; n < int(images_.size()); ++n)
        for (int i = 0; i < int(images_[n].size()); ++i) {
            const Simplex& img = images_[n][i];
            if (img.dim != n || img.base_dim() < 0 || img.base < 0 ||
                std::size_t(img.base) >= target_->count(img.base_dim()))
                return std::pair{n, i};
            if (n == 0)
                continue;
            const auto& faces = source_->cell(n, i).faces;
            for (int k = 0; k <= n; ++k)
                if (target_->face(img, k) != apply(faces[k]))
                    return std::pair{n, i};
        }
    return std::nullopt;
}

bool SimplicialMap::is_monomorphism() const {
    for (const auto& level : images_) {
        std::set<Simplex> seen;
        for (const Simplex& s : level)
            if (s.degenerate() || !seen.insert(s).second)
                return false;
    }
    return true;
}

std::vector<Simplex> SimplicialMap::key() const {
    std::vector<Simplex> out;
    for (const auto& level : images_)
        out.insert(out.end(), level.begin(), level.end());
    return out;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    std::vector<std::vector<Simplex>> images(f.images().size());
    for (std::size_t n = 0; n < images.size(); ++n)
        for (const Simplex& s : f.images()[n])
            images[n].push_back(g.apply(s));
    return SimplicialMap(f.source(), g.target(), std::move(images));
}

} // namespace ljoyal
