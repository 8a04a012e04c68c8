#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ljoyal/simplicial_set.hpp"

namespace ljoyal {

/// A simplicial map, stored as the image of every nondegenerate source
/// simplex of dimension <= source()->mapped_dim(). Images of implied higher
/// simplices (coskeletal sources) are recovered from boundaries.
class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Simplex>> images);

    static SimplicialMap identity(const SSetPtr& x);

    const SSetPtr& source() const { return source_; }
    const SSetPtr& target() const { return target_; }
    const std::vector<std::vector<Simplex>>& images() const { return images_; }
    const Simplex& image(int n, int i) const { return images_[n][i]; }

    Simplex apply(const Simplex& s) const;

    /// First nondegenerate source simplex (dim, index) whose faces do not
    /// commute with the map, if any.
    std::optional<std::pair<int, int>> simplicial_violation() const;

    /// Injective on nondegenerate simplices with nondegenerate images; by
    /// Eilenberg-Zilber this is exactly injectivity.
    bool is_monomorphism() const;

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) { return a.images_ == b.images_; }

    /// Flat key identifying the map among maps with the same source.
    std::vector<Simplex> key() const;

private:
    SSetPtr source_;
    SSetPtr target_;
    std::vector<std::vector<Simplex>> images_;
};

/// g o f
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

/// The image of s^*(x) given the image of x: composes the degeneracies.
Simplex push_forward(const Simplex& s, const Simplex& image_of_base);

} // namespace ljoyal
