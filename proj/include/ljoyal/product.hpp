#pragma once

#include <map>
#include <memory>
#include <utility>

#include "ljoyal/simplicial_map.hpp"

namespace ljoyal {

/// X x Y, or a pullback X x_Z Y, with its projections.
///
/// Nondegenerate n-simplices are pairs (a, b) of formal n-simplices with
/// disjoint degeneracy masks. Finite factors give a finite result whose cap
/// is the sum of their dimensions; coskeletal factors give a coskeletal
/// result. A coskeletal factor without finite bound times a non-coskeletal
/// one is not representable.
struct Product {
    SSetPtr set;
    SimplicialMap pr1;
    SimplicialMap pr2;

    /// The simplex (a, b) of the product (a, b of equal dimension).
    Simplex pair(const Simplex& a, const Simplex& b) const;

    std::shared_ptr<const std::vector<std::map<std::pair<Simplex, Simplex>, int>>> table;
};

Product product(const SSetPtr& x, const SSetPtr& y);

/// X x_Z Y for f: X -> Z and g: Y -> Z.
Product pullback(const SimplicialMap& f, const SimplicialMap& g);

} // namespace ljoyal
