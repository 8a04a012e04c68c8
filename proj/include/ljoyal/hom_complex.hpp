#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "ljoyal/enumerate.hpp"
#include "ljoyal/product.hpp"

namespace ljoyal {

/// The function complex hom(K, X) truncated at `trunc`: its m-simplices are
/// the maps Delta^m x K -> X. Coskeletal when X is c-coskeletal and trunc >= c.
struct HomComplex {
    SSetPtr source; // K
    SSetPtr target; // X
    int trunc = 0;
    SSetPtr set;
    std::vector<Product> shapes;                   // Delta^m x K
    std::vector<std::vector<SimplicialMap>> cells; // nondegenerate cells as maps

    /// psi o (theta x j) for psi: Delta^m x K -> X, theta: [m'] -> [m] and
    /// j: K' -> K, landing on `shape` = Delta^m' x K'.
    static SimplicialMap precompose(const Product& from_shape, const SimplicialMap& psi, const Product& shape,
                                    std::span<const int> theta, const SimplicialMap* j = nullptr);

    /// The formal simplex of this complex represented by psi: Delta^m x K -> X.
    Simplex classify(int m, const SimplicialMap& psi) const;

    std::shared_ptr<std::vector<std::unordered_map<std::vector<Simplex>, int, SimplexVectorHash>>> keys;
};

HomComplex hom_complex(const SSetPtr& k, const SSetPtr& x, int trunc,
                       std::uint64_t budget = kDefaultSearchBudget);

/// f_*: hom(K, X) -> hom(K, Y) for f: X -> Y.
SimplicialMap post_compose(const HomComplex& from, const HomComplex& to, const SimplicialMap& f);

/// i^*: hom(L, X) -> hom(K, X) for i: K -> L.
SimplicialMap pre_compose(const HomComplex& from, const HomComplex& to, const SimplicialMap& i);

} // namespace ljoyal
