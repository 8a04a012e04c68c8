#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ljoyal/enumerate.hpp"

namespace ljoyal {

/// The unique map X -> Delta^0.
SimplicialMap terminal_map(const SSetPtr& x);

/// A commutative square p o top = bottom o i for i: K -> L and p: X -> Y.
struct Square {
    SimplicialMap top;    // K -> X
    SimplicialMap bottom; // L -> Y
};

/// All commutative squares from i to p, in search order.
std::vector<Square> squares(const SimplicialMap& i, const SimplicialMap& p,
                            std::uint64_t budget = kDefaultSearchBudget);

/// A diagonal L -> X restricting to `top` and lying over `bottom`.
std::optional<SimplicialMap> lift(const SimplicialMap& i, const SimplicialMap& p, const Square& sq,
                                  std::uint64_t budget = kDefaultSearchBudget);

/// The first square without a diagonal, if any.
std::optional<Square> unliftable_square(const SimplicialMap& i, const SimplicialMap& p,
                                        std::uint64_t budget = kDefaultSearchBudget);

/// Maps K -> X along i: K -> L that do not extend to L (p = X -> *).
std::optional<SimplicialMap> unextendable(const SimplicialMap& i, const SSetPtr& x,
                                          std::uint64_t budget = kDefaultSearchBudget);

} // namespace ljoyal
