#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ljoyal/simplicial_map.hpp"

namespace ljoyal {

/// A category with finitely many arrows and an explicit composition table.
///
/// Arrows 0..objects-1 are the identities (id "id:<object>"); the others are
/// listed in insertion order. `then(f, g)` is g o f, defined when
/// target(f) == source(g).
class FiniteCategory {
public:
    struct Arrow {
        std::string id;
        int src = 0;
        int tgt = 0;
    };

    FiniteCategory() = default;
    FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   const std::vector<std::vector<std::string>>& composition);

    int object_count() const { return int(objects_.size()); }
    int arrow_count() const { return int(arrows_.size()); }
    const std::string& object(int o) const { return objects_[o]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    const std::vector<std::string>& objects() const { return objects_; }
    std::optional<int> find_object(std::string_view id) const;
    std::optional<int> find_arrow(std::string_view id) const;

    int identity(int o) const { return o; }
    bool is_identity(int a) const { return a < object_count(); }
    /// g o f, or -1 when not composable.
    int then(int f, int g) const;

    std::vector<int> hom(int x, int y) const;
    std::optional<int> inverse(int a) const;
    bool is_groupoid() const;

    /// Length of the longest chain of composable non-identity arrows, when bounded.
    std::optional<int> longest_chain() const;

    /// The composition table as [f, g, g o f] triples over non-identity arrows.
    std::vector<std::vector<std::string>> composition_table() const;

private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> table_;
};

/// The nerve, stored to `cap` (at least 2) and 2-coskeletal. Chains of
/// non-identity arrows are the nondegenerate simplices, named by joining
/// arrow ids with '|'.
SSetPtr nerve(const FiniteCategory& c, int cap = 2);

/// The simplex of nerve(c) given by a chain of arrows (identities allowed).
/// `start` is only consulted for the empty chain.
Simplex nerve_simplex(const SSetPtr& nerve, const FiniteCategory& c, const std::vector<int>& chain, int start = 0);

/// The nerve of a functor given on objects and arrows.
SimplicialMap nerve_map(const SSetPtr& source_nerve, const FiniteCategory& source, const SSetPtr& target_nerve,
                        const FiniteCategory& target, const std::vector<int>& on_arrows);

} // namespace ljoyal
