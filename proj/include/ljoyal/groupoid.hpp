#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ljoyal/fp_category.hpp"

namespace ljoyal {

/// Letters +k / -k stand for the k-th generator (1-based) and its inverse.
using GroupWord = std::vector<int>;

GroupWord free_reduce(const GroupWord& w);
GroupWord group_inverse(const GroupWord& w);

struct GroupPresentation {
    int generators = 0;
    std::vector<GroupWord> relators;
};

/// A finite group as the regular action of its generators (from coset
/// enumeration over the trivial subgroup). Element 0 is the identity.
struct FiniteGroup {
    int order = 1;
    int generators = 0;
    std::vector<std::vector<int>> action; // action[element][2k] = element * g_k, [2k+1] = element * g_k^-1
    std::vector<GroupWord> representative;

    int element(const GroupWord& w, int start = 0) const;
    int multiply(int a, int b) const { return element(representative[b], a); }
    int element_order(int a) const;
};

/// Todd-Coxeter enumeration; nullopt when more than `coset_limit` cosets are needed.
std::optional<FiniteGroup> enumerate_group(const GroupPresentation& p, std::size_t coset_limit = 50'000);

/// Invariant factors (> 1, ascending) of the abelianization and its free rank.
struct AbelianInvariants {
    std::vector<std::int64_t> torsion;
    int free_rank = 0;
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};
AbelianInvariants abelianization(const GroupPresentation& p);

/// Yes with an explicit isomorphism, or no with a distinguishing invariant.
Decision finite_groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Simplifies a presentation by eliminating generators that occur exactly
/// once in some relator. `expr[k-1]` receives the word in the surviving
/// generators (renumbered from 1) for original generator k; `kept` lists
/// the surviving original generators.
GroupPresentation tietze_reduce(const GroupPresentation& p, std::vector<GroupWord>& expr, std::vector<int>& kept);

/// Components and vertex groups of a groupoid presentation (as produced by
/// groupoidify). Each component has a base object and a spanning tree.
struct GroupoidStructure {
    const FpCategory* groupoid = nullptr;
    std::vector<int> component_of;          // per object
    std::vector<int> base;                  // per component
    std::vector<Word> tree_path;            // per object, from its base
    std::vector<GroupWord> generator_image; // per generator, in its component's group
    std::vector<std::vector<int>> group_edges; // per component: the generator behind each group generator
    std::vector<GroupPresentation> groups;  // per component, at its base
    std::vector<std::optional<FiniteGroup>> finite; // when enumeration succeeded

    int components() const { return int(base.size()); }
    /// The element of the base vertex group represented by a path, with tree
    /// edges contracted.
    GroupWord loop_image(const Word& w) const;
    /// Inverse of a groupoid word using the formal inverses.
    Word inverse(const Word& w) const;
};

GroupoidStructure analyze_groupoid(const FpCategory& groupoid, std::size_t coset_limit = 50'000);

/// Equivalence of abstract groupoids: components matched by vertex groups.
Decision groupoid_equivalent(const FpCategory& g, const FpCategory& h, std::size_t coset_limit = 50'000);

/// Whether the functor F: G -> H, given on objects and on the original
/// generators of G (as words in H), is an equivalence: bijective on
/// components and an isomorphism on every vertex group.
Decision functor_is_equivalence(const GroupoidStructure& g, const GroupoidStructure& h,
                                const std::vector<int>& on_objects, const std::vector<Word>& on_generators);

} // namespace ljoyal
