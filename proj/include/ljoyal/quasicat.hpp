#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ljoyal/decision.hpp"
#include "ljoyal/fp_category.hpp"
#include "ljoyal/groupoid.hpp"
#include "ljoyal/finite_category.hpp"
#include "ljoyal/hom_complex.hpp"
#include "ljoyal/product.hpp"

namespace ljoyal {

/// Fills every horn (inner ones only when `inner_only`) of dimension
/// 2..max_dim. A `no` names the horn and the unfillable map.
Decision horn_filling(const SSetPtr& x, int max_dim, bool inner_only,
                      std::uint64_t budget = kDefaultSearchBudget);

/// Inner horn filling, certified complete when the object is coskeletal
/// at a level below max_dim or finite below max_dim.
Decision is_quasicategory(const SSetPtr& x, int max_dim = 4, std::uint64_t budget = kDefaultSearchBudget);

/// Objects are vertices, generators the nondegenerate edges (in index
/// order), one relation d1 = d2 then d0 per nondegenerate 2-simplex.
FpCategory path_category(const SSetPtr& x, bool complete = true);

struct JCore {
    SSetPtr set;
    SimplicialMap inclusion;
    std::vector<bool> invertible;          // per nondegenerate edge of X
    std::vector<std::string> undecided;    // edges excluded for lack of a verdict
};

/// The cells of X all of whose edges are invertible. With
/// `quasicategory` set, an edge is invertible iff it has 2-simplex
/// witnesses of both one-sided inverses; otherwise the word problem of
/// P(X) decides the edges without such witnesses.
JCore j_core(const SSetPtr& x, bool quasicategory = false, int length_bound = 6);

/// Formal inverses adjoined to P(X).
FpCategory fundamental_groupoid(const SSetPtr& x, bool complete = true);

struct HomotopyClasses {
    HomComplex hom;
    std::vector<int> class_of; // per map X -> Y, i.e. per vertex of hom
    int count = 0;
};

/// Naive homotopy classes: components of J(hom(X, Y)).
HomotopyClasses homotopy_classes(const SSetPtr& x, const SSetPtr& y, bool verify_target = true,
                                 std::uint64_t budget = kDefaultSearchBudget);

/// Whether the edge extends along the edge 0 -> 1 of the interval. Targets
/// without a coskeletal flag are probed with a finite skeleton of the
/// interval, and the certificate says so.
Decision edge_invertible_via_interval(const SSetPtr& x, const Simplex& edge,
                                      std::uint64_t budget = kDefaultSearchBudget);

struct ShapeCheck {
    std::string shape; // "simplex:n" or "boundary:n"
    int n = 0;
    Decision verdict;
};

struct JoyalReport {
    Decision verdict;
    std::vector<ShapeCheck> shapes;
    int max_n = 0;
    nlohmann::ordered_json to_json() const;
};

/// For P = Delta^n and the boundary of Delta^n, n <= max_n (default: the
/// larger dimension plus two), tests whether f induces an equivalence
/// pi J hom(P, X) -> pi J hom(P, Y). A yes only covers the tested n.
JoyalReport joyal_equivalent(const SimplicialMap& f, std::optional<int> max_n = std::nullopt,
                             std::uint64_t budget = kDefaultSearchBudget);

/// Bijectivity of f^*: [Y, Z] -> [X, Z] on naive homotopy classes for each
/// probe Z. A yes only covers the given probes.
Decision probe_joyal(const SimplicialMap& f, const std::vector<SSetPtr>& probes,
                     std::uint64_t budget = kDefaultSearchBudget);

struct AnodyneStep {
    SSetPtr set;
    SimplicialMap inclusion; // X -> E
    int glued = 0;           // horn maps filled by a new simplex
    int horn_maps = 0;       // inner horn maps enumerated
};

/// One inner-anodyne step: glues a copy of Delta^n along every inner horn
/// map Lambda^n_k -> X (n <= dim_cap) that has no filler in X yet. X must be
/// finite. New cells are tagged with `tag`.
AnodyneStep anodyne_step(const SSetPtr& x, int dim_cap, const std::string& tag = "e1",
                         std::uint64_t budget = kDefaultSearchBudget);

struct FibrantApprox {
    SSetPtr set;
    SimplicialMap inclusion;
    int steps = 0;
    int dim_cap = 0;
    std::vector<int> glued; // per step
};

/// `steps` anodyne steps in a row. Not claimed to be a quasi-category.
FibrantApprox fibrant_approx(const SSetPtr& x, int steps, int dim_cap,
                             std::uint64_t budget = kDefaultSearchBudget);


struct NerveData {
    FiniteCategory category; // identities, then the nondegenerate edges of Y in index order
    SSetPtr nerve;           // nerve(category)
    SimplicialMap to_set;    // nerve -> Y, an isomorphism
    SimplicialMap from_set;  // Y -> nerve
};

/// Reads Y as the nerve of a category: Y must be coskeletal at level <= 2
/// with unique inner 2-horn fillers. Throws TargetNotNerve otherwise.
NerveData category_of_nerve(const SSetPtr& y, std::uint64_t budget = kDefaultSearchBudget);

/// Objects are the isomorphisms u: a -> b of C, arrows (u, u', p) with
/// p: a -> a'; they lie over u' p u^-1 on the other side.
struct IsoArrowCategory {
    FiniteCategory category;
    std::vector<int> ev0; // per arrow of the iso category: p
    std::vector<int> ev1; // per arrow: u' p u^-1
    std::vector<int> s;   // per arrow of C: (id, id, p)
};

IsoArrowCategory iso_arrow_category(const FiniteCategory& c);

struct PathFactorization {
    Product z;             // X x_Y Y^I
    SimplicialMap sigma;   // X -> Z
    SimplicialMap pi;      // Z -> Y
    SimplicialMap rho;     // Z -> X
    Decision pi_inner_fibration;
    Decision rho_trivial_fibration;
    int bound = 3;
    nlohmann::ordered_json to_json() const;
};

/// f = pi sigma with rho sigma = id, for a target that is a nerve.
PathFactorization mapping_path_factorization(const SimplicialMap& f, int bound = 3,
                                             std::uint64_t budget = kDefaultSearchBudget);

} // namespace ljoyal
