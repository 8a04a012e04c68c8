#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ljoyal/enumerate.hpp"
#include "ljoyal/quasicat.hpp"
#include "ljoyal/site.hpp"
#include "ljoyal/sset_io.hpp"

namespace ljoyal {

/// X(U) per object and X(a): X(tgt a) -> X(src a) per arrow.
struct SimplicialPresheaf {
    std::vector<SSetPtr> values;
    std::vector<SimplicialMap> restrict;
};

struct PresheafMap {
    SimplicialPresheaf source;
    SimplicialPresheaf target;
    std::vector<SimplicialMap> at;
};

/// Throws FunctorialityViolation when restrictions do not compose or a
/// square fails to commute.
void validate(const FiniteSite& site, const SimplicialPresheaf& x);
void validate(const FiniteSite& site, const PresheafMap& f);

SimplicialPresheaf constant_presheaf(const FiniteSite& site, const SSetPtr& x);
PresheafMap identity_map(const SimplicialPresheaf& x);
PresheafMap terminal_map(const FiniteSite& site, const SimplicialPresheaf& x);
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);

/// Right lifting against i at every object.
Decision sectionwise_rlp(const PresheafMap& f, const SimplicialMap& i, std::uint64_t budget = kDefaultSearchBudget);

/// Every square at U lifts after restriction along some covering sieve.
Decision local_rlp_direct(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i,
                          std::uint64_t budget = kDefaultSearchBudget);
/// X^L -> X^K x_{Y^K} Y^L is a local epimorphism.
Decision local_rlp_via_epi(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i,
                           std::uint64_t budget = kDefaultSearchBudget);
/// Both of the above; throws OracleDisagreement if they differ.
Decision has_local_rlp(const FiniteSite& site, const PresheafMap& f, const SimplicialMap& i,
                       std::uint64_t budget = kDefaultSearchBudget);

struct LocalFibration {
    Decision inner;   // inner horns, 2 <= n <= max_dim
    Decision kan;     // all horns
    Decision trivial; // boundaries, 0 <= n <= max_dim
    int max_dim = 0;
    nlohmann::ordered_json to_json() const;
};

LocalFibration classify_local_fibration(const FiniteSite& site, const PresheafMap& f, int max_dim,
                                        std::uint64_t budget = kDefaultSearchBudget);

/// A presheaf of finite groupoids: per object a category, per arrow a
/// functor given on arrows (identities stand for objects).
struct GroupoidPresheaf {
    std::vector<FiniteCategory> values;
    std::vector<std::vector<int>> restrict;
};

struct GroupoidPresheafMap {
    std::vector<std::vector<int>> at;
};

void validate(const FiniteSite& site, const GroupoidPresheaf& g);
void validate(const FiniteSite& site, const GroupoidPresheaf& g, const GroupoidPresheaf& h,
              const GroupoidPresheafMap& f);

/// The presheaf of components.
SetPresheaf components(const FiniteSite& site, const GroupoidPresheaf& g,
                       std::vector<std::vector<int>>* component_of = nullptr);

/// The induced map of component sheaves is an isomorphism, and so is the
/// induced map of hom sheaves for every pair of objects.
Decision local_groupoid_equiv(const FiniteSite& site, const GroupoidPresheaf& g, const GroupoidPresheaf& h,
                              const GroupoidPresheafMap& f);

/// For each P in {Delta^n, boundary of Delta^n : n <= max_n}, the
/// groupoid presheaves U -> pi J hom(P, X(U)) are compared with
/// local_groupoid_equiv. Values must be quasi-categories.
JoyalReport local_joyal_equiv(const FiniteSite& site, const PresheafMap& f, std::optional<int> max_n = std::nullopt,
                              std::uint64_t budget = kDefaultSearchBudget);

/// {"values": {U: simplicial set}, "restrictions": {arrow: map table}}
SimplicialPresheaf presheaf_from_json(const FiniteSite& site, const nlohmann::json& j);
ojson presheaf_to_json(const FiniteSite& site, const SimplicialPresheaf& x);
/// {"source": presheaf, "target": presheaf, "components": {U: map table}}
PresheafMap presheaf_map_from_json(const FiniteSite& site, const nlohmann::json& j);
ojson presheaf_map_to_json(const FiniteSite& site, const PresheafMap& f);

} // namespace ljoyal
