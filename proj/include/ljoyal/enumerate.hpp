#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ljoyal/simplicial_map.hpp"

namespace ljoyal {

inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

/// Exhaustive backtracking over simplicial maps K -> X.
///
/// Nondegenerate simplices of K are visited vertex by vertex; as soon as all
/// vertices of a simplex are placed its image is chosen among the formal
/// simplices of X with the already determined boundary. Exceeding the node
/// budget throws SearchBudgetExceeded, never a partial answer.
class MapSearch {
public:
    MapSearch(SSetPtr source, SSetPtr target, std::uint64_t budget = kDefaultSearchBudget);

    /// Fixes the image of the nondegenerate simplex (n, i) of the source.
    MapSearch& pin(int n, int i, Simplex image);
    /// For a monomorphism `inclusion: K -> source` and `partial: K -> target`,
    /// forces the result to restrict to `partial` along the inclusion.
    MapSearch& extend(const SimplicialMap& inclusion, const SimplicialMap& partial);
    /// Requires projection o result == base, for projection: target -> B and
    /// base: source -> B.
    MapSearch& over(const SimplicialMap& projection, const SimplicialMap& base);

    /// Visits every map; stops early when `visit` returns false.
    void run(const std::function<bool(const SimplicialMap&)>& visit);
    std::vector<SimplicialMap> all();
    std::optional<SimplicialMap> first();
    bool exists() { return first().has_value(); }

    std::uint64_t nodes() const { return nodes_; }

private:
    struct Step {
        int dim;
        int index;
    };

    void plan();
    bool descend(std::size_t step, const std::function<bool(const SimplicialMap&)>& visit);

    SSetPtr source_;
    SSetPtr target_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    int top_ = -1;
    std::vector<std::vector<std::optional<Simplex>>> pins_;
    std::optional<SimplicialMap> projection_;
    std::optional<SimplicialMap> base_;
    std::vector<Step> order_;
    std::vector<std::vector<Simplex>> images_;
};

/// All simplicial maps K -> X.
std::vector<SimplicialMap> enumerate_maps(const SSetPtr& source, const SSetPtr& target,
                                          std::uint64_t budget = kDefaultSearchBudget);

} // namespace ljoyal
