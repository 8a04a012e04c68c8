#pragma once

#include <array>
#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ljoyal/simplex.hpp"

namespace ljoyal {

class SimplicialSet;
using SSetPtr = std::shared_ptr<const SimplicialSet>;

/// Highest dimension the library will ever materialize.
inline constexpr int kMaxDim = 12;

/// A simplicial set stored by its nondegenerate simplices up to `dim_cap`.
///
/// Without a coskeletal flag the object has no nondegenerate simplices above
/// the cap. With `coskeletal_above = c` it is the c-coskeleton of its
/// c-truncation; levels above the cap are then materialized on demand from
/// compatible boundary data. All degeneracies are formal.
///
/// Instances are immutable after `Builder::build`; the lazy caches are
/// internally synchronized so shared instances may be queried concurrently.
class SimplicialSet : public std::enable_shared_from_this<SimplicialSet> {
public:
    struct Cell {
        std::string id;
        std::vector<Simplex> faces; // d_0 .. d_n, empty for vertices
    };

    class Builder {
    public:
        explicit Builder(int dim_cap, std::optional<int> coskeletal_above = std::nullopt);

        /// For coskeletal objects known to have no nondegenerate simplices
        /// above `n` (nerves of acyclic categories, standard simplices).
        Builder& finite_dim(int n);

        int add_vertex(std::string id);
        int add_cell(int dim, std::string id, std::vector<Simplex> faces);
        std::optional<int> find(int dim, std::string_view id) const;
        int dim_cap() const { return cap_; }

        /// Validates normal forms, references and simplicial identities.
        SSetPtr build() &&;

    private:
        int cap_;
        std::optional<int> cosk_;
        std::optional<int> finite_;
        std::vector<std::vector<Cell>> cells_;
        std::vector<std::unordered_map<std::string, int>> ids_;
    };

    SimplicialSet(const SimplicialSet&) = delete;
    SimplicialSet& operator=(const SimplicialSet&) = delete;
    ~SimplicialSet();

    int dim_cap() const { return cap_; }
    std::optional<int> coskeletal_above() const { return cosk_; }
    bool is_coskeletal() const { return cosk_.has_value(); }

    /// Bound above which no nondegenerate simplices exist, when known.
    /// Always set for non-coskeletal objects (it is the cap).
    std::optional<int> finite_dim() const { return finite_; }
    bool is_finite() const { return finite_.has_value(); }

    /// Number of nondegenerate n-simplices (materializing if coskeletal).
    std::size_t count(int n) const;
    const Cell& cell(int n, int i) const;
    std::optional<int> find(int n, std::string_view id) const;

    /// Counts for dimensions 0..dim_cap.
    std::vector<std::size_t> cell_counts() const;

    /// Highest dimension with a nondegenerate simplex, -1 when empty.
    /// For coskeletal objects this only looks at stored levels.
    int top_dim() const;

    /// Dimensions a map out of this object must assign: the finite bound when
    /// known, otherwise the stored cap (higher cells are then implied).
    int mapped_dim() const { return finite_ ? *finite_ : cap_; }

    Simplex nondegenerate(int n, int i) const { return Simplex{n, 0, i}; }

    /// Applies the monotone map theta: [k] -> [dim s] to s.
    Simplex apply(const Simplex& s, std::span<const int> theta) const;
    Simplex face(const Simplex& s, int i) const;
    Simplex vertex(const Simplex& s, int j) const;
    std::vector<Simplex> boundary(const Simplex& s) const;
    static Simplex degeneracy(const Simplex& s, int j);

    /// All formal n-simplices (nondegenerate and degenerate), in a fixed order.
    std::span<const Simplex> formal_simplices(int n) const;
    /// Formal n-simplices (n >= 1) with the given boundary.
    std::span<const Simplex> with_boundary(int n, const std::vector<Simplex>& boundary) const;

    /// Human-readable name: the id, wrapped in degeneracies when degenerate.
    std::string name(const Simplex& s) const;

    /// For a coskeletal object, checks that every compatible boundary in
    /// dimensions c+1..dim_cap is filled by exactly one formal simplex.
    /// Returns the offending dimension if not.
    std::optional<int> coskeletal_violation() const;

    /// Visits every compatible tuple (x_0..x_n) of formal (n-1)-simplices,
    /// i.e. d_i x_j = d_{j-1} x_i for i < j. Requires n >= 1.
    void for_each_sphere(int n, const std::function<void(const std::vector<Simplex>&)>& visit) const;

private:
    struct Level {
        std::vector<Cell> cells;
        std::vector<std::vector<Simplex>> subfaces; // per cell, indexed by vertex-set mask
        std::unordered_map<std::string, int> ids;
    };
    struct Index {
        std::vector<Simplex> all;
        std::unordered_map<std::vector<Simplex>, std::vector<Simplex>, SimplexVectorHash> by_boundary;
    };

    SimplicialSet() = default;

    const Level& level(int n) const;
    const Index& index(int n) const;
    void materialize_to(int n) const;
    std::vector<Simplex> degenerate_simplices(int n) const;
    void add_level(int n, std::vector<Cell> cells, std::unordered_map<std::string, int> ids) const;
    Simplex subface(const Simplex& base, std::uint32_t vertex_mask) const;

    int cap_ = 0;
    std::optional<int> cosk_;
    std::optional<int> finite_;

    mutable std::recursive_mutex mutex_;
    mutable std::array<std::unique_ptr<Level>, kMaxDim + 2> levels_{};
    mutable std::atomic<int> materialized_{-1};
    mutable std::array<std::unique_ptr<Index>, kMaxDim + 2> indices_{};
    mutable std::array<std::atomic<bool>, kMaxDim + 2> indexed_{};
};

} // namespace ljoyal
