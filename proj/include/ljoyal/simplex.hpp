#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace ljoyal {

/// Degeneracy operators are encoded as the set of positions i with
/// sigma(i) == sigma(i+1) for the underlying surjection sigma: [n] -> [p].
/// The degeneracy word s_{j1}...s_{jk} (j1 > ... > jk) has exactly the
/// positions {j1, ..., jk}, so the mask is the Eilenberg-Zilber normal form.
using DegenMask = std::uint32_t;

/// A formal simplex: a degeneracy operator applied to a nondegenerate simplex.
struct Simplex {
    int dim = 0;
    DegenMask degen = 0;
    int base = 0;

    int base_dim() const { return dim - std::popcount(degen); }
    bool degenerate() const { return degen != 0; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;

    std::uint64_t key() const {
        return (std::uint64_t(std::uint32_t(base)) << 32) ^ (std::uint64_t(degen) << 8) ^ std::uint64_t(dim);
    }
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return std::hash<std::uint64_t>{}(s.key()); }
};

struct SimplexVectorHash {
    std::size_t operator()(const std::vector<Simplex>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& s : v) {
            h ^= s.key() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return std::size_t(h);
    }
};

namespace ops {

/// Values sigma(0..dim) of the surjection encoded by `mask`.
std::vector<int> surjection(DegenMask mask, int dim);

/// Mask of a nondecreasing surjective sequence.
DegenMask mask_of(std::span<const int> values);

/// Mask of outer o inner, where inner: [k] -> [q] and outer: [q] -> [r].
DegenMask compose(DegenMask inner, int k, DegenMask outer);

/// Mask of s_j applied to a simplex of dimension dim-1 carrying `mask`.
DegenMask degeneracy(DegenMask mask, int j);

/// Strictly decreasing degeneracy word of a mask.
std::vector<int> word(DegenMask mask);

} // namespace ops

} // namespace ljoyal
