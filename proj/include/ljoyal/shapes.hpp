#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ljoyal/simplicial_map.hpp"

namespace ljoyal::shapes {

/// Delta^n, coskeletal above 1 (it is the nerve of [n]) and finite.
SSetPtr simplex(int n);
/// The boundary of Delta^n; empty for n = 0.
SSetPtr boundary(int n);
/// The horn Lambda^n_k (0 <= k <= n, n >= 1).
SSetPtr horn(int n, int k);
/// I, the nerve of the free-standing isomorphism, stored to `cap` and
/// coskeletal above 2.
SSetPtr interval(int cap = 2);
/// The finite skeleton of I up to `cap` (not coskeletal).
SSetPtr interval_skeleton(int cap);

/// Id of the face of Delta^n spanned by the vertices in `mask`.
std::string face_id(std::uint32_t mask, int n);

/// The map sending each nondegenerate simplex of `sub` to the simplex with
/// the same id and dimension in `whole`.
SimplicialMap inclusion_by_ids(const SSetPtr& sub, const SSetPtr& whole);

/// Simplex of Delta^n given by a nondecreasing vertex sequence.
Simplex monotone_simplex(const SSetPtr& delta_n, std::span<const int> values);

enum class Kind { simplex, boundary, horn, interval };

struct ShapeSpec {
    Kind kind = Kind::simplex;
    int n = 0;
    int k = 0;

    bool inner() const { return kind == Kind::horn && 0 < k && k < n; }
    std::string to_string() const;
};

/// Parses "simplex:3", "boundary:2", "horn:2,1" or "interval".
ShapeSpec parse_shape(std::string_view text);
SSetPtr standard_shape(const ShapeSpec& spec);

/// The inclusion of a horn or boundary into its simplex.
SimplicialMap standard_inclusion(const ShapeSpec& spec);

} // namespace ljoyal::shapes
