#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ljoyal/decision.hpp"
#include "ljoyal/fp_category.hpp"
#include "ljoyal/simplicial_set.hpp"

namespace ljoyal {

/// A precubical set of dimension <= 3. Faces of a k-cell are listed as
/// [d0_1, d1_1, d0_2, d1_2, ...], where d^a_i fixes coordinate i at a; for
/// squares this is [left, right, bottom, top].
class PrecubicalSet {
public:
    struct Edge {
        std::string id;
        int src = 0;
        int tgt = 0;
        std::string label;
    };
    struct Cube {
        std::string id;
        std::vector<int> faces;
    };

    PrecubicalSet() = default;
    /// Throws DanglingBoundary or CubicalIdentityViolation.
    PrecubicalSet(std::vector<std::string> vertices, std::vector<Edge> edges, std::vector<Cube> squares,
                  std::vector<Cube> cubes = {});

    int dim() const;
    int count(int k) const;
    const std::string& id(int k, int i) const;
    std::optional<int> find(int k, std::string_view id) const;
    /// d^a_i of a k-cell; for edges, the source (a = 0) or target vertex.
    int face(int k, int cell, int i, int a) const;

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Cube>& squares() const { return squares_; }
    const std::vector<Cube>& cubes() const { return cubes_; }

    /// A copy with one more square.
    PrecubicalSet with_square(Cube square) const;

private:
    void validate() const;

    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<Cube> squares_;
    std::vector<Cube> cubes_;
};

/// {"vertices": [ids], "edges": [{"id", "src", "tgt"[, "label"]}],
///  "squares": [{"id", "faces": [left, right, bottom, top]}], "cubes": [...]}
PrecubicalSet pcs_from_json(const nlohmann::json& j);
nlohmann::ordered_json pcs_to_json(const PrecubicalSet& k);

/// Each k-cube becomes the k! simplices of its chains of vertex subsets;
/// vertex and edge ids are kept, new cells are named "<cube>:<subsets>".
SSetPtr triangulate(const PrecubicalSet& k);

/// Free category on the edges modulo bottom.right = left.top per square.
/// Completed.
FpCategory hda_path_category(const PrecubicalSet& k);

struct ExecPaths {
    std::vector<Word> classes;                 // one representative each, shortlex-least
    std::vector<std::pair<int, int>> undecided; // class pairs the word problem left open
    int words = 0;                              // words enumerated
};

/// Execution paths x -> y of length <= max_len up to equality in the path
/// category.
ExecPaths exec_paths(const PrecubicalSet& k, int x, int y, int max_len);

/// Equality of two execution words (edge ids). Throws EndpointMismatch.
Decision exec_equivalent(const PrecubicalSet& k, const std::vector<std::string>& p, const std::vector<std::string>& q);

} // namespace ljoyal
