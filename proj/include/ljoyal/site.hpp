#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "ljoyal/decision.hpp"
#include "ljoyal/finite_category.hpp"

namespace ljoyal {

/// A sieve on U as a bit set over FiniteSite::into(U).
using Sieve = std::uint64_t;

class FiniteSite {
public:
    FiniteSite() = default;
    /// Covering sieves per object, given as the sieves generated by each
    /// family of arrows into it; the maximal sieve and all larger sieves are
    /// added. Throws TopologyAxiomViolation unless stable and local.
    FiniteSite(FiniteCategory c, const std::vector<std::vector<std::vector<int>>>& families);

    /// Only maximal sieves cover.
    static FiniteSite trivial(FiniteCategory c);
    /// The smallest topology in which the families cover.
    static FiniteSite generated(FiniteCategory c, const std::vector<std::vector<std::vector<int>>>& families);

    const FiniteCategory& category() const { return c_; }
    int objects() const { return c_.object_count(); }
    /// Arrows with target U, in arrow order.
    const std::vector<int>& into(int u) const { return into_[u]; }
    /// Position of arrow a in into(target a).
    int slot(int a) const { return slot_[a]; }
    bool in(Sieve s, int a) const { return (s >> slot_[a]) & 1u; }

    Sieve maximal(int u) const;
    Sieve closure(int u, const std::vector<int>& arrows) const;
    /// a* S = {h : a h in S}, a sieve on the source of a.
    Sieve pullback(Sieve s, int a) const;
    std::vector<Sieve> all_sieves(int u) const;
    /// Covering sieves of U, ascending.
    const std::vector<Sieve>& covering(int u) const { return covering_[u]; }
    bool covers(int u, Sieve s) const;
    bool is_trivial() const;
    std::vector<int> members(int u, Sieve s) const;

    nlohmann::ordered_json to_json() const;

private:
    void index_arrows();
    void close_upward();
    void check_axioms() const;

    FiniteCategory c_;
    std::vector<std::vector<int>> into_;
    std::vector<int> slot_;
    std::vector<std::vector<Sieve>> covering_;
};

/// {"objects", "arrows": [{"id", "src", "tgt"}], "compose": [[f, g, g o f]],
///  "covers": {U: [[arrow ids]]}}
FiniteSite site_from_json(const nlohmann::json& j);

/// A presheaf of finite sets: restrict[a] maps F(tgt a) to F(src a).
struct SetPresheaf {
    std::vector<int> size;
    std::vector<std::vector<int>> restrict;
};

/// F -> G, one function per object.
struct SetMap {
    std::vector<std::vector<int>> at;
};

/// Throws FunctorialityViolation.
void validate(const FiniteSite& site, const SetPresheaf& f);
void validate(const FiniteSite& site, const SetPresheaf& f, const SetPresheaf& g, const SetMap& m);

/// Every section of G is hit locally. A no names (object, section).
Decision local_epi(const FiniteSite& site, const SetPresheaf& g, const SetMap& m);
/// Sections with equal images agree locally.
Decision local_mono(const FiniteSite& site, const SetPresheaf& f, const SetMap& m);
/// Every matching family on every covering sieve has exactly one amalgamation.
Decision is_sheaf(const FiniteSite& site, const SetPresheaf& f);

struct Sheafification {
    SetPresheaf sheaf;
    SetMap unit;
};

/// One plus construction.
Sheafification plus(const FiniteSite& site, const SetPresheaf& f);
/// L^2 F, the plus construction applied twice.
Sheafification sheafify_set(const FiniteSite& site, const SetPresheaf& f);
/// L^2 m between the sheafifications.
SetMap sheafify_map(const FiniteSite& site, const SetPresheaf& f, const SetPresheaf& g, const SetMap& m);

bool is_bijective(const SetPresheaf& f, const SetPresheaf& g, const SetMap& m);

} // namespace ljoyal
