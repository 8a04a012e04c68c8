#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ljoyal/decision.hpp"
#include "ljoyal/finite_category.hpp"

namespace ljoyal {

/// Generator indices in path order: {a, b} is "a then b", i.e. b o a.
using Word = std::vector<int>;

/// A word together with its source object (needed for the empty word).
struct Path {
    int src = 0;
    Word word;
};

enum class RewriteStatus { complete, incomplete, trivially_free };
std::string_view to_string(RewriteStatus s);

inline constexpr std::uint64_t kDefaultRewriteBudget = 200'000;

/// A finitely presented category: objects, typed generators and relations
/// between parallel paths, with a length-lexicographic rewriting system.
class FpCategory {
public:
    struct Generator {
        std::string id;
        int src = 0;
        int tgt = 0;
    };
    struct Relation {
        Path lhs;
        Word rhs;
    };
    struct Rule {
        Word lhs;
        Word rhs;
    };

    FpCategory() = default;
    /// Throws EndpointMismatch for ill-typed relations.
    FpCategory(std::vector<std::string> objects, std::vector<Generator> generators, std::vector<Relation> relations);

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::optional<int> find_object(std::string_view id) const;
    std::optional<int> find_generator(std::string_view id) const;

    /// Source and target of a path; throws EndpointMismatch if not composable.
    int target(const Path& p) const;
    void check(const Path& p) const;

    /// Knuth-Bendix completion under the length-lexicographic order. Budget
    /// exhaustion leaves a sound but incomplete system.
    void complete(std::uint64_t budget = kDefaultRewriteBudget, std::size_t max_rules = 400);
    RewriteStatus status() const { return status_; }
    const std::vector<Rule>& rules() const { return rules_; }

    /// Rewrites to an irreducible word (a normal form when complete).
    Word normalize(const Word& w) const;
    bool reducible(const Word& w) const;

    /// Comma-separated generator ids; empty string is the empty word.
    Word parse_word(std::string_view text) const;
    std::string format(const Word& w) const;

    /// For groupoid presentations: the formal inverse of each generator.
    std::vector<int> inverse_of;

private:
    std::vector<std::string> objects_;
    std::vector<Generator> generators_;
    std::vector<Relation> relations_;
    std::vector<Rule> rules_;
    RewriteStatus status_ = RewriteStatus::incomplete;
};

/// Shortlex comparison.
bool shortlex_less(const Word& a, const Word& b);

Decision word_equal(const FpCategory& c, const Path& u, const Path& v, std::uint64_t budget = kDefaultRewriteBudget);
Decision is_invertible(const FpCategory& c, const Path& w, int length_bound = 6,
                       std::uint64_t budget = kDefaultRewriteBudget);
Decision is_groupoid(const FpCategory& c, int length_bound = 6);

/// Adjoins an inverse for every generator ("<id>^-1") with both inverse
/// relations, and completes the result (skipped for a zero budget).
FpCategory groupoidify(const FpCategory& c, std::uint64_t budget = kDefaultRewriteBudget);

/// Irreducible words from x to y of length <= bound; `exhausted` reports
/// whether these are all of them.
std::vector<Word> irreducible_words(const FpCategory& c, int x, int y, int bound, bool* exhausted = nullptr);

/// The category as an explicit finite category (complete systems with
/// finite hom-sets only); arrows are named by their normal forms.
/// Throws UndecidedWordProblem otherwise. `words`, when given, receives the
/// normal form of every arrow in arrow order.
FiniteCategory to_finite_category(const FpCategory& c, int bound = 12, std::vector<Path>* words = nullptr);

} // namespace ljoyal
