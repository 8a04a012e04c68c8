#include "ljoyal/fp_category.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ljoyal/error.hpp"

namespace ljoyal {

std::string_view to_string(RewriteStatus s) {
    switch (s) {
    case RewriteStatus::complete: return "complete";
    case RewriteStatus::incomplete: return "incomplete";
    case RewriteStatus::trivially_free: return "trivially_free";
    }
    return "incomplete";
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

namespace {

Word concat(const Word& a, const Word& b) {
    Word out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool occurs_at(const Word& w, std::size_t pos, const Word& pattern) {
    return pos + pattern.size() <= w.size() && std::equal(pattern.begin(), pattern.end(), w.begin() + long(pos));
}

} // namespace

FpCategory::FpCategory(std::vector<std::string> objects, std::vector<Generator> generators,
                       std::vector<Relation> relations)
    : objects_(std::move(objects)), generators_(std::move(generators)), relations_(std::move(relations)) {
    for (const auto& g : generators_)
        if (g.src < 0 || g.tgt < 0 || g.src >= int(objects_.size()) || g.tgt >= int(objects_.size()))
            throw Error(ErrorKind::InvalidArgument, "generator '" + g.id + "' has an unknown endpoint");
    for (const auto& r : relations_) {
        check(r.lhs);
        Path rhs{r.lhs.src, r.rhs};
        check(rhs);
        if (target(r.lhs) != target(rhs))
            throw Error(ErrorKind::EndpointMismatch,
                        "relation " + format(r.lhs.word) + " = " + format(r.rhs) + " relates non-parallel paths");
    }
    status_ = relations_.empty() ? RewriteStatus::trivially_free : RewriteStatus::incomplete;
}

std::optional<int> FpCategory::find_object(std::string_view id) const {
    for (int o = 0; o < int(objects_.size()); ++o)
        if (objects_[o] == id)
            return o;
    return std::nullopt;
}

std::optional<int> FpCategory::find_generator(std::string_view id) const {
    for (int g = 0; g < int(generators_.size()); ++g)
        if (generators_[g].id == id)
            return g;
    return std::nullopt;
}

void FpCategory::check(const Path& p) const {
    if (p.src < 0 || p.src >= int(objects_.size()))
        throw Error(ErrorKind::InvalidArgument, "path starts at an unknown object");
    int at = p.src;
    for (int g : p.word) {
        if (g < 0 || g >= int(generators_.size()))
            throw Error(ErrorKind::InvalidArgument, "unknown generator in path");
        if (generators_[g].src != at)
            throw Error(ErrorKind::EndpointMismatch, "path " + format(p.word) + " is not composable");
        at = generators_[g].tgt;
    }
}

int FpCategory::target(const Path& p) const {
    check(p);
    return p.word.empty() ? p.src : generators_[p.word.back()].tgt;
}

bool FpCategory::reducible(const Word& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos)
        for (const auto& r : rules_)
            if (occurs_at(w, pos, r.lhs))
                return true;
    return false;
}

Word FpCategory::normalize(const Word& w) const {
    Word cur = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t pos = 0; pos < cur.size() && !changed; ++pos)
            for (const auto& r : rules_)
                if (occurs_at(cur, pos, r.lhs)) {
                    Word next(cur.begin(), cur.begin() + long(pos));
                    next.insert(next.end(), r.rhs.begin(), r.rhs.end());
                    next.insert(next.end(), cur.begin() + long(pos + r.lhs.size()), cur.end());
                    cur = std::move(next);
                    changed = true;
                    break;
                }
    }
    return cur;
}

void FpCategory::complete(std::uint64_t budget, std::size_t max_rules) {
    rules_.clear();
    if (relations_.empty()) {
        status_ = RewriteStatus::trivially_free;
        return;
    }
    std::uint64_t steps = 0;
    auto add = [&](const Word& a, const Word& b) {
        Word x = normalize(a), y = normalize(b);
        if (x == y)
            return false;
        if (shortlex_less(x, y))
            std::swap(x, y);
        rules_.push_back(Rule{std::move(x), std::move(y)});
        return true;
    };
    auto interreduce = [&] {
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = 0; i < rules_.size() && !again; ++i) {
                Rule r = rules_[i];
                bool hit = false;
                for (std::size_t j = 0; j < rules_.size() && !hit; ++j)
                    if (j != i)
                        for (std::size_t pos = 0; pos < r.lhs.size() && !hit; ++pos)
                            hit = occurs_at(r.lhs, pos, rules_[j].lhs) && !(rules_[j].lhs == r.lhs && j > i);
                if (hit) {
                    rules_.erase(rules_.begin() + long(i));
                    add(r.lhs, r.rhs);
                    again = true;
                }
            }
        }
        for (auto& r : rules_)
            r.rhs = normalize(r.rhs);
    };
    for (const auto& rel : relations_)
        add(rel.lhs.word, rel.rhs);
    interreduce();
    while (true) {
        bool changed = false;
        for (std::size_t i = 0; i < rules_.size(); ++i)
            for (std::size_t j = 0; j < rules_.size(); ++j) {
                const Word li = rules_[i].lhs, ri = rules_[i].rhs;
                const Word lj = rules_[j].lhs, rj = rules_[j].rhs;
                for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
                    if (++steps > budget) {
                        status_ = RewriteStatus::incomplete;
                        return;
                    }
                    if (!std::equal(li.end() - long(k), li.end(), lj.begin()))
                        continue;
                    Word p = concat(ri, Word(lj.begin() + long(k), lj.end()));
                    Word q = concat(Word(li.begin(), li.end() - long(k)), rj);
                    changed |= add(p, q);
                }
                if (i != j)
                    for (std::size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                        if (++steps > budget) {
                            status_ = RewriteStatus::incomplete;
                            return;
                        }
                        if (!occurs_at(li, pos, lj))
                            continue;
                        Word q(li.begin(), li.begin() + long(pos));
                        q.insert(q.end(), rj.begin(), rj.end());
                        q.insert(q.end(), li.begin() + long(pos + lj.size()), li.end());
                        changed |= add(ri, q);
                    }
                if (rules_.size() > max_rules) {
                    status_ = RewriteStatus::incomplete;
                    return;
                }
            }
        interreduce();
        if (!changed)
            break;
    }
    status_ = RewriteStatus::complete;
}

Word FpCategory::parse_word(std::string_view text) const {
    Word w;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto g = find_generator(piece);
        if (!g)
            throw Error(ErrorKind::Parse, "unknown generator '" + std::string(piece) + "'");
        w.push_back(*g);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return w;
}

std::string FpCategory::format(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ",";
        out += generators_[w[i]].id;
    }
    return out;
}

namespace {

// Bidirectional search over the equational theory on raw words up to a
// length bound; the two sides meet when they share a normal form.
Decision search_equal(const FpCategory& c, int src, const Word& u, const Word& v, std::uint64_t budget) {
    struct Eq {
        Word from, to;
        int at;
    };
    std::vector<Eq> eqs;
    for (const auto& r : c.relations()) {
        eqs.push_back({r.lhs.word, r.rhs, r.lhs.src});
        eqs.push_back({r.rhs, r.lhs.word, r.lhs.src});
    }
    const std::size_t limit = std::max(u.size(), v.size()) + 4;
    std::map<Word, int> side; // 1 from u, 2 from v
    std::map<Word, int> normal_side;
    std::deque<Word> queue;
    for (auto [w, s] : {std::pair{u, 1}, std::pair{v, 2}}) {
        side[w] = s;
        normal_side[c.normalize(w)] |= s;
        queue.push_back(w);
    }
    std::uint64_t nodes = 0;
    bool truncated = false;
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        int s = side[w];
        for (const auto& [from, to, at] : eqs) {
            for (std::size_t pos = 0; pos + from.size() <= w.size(); ++pos) {
                if (!occurs_at(w, pos, from))
                    continue;
                // an empty side matches wherever the path passes its object
                if (from.empty() && (pos == 0 ? src : c.generators()[w[pos - 1]].tgt) != at)
                    continue;
                Word next(w.begin(), w.begin() + long(pos));
                next.insert(next.end(), to.begin(), to.end());
                next.insert(next.end(), w.begin() + long(pos + from.size()), w.end());
                if (next.size() > limit) {
                    truncated = true;
                    continue;
                }
                if (side.count(next))
                    continue;
                if (++nodes > budget)
                    return Decision::unknown("budget");
                side[next] = s;
                int& ns = normal_side[c.normalize(next)];
                ns |= s;
                if (ns == 3)
                    return Decision::yes({{"via", "equational search"}});
                queue.push_back(std::move(next));
            }
        }
    }
    if (!truncated)
        return Decision::no("equivalence classes exhausted", {{"class_size", side.size()}});
    return Decision::unknown("length-bound");
}

bool has_empty_side(const FpCategory& c) {
    for (const auto& r : c.relations())
        if (r.lhs.word.empty() != r.rhs.empty())
            return true;
    return false;
}

bool reachable(const FpCategory& c, int from, int to) {
    std::vector<bool> seen(c.objects().size(), false);
    std::vector<int> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == to)
            return true;
        for (const auto& g : c.generators())
            if (g.src == x && !seen[g.tgt]) {
                seen[g.tgt] = true;
                stack.push_back(g.tgt);
            }
    }
    return false;
}

} // namespace

Decision word_equal(const FpCategory& c, const Path& u, const Path& v, std::uint64_t budget) {
    if (u.src != v.src || c.target(u) != c.target(v))
        throw Error(ErrorKind::EndpointMismatch, "words '" + c.format(u.word) + "' and '" + c.format(v.word) +
                                                     "' are not parallel");
    Word nu = c.normalize(u.word), nv = c.normalize(v.word);
    if (nu == nv)
        return Decision::yes({{"normal_form", c.format(nu)}});
    if (c.status() != RewriteStatus::incomplete)
        return Decision::no("distinct normal forms", {{"lhs", c.format(nu)}, {"rhs", c.format(nv)}});
    // Words of different emptiness are never equal without an empty-sided relation.
    if ((nu.empty() != nv.empty()) && !has_empty_side(c))
        return Decision::no("no relation has an empty side");
    return search_equal(c, u.src, nu, nv, budget);
}

std::vector<Word> irreducible_words(const FpCategory& c, int x, int y, int bound, bool* exhausted) {
    std::vector<Word> out;
    bool complete_list = true;
    const std::size_t cap = 100'000;
    Word cur;
    std::size_t visited = 0;
    auto rec = [&](auto&& self, int at) -> void {
        if (at == y)
            out.push_back(cur);
        if (++visited > cap) {
            complete_list = false;
            return;
        }
        for (int g = 0; g < int(c.generators().size()); ++g) {
            if (c.generators()[g].src != at)
                continue;
            cur.push_back(g);
            bool ok = true;
            for (const auto& r : c.rules())
                if (r.lhs.size() <= cur.size() && std::equal(r.lhs.begin(), r.lhs.end(), cur.end() - long(r.lhs.size()))) {
                    ok = false;
                    break;
                }
            if (ok) {
                if (int(cur.size()) > bound)
                    complete_list = false;
                else
                    self(self, c.generators()[g].tgt);
            }
            cur.pop_back();
            if (!complete_list && visited > cap)
                return;
        }
    };
    rec(rec, x);
    if (exhausted)
        *exhausted = complete_list;
    return out;
}

Decision is_invertible(const FpCategory& c, const Path& w, int length_bound, std::uint64_t budget) {
    const int x = w.src, y = c.target(w);
    if (w.word.empty())
        return Decision::yes({{"inverse", ""}});
    if (!reachable(c, y, x))
        return Decision::no("no path back", {{"from", c.objects()[y]}, {"to", c.objects()[x]}});
    if (!has_empty_side(c))
        return Decision::no("no relation has an empty side, so no nonempty path is an identity");
    bool exhausted = false;
    auto candidates = irreducible_words(c, y, x, length_bound, &exhausted);
    bool undecided = false;
    for (const Word& v : candidates) {
        Decision a = word_equal(c, Path{x, concat(w.word, v)}, Path{x, {}}, budget);
        if (a.is_no())
            continue;
        Decision b = word_equal(c, Path{y, concat(v, w.word)}, Path{y, {}}, budget);
        if (a.is_yes() && b.is_yes())
            return Decision::yes({{"inverse", c.format(v)}});
        if (a.is_unknown() || b.is_unknown())
            undecided = true;
    }
    if (exhausted && !undecided)
        return Decision::no("hom-set exhausted", {{"candidates", candidates.size()}});
    return Decision::unknown(undecided ? "budget" : "length-bound", {{"length_bound", length_bound}});
}

Decision is_groupoid(const FpCategory& c, int length_bound) {
    DecisionAccumulator acc;
    nlohmann::json inverses = nlohmann::json::object();
    for (int g = 0; g < int(c.generators().size()); ++g) {
        Decision d = is_invertible(c, Path{c.generators()[g].src, {g}}, length_bound);
        if (d.is_yes())
            inverses[c.generators()[g].id] = d.certificate["inverse"];
        else
            d.certificate = {{"generator", c.generators()[g].id}, {"detail", d.certificate}};
        acc.add(d);
        if (acc.decided_no())
            break;
    }
    return acc.result({{"inverses", inverses}});
}

FpCategory groupoidify(const FpCategory& c, std::uint64_t budget) {
    auto gens = c.generators();
    const int n = int(gens.size());
    std::vector<FpCategory::Relation> rels = c.relations();
    for (int g = 0; g < n; ++g) {
        gens.push_back({c.generators()[g].id + "^-1", c.generators()[g].tgt, c.generators()[g].src});
        rels.push_back({Path{c.generators()[g].src, {g, n + g}}, {}});
        rels.push_back({Path{c.generators()[g].tgt, {n + g, g}}, {}});
    }
    FpCategory out(c.objects(), std::move(gens), std::move(rels));
    out.inverse_of.resize(2 * n);
    for (int g = 0; g < n; ++g) {
        out.inverse_of[g] = n + g;
        out.inverse_of[n + g] = g;
    }
    if (budget > 0)
        out.complete(budget);
    return out;
}

FiniteCategory to_finite_category(const FpCategory& c, int bound, std::vector<Path>* words) {
    if (c.status() == RewriteStatus::incomplete)
        throw Error(ErrorKind::UndecidedWordProblem, "rewriting system is not complete");
    const int k = int(c.objects().size());
    std::vector<FiniteCategory::Arrow> arrows;
    std::map<std::pair<int, Word>, std::string> names;
    std::vector<Path> order;
    for (int x = 0; x < k; ++x)
        order.push_back(Path{x, {}});
    for (int x = 0; x < k; ++x) {
        names[{x, {}}] = "id:" + c.objects()[x];
        for (int y = 0; y < k; ++y) {
            bool exhausted = false;
            auto found = irreducible_words(c, x, y, bound, &exhausted);
            if (!exhausted)
                throw Error(ErrorKind::UndecidedWordProblem, "hom-set is not finite within the bound");
            for (const Word& w : found)
                if (!w.empty()) {
                    std::string id;
                    for (std::size_t i = 0; i < w.size(); ++i)
                        id += (i ? "." : "") + c.generators()[w[i]].id;
                    names[{x, w}] = id;
                    arrows.push_back({id, x, y});
                    order.push_back(Path{x, w});
                }
        }
    }
    std::vector<std::vector<std::string>> table;
    for (const auto& [key, f] : names)
        for (const auto& [key2, g] : names) {
            if (key.second.empty() || key2.second.empty())
                continue;
            if (c.target(Path{key.first, key.second}) != key2.first)
                continue;
            Word h = c.normalize(concat(key.second, key2.second));
            table.push_back({f, g, names.at({key.first, h})});
        }
    if (words)
        *words = std::move(order);
    return FiniteCategory(c.objects(), std::move(arrows), table);
}

} // namespace ljoyal
