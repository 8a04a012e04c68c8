#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ljoyal/error.hpp"
#include "ljoyal/hda.hpp"
#include "ljoyal/parallel.hpp"
#include "ljoyal/presheaf.hpp"
#include "ljoyal/quasicat.hpp"
#include "ljoyal/shapes.hpp"
#include "ljoyal/site.hpp"
#include "ljoyal/sset_io.hpp"

using namespace ljoyal;

namespace {

constexpr int kYes = 0, kNo = 1, kUnknown = 2, kUsage = 64, kInvalid = 65;

struct Globals {
    int max_dim = 4;
    std::optional<int> max_n;
    std::uint64_t budget = kDefaultSearchBudget;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool timing = false;
};

// What a verb hands back: a verdict plus verb-specific fields.
struct Outcome {
    Decision decision;
    ojson result;
    ojson bounds = ojson::object();
};

int exit_code(const Decision& d) { return d.is_yes() ? kYes : d.is_no() ? kNo : kUnknown; }

nlohmann::json resolve(const nlohmann::json& j) { return j.is_string() ? read_json_file(j.get<std::string>()) : j; }

SSetPtr read_sset(const std::string& path) { return sset_from_json(read_json_file(path)); }

// {"source": sset or path, "target": sset or path, "map": table}
SimplicialMap read_map(const std::string& path) {
    const auto j = read_json_file(path);
    try {
        auto source = sset_from_json(resolve(j.at("source")));
        auto target = sset_from_json(resolve(j.at("target")));
        return map_from_json(source, target, j.at("map"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ',');)
        if (!part.empty())
            out.push_back(part);
    return out;
}

Path read_path(const FpCategory& c, const std::string& text, const std::string& from) {
    Path p{0, c.parse_word(text)};
    if (!from.empty()) {
        auto x = c.find_object(from);
        if (!x)
            throw Error(ErrorKind::InvalidArgument, "unknown object '" + from + "'");
        p.src = *x;
    } else if (!p.word.empty()) {
        p.src = c.generators()[p.word.front()].src;
    } else {
        throw Error(ErrorKind::InvalidArgument, "the empty word needs --from");
    }
    c.check(p);
    return p;
}

ojson word_json(const PrecubicalSet& k, const Word& w) {
    ojson out = ojson::array();
    for (int e : w)
        out.push_back(k.edges()[e].id);
    return out;
}

int vertex_of(const PrecubicalSet& k, const std::string& id) {
    auto v = k.find(0, id);
    if (!v)
        throw Error(ErrorKind::InvalidArgument, "unknown vertex '" + id + "'");
    return *v;
}

ojson groupoid_json(const FpCategory& g) {
    auto s = analyze_groupoid(g);
    ojson comps = ojson::array();
    for (int c = 0; c < s.components(); ++c) {
        ojson objects = ojson::array();
        for (int x = 0; x < int(g.objects().size()); ++x)
            if (s.component_of[x] == c)
                objects.push_back(g.objects()[x]);
        auto ab = abelianization(s.groups[c]);
        ojson group = {{"generators", s.groups[c].generators},
                       {"relators", s.groups[c].relators.size()},
                       {"abelianization", {{"free_rank", ab.free_rank}, {"torsion", ab.torsion}}}};
        if (s.finite[c])
            group["order"] = s.finite[c]->order;
        else
            group["order"] = nullptr;
        comps.push_back({{"base", g.objects()[s.base[c]]}, {"objects", objects}, {"group", group}});
    }
    return {{"components", comps}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ljoyal: simplicial sets, quasi-categories, sites and HDA"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--max-dim", g.max_dim, "dimension bound for lifting checks")->capture_default_str();
    app.add_option("--max-n", g.max_n, "largest probe dimension for equivalence tests");
    app.add_option("--budget", g.budget, "search budget")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized helpers")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    app.add_flag("--timing", g.timing, "add wall time to the report");

    std::function<Outcome()> run;
    std::vector<std::string> command(argv + 1, argv + argc);

    auto verb = [&](CLI::App* group, const std::string& name, const std::string& help) {
        auto* sub = group->add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };

    // qc
    auto* qc = app.add_subcommand("qc", "simplicial sets and quasi-categories");
    qc->require_subcommand(1);
    qc->fallthrough();
    std::string file, file2, word, word2, from, shape_text, p_text, q_text, to;
    std::vector<std::string> probes;
    int steps = 1, dim_cap = 3, bound = 3, length_bound = 6, max_len = -1;
    bool qc_flag = false;

    auto* check = verb(qc, "check", "inner horn filling up to --max-dim");
    check->add_option("sset", file, "simplicial set JSON")->required();
    check->callback([&] {
        run = [&] {
            return Outcome{is_quasicategory(read_sset(file), g.max_dim, g.budget), nullptr,
                           {{"max_dim", g.max_dim}, {"budget", g.budget}}};
        };
    });

    auto* pathcat = verb(qc, "pathcat", "path category presentation");
    pathcat->add_option("sset", file)->required();
    pathcat->callback([&] {
        run = [&] {
            auto c = path_category(read_sset(file));
            ojson result = {{"presentation", presentation_to_json(c)},
                            {"status", std::string(to_string(c.status()))},
                            {"rules", c.rules().size()}};
            Decision d = c.status() == RewriteStatus::incomplete ? Decision::unknown("budget") : Decision::yes();
            return Outcome{d, result, {}};
        };
    });

    auto* jcore = verb(qc, "jcore", "maximal Kan subcomplex");
    jcore->add_option("sset", file)->required();
    jcore->add_option("--length-bound", length_bound)->capture_default_str();
    jcore->add_flag("--quasicategory", qc_flag, "use 2-simplex inverse witnesses only");
    jcore->callback([&] {
        run = [&] {
            auto x = read_sset(file);
            auto core = j_core(x, qc_flag, length_bound);
            ojson invertible = ojson::array();
            for (int e = 0; e < int(core.invertible.size()); ++e)
                if (core.invertible[e])
                    invertible.push_back(x->name(x->nondegenerate(1, e)));
            ojson result = {{"core", sset_to_json(*core.set)},
                            {"invertible_edges", invertible},
                            {"undecided_edges", core.undecided}};
            Decision d = core.undecided.empty()
                             ? Decision::yes()
                             : Decision::unknown("undecided-edges", {{"edges", core.undecided}});
            return Outcome{d, result, {{"length_bound", length_bound}}};
        };
    });

    auto* pi1 = verb(qc, "pi1", "fundamental groupoid: components and vertex groups");
    pi1->add_option("sset", file)->required();
    pi1->callback([&] {
        run = [&] {
            auto gpd = fundamental_groupoid(read_sset(file));
            Decision d = gpd.status() == RewriteStatus::incomplete ? Decision::unknown("budget") : Decision::yes();
            return Outcome{d, groupoid_json(gpd), {}};
        };
    });

    auto* classes = verb(qc, "classes", "naive homotopy classes of maps X -> Y");
    classes->add_option("source", file)->required();
    classes->add_option("target", file2)->required();
    classes->callback([&] {
        run = [&] {
            auto h = homotopy_classes(read_sset(file), read_sset(file2), true, g.budget);
            std::vector<int> sizes(h.count, 0);
            for (int c : h.class_of)
                ++sizes[c];
            ojson result = {{"count", h.count}, {"maps", h.class_of.size()}, {"class_sizes", sizes}};
            return Outcome{Decision::yes(), result, {{"budget", g.budget}}};
        };
    });

    auto* joyal = verb(qc, "joyal-eq", "equivalence test through probes Delta^n and its boundary");
    joyal->add_option("map", file, "map JSON {source, target, map}")->required();
    joyal->callback([&] {
        run = [&] {
            auto r = joyal_equivalent(read_map(file), g.max_n, g.budget);
            return Outcome{r.verdict, r.to_json(), {{"max_n", r.max_n}, {"budget", g.budget}}};
        };
    });

    auto* probe = verb(qc, "probe", "bijectivity on homotopy classes into probes");
    probe->add_option("map", file)->required();
    probe->add_option("--probe", probes, "probe simplicial set JSON")->required();
    probe->callback([&] {
        run = [&] {
            std::vector<SSetPtr> zs;
            for (const auto& p : probes)
                zs.push_back(read_sset(p));
            return Outcome{probe_joyal(read_map(file), zs, g.budget), nullptr,
                           {{"probes", probes.size()}, {"budget", g.budget}}};
        };
    });

    auto* anodyne = verb(qc, "anodyne", "inner-anodyne steps");
    anodyne->add_option("sset", file)->required();
    anodyne->add_option("--steps", steps)->capture_default_str()->check(CLI::PositiveNumber);
    anodyne->add_option("--dim-cap", dim_cap)->capture_default_str();
    anodyne->callback([&] {
        run = [&] {
            auto a = fibrant_approx(read_sset(file), steps, dim_cap, g.budget);
            ojson result = {{"set", sset_to_json(*a.set)}, {"glued", a.glued}};
            return Outcome{Decision::yes(), result, {{"steps", steps}, {"dim_cap", dim_cap}, {"budget", g.budget}}};
        };
    });

    auto* factorize = verb(qc, "factorize", "mapping path factorization into a nerve");
    factorize->add_option("map", file)->required();
    factorize->add_option("--bound", bound)->capture_default_str();
    factorize->callback([&] {
        run = [&] {
            auto p = mapping_path_factorization(read_map(file), bound, g.budget);
            DecisionAccumulator acc;
            acc.add(p.pi_inner_fibration);
            acc.add(p.rho_trivial_fibration);
            return Outcome{acc.result(), p.to_json(), {{"bound", bound}, {"budget", g.budget}}};
        };
    });

    // cat
    auto* cat = app.add_subcommand("cat", "finitely presented categories");
    cat->require_subcommand(1);
    cat->fallthrough();
    auto* normalize = verb(cat, "normalize", "normal form of a word");
    normalize->add_option("presentation", file)->required();
    normalize->add_option("--word", word, "comma-separated generator ids")->required();
    normalize->add_option("--from", from, "source object for the empty word");
    normalize->callback([&] {
        run = [&] {
            auto c = presentation_from_json(read_json_file(file));
            c.complete();
            Path p = read_path(c, word, from);
            ojson result = {{"normal_form", split(c.format(c.normalize(p.word)))},
                            {"status", std::string(to_string(c.status()))}};
            Decision d = c.status() == RewriteStatus::incomplete ? Decision::unknown("budget") : Decision::yes();
            return Outcome{d, result, {}};
        };
    });

    auto* equal = verb(cat, "equal", "word problem");
    equal->add_option("presentation", file)->required();
    equal->add_option("--u", word)->required();
    equal->add_option("--v", word2)->required();
    equal->add_option("--from", from);
    equal->callback([&] {
        run = [&] {
            auto c = presentation_from_json(read_json_file(file));
            c.complete();
            Path u = read_path(c, word, from), v = read_path(c, word2, from.empty() ? std::string() : from);
            if (u.word.empty() != v.word.empty()) {
                if (u.word.empty())
                    u.src = v.src;
                else
                    v.src = u.src;
            }
            if (u.src != v.src || c.target(u) != c.target(v))
                throw Error(ErrorKind::EndpointMismatch, "words have different endpoints");
            return Outcome{word_equal(c, u, v), nullptr, {}};
        };
    });

    auto* invertible = verb(cat, "invertible", "whether a word is invertible");
    invertible->add_option("presentation", file)->required();
    invertible->add_option("--word", word)->required();
    invertible->add_option("--from", from);
    invertible->add_option("--length-bound", length_bound)->capture_default_str();
    invertible->callback([&] {
        run = [&] {
            auto c = presentation_from_json(read_json_file(file));
            c.complete();
            return Outcome{is_invertible(c, read_path(c, word, from), length_bound), nullptr,
                           {{"length_bound", length_bound}}};
        };
    });

    // site
    auto* site = app.add_subcommand("site", "finite sites and simplicial presheaves");
    site->require_subcommand(1);
    site->fallthrough();
    auto* validate_site = verb(site, "validate", "check a site and, optionally, a presheaf over it");
    validate_site->add_option("site", file)->required();
    validate_site->add_option("--presheaf", file2);
    validate_site->callback([&] {
        run = [&] {
            auto s = site_from_json(read_json_file(file));
            ojson result = {{"site", s.to_json()}};
            if (!file2.empty()) {
                auto x = presheaf_from_json(s, read_json_file(file2));
                ojson counts = ojson::object();
                for (int u = 0; u < s.objects(); ++u)
                    counts[s.category().objects()[u]] = x.values[u]->cell_counts();
                result["presheaf_cell_counts"] = counts;
            }
            return Outcome{Decision::yes(), result, {}};
        };
    });

    shape_text = "horn:2,1";
    auto* lift = verb(site, "local-lift", "local right lifting against a horn or boundary inclusion");
    lift->add_option("site", file)->required();
    lift->add_option("map", file2, "presheaf map JSON {source, target, components}")->required();
    lift->add_option("--shape", shape_text)->capture_default_str();
    lift->callback([&] {
        run = [&] {
            auto s = site_from_json(read_json_file(file));
            auto f = presheaf_map_from_json(s, read_json_file(file2));
            auto i = shapes::standard_inclusion(shapes::parse_shape(shape_text));
            Decision local = has_local_rlp(s, f, i, g.budget);
            ojson result = {{"sectionwise", sectionwise_rlp(f, i, g.budget).to_json()}};
            return Outcome{local, result, {{"shape", shape_text}, {"budget", g.budget}}};
        };
    });

    auto* classify = verb(site, "classify", "local inner, Kan and trivial fibration tests");
    classify->add_option("site", file)->required();
    classify->add_option("map", file2)->required();
    classify->callback([&] {
        run = [&] {
            auto s = site_from_json(read_json_file(file));
            auto f = presheaf_map_from_json(s, read_json_file(file2));
            auto c = classify_local_fibration(s, f, g.max_dim, g.budget);
            return Outcome{Decision::yes(), c.to_json(), {{"max_dim", g.max_dim}, {"budget", g.budget}}};
        };
    });

    auto* local_joyal = verb(site, "local-joyal", "local equivalence of presheaves of quasi-categories");
    local_joyal->add_option("site", file)->required();
    local_joyal->add_option("map", file2)->required();
    local_joyal->callback([&] {
        run = [&] {
            auto s = site_from_json(read_json_file(file));
            auto f = presheaf_map_from_json(s, read_json_file(file2));
            auto r = local_joyal_equiv(s, f, g.max_n, g.budget);
            return Outcome{r.verdict, r.to_json(), {{"max_n", r.max_n}, {"budget", g.budget}}};
        };
    });

    // hda
    auto* hda = app.add_subcommand("hda", "higher-dimensional automata");
    hda->require_subcommand(1);
    hda->fallthrough();
    auto* analyze = verb(hda, "analyze", "cells, triangulation and execution classes between all states");
    analyze->add_option("complex", file)->required();
    analyze->add_option("--max-len", max_len, "word length bound (default: number of edges)");
    analyze->callback([&] {
        run = [&] {
            auto k = pcs_from_json(read_json_file(file));
            const int len = max_len < 0 ? k.count(1) : max_len;
            auto c = hda_path_category(k);
            ojson counts = ojson::array();
            for (int d = 0; d <= k.dim(); ++d)
                counts.push_back(k.count(d));
            ojson pairs = ojson::array();
            DecisionAccumulator acc;
            auto rows = parallel_map(std::size_t(k.count(0)), [&](std::size_t x) {
                ojson row = ojson::array();
                bool open = false;
                for (int y = 0; y < k.count(0); ++y) {
                    auto p = exec_paths(k, int(x), y, len);
                    if (p.classes.empty())
                        continue;
                    open = open || !p.undecided.empty();
                    row.push_back({{"from", k.vertices()[x]}, {"to", k.vertices()[y]}, {"classes", p.classes.size()}});
                }
                return std::pair{row, open};
            });
            for (auto& [row, open] : rows) {
                for (auto& e : row)
                    pairs.push_back(std::move(e));
                if (open)
                    acc.add(Decision::unknown("word-problem"));
            }
            ojson result = {{"cell_counts", counts},
                            {"triangulation_cell_counts", triangulate(k)->cell_counts()},
                            {"path_category", {{"status", std::string(to_string(c.status()))}, {"rules", c.rules().size()}}},
                            {"execution_classes", pairs}};
            return Outcome{acc.result(), result, {{"max_len", len}}};
        };
    });

    auto* paths = verb(hda, "paths", "execution classes between two states");
    paths->add_option("complex", file)->required();
    paths->add_option("--from", from)->required();
    paths->add_option("--to", to)->required();
    paths->add_option("--max-len", max_len)->required();
    paths->callback([&] {
        run = [&] {
            auto k = pcs_from_json(read_json_file(file));
            auto p = exec_paths(k, vertex_of(k, from), vertex_of(k, to), max_len);
            ojson reps = ojson::array();
            for (const auto& w : p.classes)
                reps.push_back(word_json(k, w));
            ojson undecided = ojson::array();
            for (auto [a, b] : p.undecided)
                undecided.push_back({a, b});
            ojson result = {{"classes", reps}, {"words", p.words}, {"undecided", undecided}};
            Decision d = p.undecided.empty() ? Decision::yes() : Decision::unknown("word-problem");
            return Outcome{d, result, {{"max_len", max_len}}};
        };
    });

    auto* equiv = verb(hda, "equiv", "whether two executions are equal in the path category");
    equiv->add_option("complex", file)->required();
    equiv->add_option("--p", p_text, "comma-separated edge ids")->required();
    equiv->add_option("--q", q_text)->required();
    equiv->callback([&] {
        run = [&] {
            auto k = pcs_from_json(read_json_file(file));
            return Outcome{exec_equivalent(k, split(p_text), split(q_text)), nullptr, {}};
        };
    });

    ojson report = {{"command", command}};
    auto emit = [&](int code) {
        std::cout << dump(report);
        return code;
    };
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report["verdict"] = "error";
        report["error"] = {{"kind", "usage"}, {"message", e.what()}};
        return emit(kUsage);
    }

    set_thread_count(g.threads);
    const auto start = std::chrono::steady_clock::now();
    int code = kYes;
    try {
        Outcome out = run();
        ojson verdict = out.decision.to_json();
        for (auto it = verdict.begin(); it != verdict.end(); ++it)
            report[it.key()] = it.value();
        if (!out.result.is_null())
            report["result"] = out.result;
        report["bounds"] = out.bounds.is_null() ? ojson::object() : out.bounds;
        code = exit_code(out.decision);
    } catch (const Error& e) {
        const bool invalid = is_validation_error(e.kind());
        report["verdict"] = invalid ? "error" : "unknown";
        report[invalid ? "error" : "reason"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        if (!e.detail().is_null())
            report[invalid ? "error" : "reason"]["detail"] = e.detail();
        code = invalid ? kInvalid : kUnknown;
    } catch (const std::exception& e) {
        report["verdict"] = "unknown";
        report["reason"] = {{"kind", "internal"}, {"message", e.what()}};
        code = kUnknown;
    }
    if (g.timing)
        report["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return emit(code);
}
