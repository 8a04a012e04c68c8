#include <numeric>

#include "ljoyal/error.hpp"
#include "ljoyal/parallel.hpp"
#include "ljoyal/quasicat.hpp"
#include "ljoyal/shapes.hpp"

namespace ljoyal {

nlohmann::ordered_json JoyalReport::to_json() const {
    nlohmann::ordered_json out = verdict.to_json();
    out["max_n"] = max_n;
    out["bound_note"] = "shapes with n <= max_n were tested; the criterion quantifies over all n";
    auto& list = out["shapes"] = nlohmann::ordered_json::array();
    for (const auto& s : shapes) {
        nlohmann::ordered_json e = {{"shape", s.shape}, {"n", s.n}};
        e["result"] = s.verdict.to_json();
        list.push_back(std::move(e));
    }
    return out;
}

namespace {

struct Side {
    HomComplex hom;
    JCore core;
    FpCategory groupoid;
};

Side side(const SSetPtr& p, const SSetPtr& x, bool quasicategory, std::uint64_t budget) {
    Side s{hom_complex(p, x, 2, budget), {}, {}};
    s.core = j_core(s.hom.set, quasicategory);
    s.groupoid = groupoidify(path_category(s.core.set, false), 0);
    return s;
}

bool quasicategory_or_throw(const SSetPtr& x, const char* which, std::uint64_t budget) {
    Decision d = is_quasicategory(x, 3, budget);
    if (d.is_no())
        throw Error(ErrorKind::NotAQuasicategory, std::string(which) + " is not a quasi-category", d.certificate);
    return d.is_yes();
}

Decision shape_check(const SimplicialMap& f, const SSetPtr& p, bool qx, bool qy, std::uint64_t budget) {
    Side a = side(p, f.source(), qx, budget);
    Side b = side(p, f.target(), qy, budget);
    SimplicialMap induced = post_compose(a.hom, b.hom, f);
    std::vector<int> on_objects(a.core.set->count(0));
    for (int v = 0; v < int(on_objects.size()); ++v)
        on_objects[v] = induced.apply(Simplex{0, 0, v}).base;
    std::vector<Word> on_generators;
    for (int e = 0; e < int(a.core.set->count(1)); ++e) {
        Simplex image = induced.apply(a.core.inclusion.image(1, e));
        if (image.degenerate()) {
            on_generators.push_back({});
            continue;
        }
        auto idx = b.core.set->find(1, b.hom.set->cell(1, image.base).id);
        if (!idx)
            throw Error(ErrorKind::InvalidArgument, "an invertible edge maps outside the target core");
        on_generators.push_back({*idx});
    }
    auto ga = analyze_groupoid(a.groupoid);
    auto gb = analyze_groupoid(b.groupoid);
    return functor_is_equivalence(ga, gb, on_objects, on_generators);
}

} // namespace

JoyalReport joyal_equivalent(const SimplicialMap& f, std::optional<int> max_n, std::uint64_t budget) {
    const bool qx = quasicategory_or_throw(f.source(), "source", budget);
    const bool qy = quasicategory_or_throw(f.target(), "target", budget);
    JoyalReport report;
    report.max_n = max_n ? *max_n : std::max(f.source()->mapped_dim(), f.target()->mapped_dim()) + 2;
    struct Job {
        shapes::ShapeSpec spec;
    };
    std::vector<Job> jobs;
    for (int n = 0; n <= report.max_n; ++n) {
        jobs.push_back({{shapes::Kind::simplex, n, 0}});
        jobs.push_back({{shapes::Kind::boundary, n, 0}});
    }
    auto results = parallel_map(jobs.size(), [&](std::size_t i) {
        return shape_check(f, shapes::standard_shape(jobs[i].spec), qx, qy, budget);
    });
    DecisionAccumulator acc;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        report.shapes.push_back({jobs[i].spec.to_string(), jobs[i].spec.n, results[i]});
        Decision d = results[i];
        d.certificate = {{"shape", jobs[i].spec.to_string()}, {"n", jobs[i].spec.n}, {"detail", d.certificate}};
        acc.add(d);
    }
    report.verdict = acc.result({{"max_n", report.max_n}, {"shapes", jobs.size()}});
    if (!qx || !qy)
        report.verdict.certificate["advisory"] = "quasi-category check was inconclusive";
    return report;
}

Decision probe_joyal(const SimplicialMap& f, const std::vector<SSetPtr>& probes, std::uint64_t budget) {
    auto results = parallel_map(probes.size(), [&](std::size_t i) {
        const SSetPtr& z = probes[i];
        HomotopyClasses cy = homotopy_classes(f.target(), z, true, budget);
        HomotopyClasses cx = homotopy_classes(f.source(), z, true, budget);
        std::vector<int> image(cy.count, -1);
        std::vector<bool> hit(cx.count, false);
        for (int u = 0; u < int(cy.hom.cells[0].size()); ++u) {
            SimplicialMap g = HomComplex::precompose(cy.hom.shapes[0], cy.hom.cells[0][u], cx.hom.shapes[0],
                                                     std::vector<int>{0}, &f);
            int v = cx.hom.classify(0, g).base;
            int& slot = image[cy.class_of[u]];
            if (slot >= 0 && slot != cx.class_of[v])
                throw Error(ErrorKind::OracleDisagreement, "precomposition is not defined on classes");
            slot = cx.class_of[v];
            hit[slot] = true;
        }
        std::vector<bool> seen(cx.count, false);
        for (int c : image) {
            if (seen[c])
                return Decision::no("not injective on classes", {{"probe", i}, {"classes", {cy.count, cx.count}}});
            seen[c] = true;
        }
        for (int c = 0; c < cx.count; ++c)
            if (!hit[c])
                return Decision::no("not surjective on classes", {{"probe", i}, {"classes", {cy.count, cx.count}}});
        return Decision::yes({{"probe", i}, {"classes", cx.count}});
    });
    DecisionAccumulator acc;
    for (const auto& d : results)
        acc.add(d);
    return acc.result({{"probes", probes.size()}, {"advisory", "finitely many probes were tested"}});
}

} // namespace ljoyal
