#include "coarseprox/infinity.hpp"

#include <algorithm>

namespace coarseprox {

namespace {

struct Asdim0Node final : public SetNode {
    AdequateSeq f;
    // block n: arithmetic progression of step n from eta_n up to g(n)
    mutable std::mutex mu;
    mutable std::vector<std::tuple<i64, i64, i64>> blocks;  // (start, step, stop)

    explicit Asdim0Node(AdequateSeq f_) : f(std::move(f_)) {}

    i64 g(i64 n) const { return f(n + 2); }

    void ensure_blocks(i64 upto) const {
        std::lock_guard<std::mutex> lk(mu);
        if (blocks.empty()) blocks.push_back({1, 1, std::max<i64>(g(1), 4)});
        while (std::get<2>(blocks.back()) < upto) {
            const i64 n = static_cast<i64>(blocks.size()) + 1;
            const i64 eta = std::get<2>(blocks.back());
            const i64 stop = std::max(g(n), eta + 2 * n);
            blocks.push_back({eta, n, stop});
        }
    }

    int dim() const override { return 1; }
    bool contains(const Point& p) const override {
        if (p.h[0] % 2 != 0) return false;
        const i64 v = p.h[0] / 2;
        if (v < 1) return false;
        ensure_blocks(v);
        std::lock_guard<std::mutex> lk(mu);
        for (const auto& [start, step, stop] : blocks) {
            if (v < start) break;
            const i64 last = stop - ((stop - start) % step);
            if (v <= last && (v - start) % step == 0) return true;
        }
        return false;
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        ensure_blocks(r + 1);
        std::lock_guard<std::mutex> lk(mu);
        for (const auto& [start, step, stop] : blocks) {
            if (start > r) break;
            for (i64 v = start; v <= std::min(stop, r); v += step) out.push_back(Point::integer1(v));
        }
    }
    BoundTag bound_tag() const override { return BoundTag::Unbounded; }
    i64 estimate_count(i64 r) const override { return 2 * r + 2; }
    std::string describe() const override { return "ladder(" + f.tag() + ")"; }
};

bool pair_passes(const MetricModel& model, const TameSet& universe, const TameSet& A,
                 const TameSet& C, const AdequateSeq& f, const EngineParams& params,
                 bool& conclusive) {
    auto UC = u_set(model, universe, C, f, model.basepoint, params.horizon);
    auto r1 = coarse_nbhd_metric(model, universe, A, UC, params);
    if (r1.refuted) {
        conclusive = true;
        return false;
    }
    if (!r1.holds) {
        conclusive = false;
        return false;
    }
    auto UA = u_set(model, universe, A, f, model.basepoint, params.horizon);
    auto r2 = coarse_nbhd_metric(model, universe, C, UA, params);
    if (r2.refuted) {
        conclusive = true;
        return false;
    }
    if (!r2.holds) {
        conclusive = false;
        return false;
    }
    conclusive = true;
    return true;
}

}  // namespace

std::string infinity_outcome_name(InfinityVerdict::Outcome o) {
    switch (o) {
        case InfinityVerdict::Outcome::CloseUpToFamily: return "CLOSE-UP-TO-FAMILY";
        case InfinityVerdict::Outcome::NotClose: return "NOT-CLOSE";
        case InfinityVerdict::Outcome::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::vector<AdequateSeq> default_family() {
    const std::array<std::string, 3> vars{"n", "", ""};
    std::vector<AdequateSeq> fam;
    fam.push_back(AdequateSeq::from_poly(parse_poly("n^3", vars)));
    fam.push_back(AdequateSeq::from_poly(parse_poly("2n^3", vars)));
    fam.push_back(AdequateSeq::from_poly(parse_poly("n^6", vars)));
    fam.push_back(star_refine(AdequateSeq::from_poly(parse_poly("n^3", vars))));
    return fam;
}

InfinityVerdict delta_infinity(const MetricModel& model, const TameSet& universe,
                               const Collection& A, const Collection& C,
                               const std::vector<AdequateSeq>& family,
                               const EngineParams& params) {
    if (A.members.empty() || C.members.empty())
        throw std::invalid_argument("collections must be nonempty");
    for (const auto& f : family) {
        auto chk = validate_adequate(f, 32);
        if (!chk.ok)
            throw std::invalid_argument("family member " + f.tag() + " not adequate: " + chk.detail);
    }
    InfinityVerdict out;
    bool all_pass = true;
    bool any_inconclusive = false;
    for (const auto& f : family) {
        bool f_pass = false;
        bool f_all_conclusive_failures = true;
        std::pair<std::string, std::string> pass_pair;
        for (const auto& [aname, aset] : A.members) {
            for (const auto& [cname, cset] : C.members) {
                bool conclusive = false;
                if (pair_passes(model, universe, aset, cset, f, params, conclusive)) {
                    f_pass = true;
                    pass_pair = {aname, cname};
                    break;
                }
                if (!conclusive) f_all_conclusive_failures = false;
            }
            if (f_pass) break;
        }
        if (f_pass) {
            out.passes.push_back({f.tag(), pass_pair});
        } else if (f_all_conclusive_failures) {
            out.outcome = InfinityVerdict::Outcome::NotClose;
            out.witness_tag = f.tag();
            return out;
        } else {
            all_pass = false;
            any_inconclusive = true;
        }
    }
    if (all_pass) {
        out.outcome = InfinityVerdict::Outcome::CloseUpToFamily;
    } else {
        out.outcome = InfinityVerdict::Outcome::Inconclusive;
        if (any_inconclusive) out.note = "some family members neither passed nor conclusively failed";
    }
    return out;
}

PhiPartition phi_classes(const MetricModel& model,
                         const std::vector<std::pair<std::string, TameSet>>& sets,
                         const EngineParams& params) {
    PhiPartition out;
    const size_t n = sets.size();
    std::vector<std::vector<Outcome>> rel(n, std::vector<Outcome>(n, Outcome::Close));
    out.conclusive = true;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            auto v = phi_related(model, sets[i].second, sets[j].second, params);
            rel[i][j] = rel[j][i] = v.outcome;
            if (!v.conclusive()) {
                out.conclusive = false;
                out.blockers.push_back(sets[i].first + "," + sets[j].first);
            }
        }
    }
    if (!out.conclusive) return out;

    std::vector<size_t> root(n);
    for (size_t i = 0; i < n; ++i) root[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (rel[i][j] == Outcome::Close) root[find(i)] = find(j);

    std::vector<std::vector<size_t>> classes;
    std::vector<int> class_of(n, -1);
    for (size_t i = 0; i < n; ++i) {
        const size_t r = find(i);
        bool placed = false;
        for (size_t c = 0; c < classes.size(); ++c) {
            if (find(classes[c][0]) == r) {
                classes[c].push_back(i);
                class_of[i] = static_cast<int>(c);
                placed = true;
                break;
            }
        }
        if (!placed) {
            class_of[i] = static_cast<int>(classes.size());
            classes.push_back({i});
        }
    }
    out.classes = std::move(classes);

    // transitivity consistency: the verdict matrix must match the partition
    out.transitive_consistent = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const bool same = class_of[i] == class_of[j];
            if (same != (rel[i][j] == Outcome::Close)) out.transitive_consistent = false;
        }
    return out;
}

bool ClassRelation::is_identity() const {
    for (size_t i = 0; i < related.size(); ++i)
        for (size_t j = 0; j < related.size(); ++j)
            if (related[i][j] != (i == j)) return false;
    return true;
}

ClassRelation class_delta(const MetricModel& model, const TameSet& universe,
                          const std::vector<std::pair<std::string, TameSet>>& sets,
                          const std::vector<AdequateSeq>& family, const EngineParams& params) {
    ClassRelation out;
    out.partition = phi_classes(model, sets, params);
    if (!out.partition.conclusive) return out;
    const size_t k = out.partition.classes.size();
    out.related.assign(k, std::vector<bool>(k, false));
    out.witness.assign(k, std::vector<std::string>(k, ""));
    out.conclusive = true;

    auto collection_of = [&](size_t c) {
        Collection col;
        col.name = "class" + std::to_string(c);
        for (size_t idx : out.partition.classes[c]) col.members.push_back(sets[idx]);
        return col;
    };

    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i; j < k; ++j) {
            auto v = delta_infinity(model, universe, collection_of(i), collection_of(j), family,
                                    params);
            if (v.close()) {
                out.related[i][j] = out.related[j][i] = true;
            } else if (v.not_close()) {
                out.witness[i][j] = out.witness[j][i] = v.witness_tag;
            } else {
                out.conclusive = false;
            }
        }
    }
    return out;
}

TameSet build_asdim0_set(const AdequateSeq& f, i64 horizon) {
    auto node = std::make_shared<Asdim0Node>(f);
    node->ensure_blocks(horizon + 1);
    return TameSet(node);
}

DemoZReport demo_z_components(const EngineParams& params, i64 basepoint) {
    MetricModel model(ModelKind::IntegerLine, Point::integer1(basepoint));
    TameSet uni = universe_of_model(model);
    const std::array<std::string, 3> vars{"n", "", ""};

    Collection pos{"positive-tails", {}};
    pos.members.push_back({"naturals", make_seq(model, parse_poly("n", vars))});
    pos.members.push_back({"even-naturals", make_seq(model, parse_poly("2n", vars))});
    pos.members.push_back({"squares", make_seq(model, parse_poly("n^2", vars))});
    Collection neg{"negative-tails", {}};
    neg.members.push_back({"negatives", make_seq(model, parse_poly("-n", vars))});
    neg.members.push_back({"even-negatives", make_seq(model, parse_poly("-2n", vars))});
    Collection two{"two-sided", {}};
    two.members.push_back({"line", make_lattice_all(model)});
    two.members.push_back(
        {"even-line", make_union(model, {make_seq(model, parse_poly("2n", vars)),
                                         make_seq(model, parse_poly("-2n", vars))})});

    DemoZReport rep;
    rep.groups = {pos, neg, two};
    auto family = default_family();
    rep.all_not_close = true;
    for (size_t i = 0; i < rep.groups.size(); ++i) {
        for (size_t j = i + 1; j < rep.groups.size(); ++j) {
            auto v = delta_infinity(model, uni, rep.groups[i], rep.groups[j], family, params);
            if (!v.not_close()) rep.all_not_close = false;
            if (rep.witness_tag.empty() && v.not_close()) rep.witness_tag = v.witness_tag;
            rep.pair_verdicts.push_back({rep.groups[i].name, rep.groups[j].name, v});
        }
    }
    return rep;
}

Report DemoZReport::to_report() const {
    Report r;
    r.add("demo", "z-components");
    r.add("groups", static_cast<i64>(groups.size()));
    for (const auto& [a, b, v] : pair_verdicts) {
        r.add("pair." + a + "." + b, infinity_outcome_name(v.outcome));
        if (v.not_close()) r.add("pair." + a + "." + b + ".witness", v.witness_tag);
    }
    r.add_bool("all_not_close", all_not_close);
    return r;
}

DemoNReport demo_n_nondiscrete(const AdequateSeq& f, const EngineParams& params) {
    MetricModel model(ModelKind::NaturalLine, Point::integer1(1));
    TameSet uni = universe_of_model(model);
    DemoNReport rep;

    // the collections of the statement, represented by the constructed
    // ladder set per family member and by the line itself
    auto family = default_family();
    Collection A{"asdim0", {}};
    for (const auto& g : family)
        A.members.push_back({"ladder-" + g.tag(), build_asdim0_set(g, params.horizon)});
    Collection C{"line", {{"naturals", make_lattice_all(model)}}};
    rep.verdict = delta_infinity(model, uni, A, C, family, params);

    // coverage: the tiered neighborhood of the f-ladder swallows an initial
    // segment of the line
    auto ladder = build_asdim0_set(f, params.horizon);
    auto U = u_set(model, uni, ladder, f, model.basepoint, params.horizon);
    i64 covered = 0;
    for (i64 v = 1; v <= params.horizon; ++v) {
        if (!U.contains(Point::integer1(v))) break;
        covered = v;
    }
    rep.covered_through = covered;

    // r-component diameters of the ladder within the horizon
    auto view = ladder.enumerate(params.horizon);
    std::vector<i64> vals;
    for (const auto& p : view) vals.push_back(p.h[0] / 2);
    std::sort(vals.begin(), vals.end());
    rep.asdim_zero_evidence = true;
    for (i64 r = 1; r <= 10; ++r) {
        i64 worst = 0, start = vals.empty() ? 0 : vals.front(), prev = start;
        for (size_t i = 1; i < vals.size(); ++i) {
            if (vals[i] - prev > r) {
                worst = std::max(worst, prev - start);
                start = vals[i];
            }
            prev = vals[i];
        }
        worst = std::max(worst, prev - start);
        rep.component_diameters.push_back({r, worst});
        // gaps inside block n exceed r once n > r, so diameters stay pinned
        // near the block where the step passes r
        const i64 bound = f(r + 3);
        if (worst > bound) rep.asdim_zero_evidence = false;
    }
    return rep;
}

Report DemoNReport::to_report() const {
    Report r;
    r.add("demo", "n-nondiscrete");
    r.add("verdict", infinity_outcome_name(verdict.outcome));
    r.add("covered_through", covered_through);
    for (const auto& [rad, diam] : component_diameters)
        r.add("component_diameter.r" + std::to_string(rad), diam);
    r.add_bool("asdim_zero_evidence", asdim_zero_evidence);
    return r;
}

DemoSquaresReport demo_squares(const EngineParams& params) {
    MetricModel model(ModelKind::NaturalLine);
    const std::array<std::string, 3> vars{"n", "", ""};
    TameSet uni = make_seq(model, parse_poly("n^2", vars));

    std::vector<std::pair<std::string, TameSet>> sets;
    sets.push_back({"all-squares", uni});
    sets.push_back({"even-squares", make_seq(model, parse_poly("4n^2", vars))});
    sets.push_back({"odd-squares", make_seq(model, parse_poly("4n^2+4n+1", vars))});
    sets.push_back({"fourth-powers", make_seq(model, parse_poly("n^4", vars))});

    DemoSquaresReport rep;
    rep.relation = class_delta(model, uni, sets, default_family(), params);
    rep.discrete = rep.relation.conclusive && rep.relation.partition.classes.size() >= 4 &&
                   rep.relation.is_identity();
    return rep;
}

Report DemoSquaresReport::to_report() const {
    Report r;
    r.add("demo", "squares-discrete");
    r.add("classes", static_cast<i64>(relation.partition.classes.size()));
    r.add_bool("conclusive", relation.conclusive);
    r.add_bool("identity_relation", relation.is_identity());
    r.add_bool("discrete", discrete);
    return r;
}

}  // namespace coarseprox
