#include "coarseprox/axioms.hpp"

#include <algorithm>
#include <map>

namespace coarseprox {

namespace {

Verdict synth(Outcome o, std::string note, const EngineParams& params) {
    Verdict v;
    v.outcome = o;
    v.note = std::move(note);
    v.horizon = params.horizon;
    v.tau = params.tau;
    v.eps_cap = params.eps_cap;
    if (o == Outcome::Close) v.epsilon = 0;
    return v;
}

}  // namespace

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

CoarseProximityInstance metric_instance(const MetricModel& model, const TameSet& universe,
                                        const EngineParams& params) {
    CoarseProximityInstance inst;
    inst.name = "metric";
    inst.model = model;
    inst.universe = universe;
    inst.close = [model, params](const TameSet& a, const TameSet& b) {
        return decide_close(model, a, b, params);
    };
    inst.bounded = [model, params](const TameSet& s) {
        return effective_bounded(model, s, params);
    };
    inst.separator = [model, universe, params](const TameSet& a,
                                               const TameSet& b) -> std::optional<SeparatorReport> {
        return separator_annular(model, universe, a, b, params);
    };
    return inst;
}

CoarseProximityInstance discrete_instance(const MetricModel& model, const TameSet& universe,
                                          const EngineParams& params) {
    CoarseProximityInstance inst;
    inst.name = "discrete";
    inst.model = model;
    inst.universe = universe;
    auto bounded = [model, params](const TameSet& s) { return effective_bounded(model, s, params); };
    inst.bounded = bounded;
    inst.close = [model, params, bounded](const TameSet& a, const TameSet& b) {
        auto inter = make_intersection(model, a, b);
        auto eb = bounded(inter);
        if (!eb.bounded) return synth(Outcome::Close, "intersection unbounded", params);
        return synth(Outcome::Divergent, "intersection bounded: " + eb.why, params);
    };
    inst.separator = [model, universe, params,
                      inst](const TameSet& a, const TameSet& b) -> std::optional<SeparatorReport> {
        SeparatorReport rep;
        rep.separator = b;
        rep.note = "separator equals the second set";
        rep.verdict_first_vs_sep = inst.close(a, b);
        rep.verdict_complement_vs_second =
            inst.close(make_complement(model, universe, b), b);
        return rep;
    };
    return inst;
}

CoarseProximityInstance indiscrete_instance(const MetricModel& model, const TameSet& universe,
                                            const EngineParams& params) {
    CoarseProximityInstance inst;
    inst.name = "indiscrete";
    inst.model = model;
    inst.universe = universe;
    auto bounded = [model, params](const TameSet& s) { return effective_bounded(model, s, params); };
    inst.bounded = bounded;
    inst.close = [params, bounded](const TameSet& a, const TameSet& b) {
        if (!bounded(a).bounded && !bounded(b).bounded)
            return synth(Outcome::Close, "both unbounded", params);
        return synth(Outcome::Divergent, "a bounded side", params);
    };
    inst.separator = [model, universe, params, bounded, inst](
                         const TameSet& a, const TameSet& b) -> std::optional<SeparatorReport> {
        SeparatorReport rep;
        if (bounded(a).bounded) {
            rep.separator = make_complement(model, universe, a);
            rep.note = "first set bounded: separator is its complement";
            rep.verdict_first_vs_sep = inst.close(a, rep.separator);
            rep.verdict_complement_vs_second = inst.close(a, b);
            return rep;
        }
        rep.separator = b;
        rep.note = "second set bounded: separator equals it";
        rep.verdict_first_vs_sep = inst.close(a, b);
        rep.verdict_complement_vs_second =
            inst.close(make_complement(model, universe, b), b);
        return rep;
    };
    return inst;
}

std::vector<std::pair<std::string, CoarseProximityInstance>> broken_instances(
    const MetricModel& model, const TameSet& universe, const EngineParams& params) {
    std::vector<std::pair<std::string, CoarseProximityInstance>> out;

    {
        auto base = discrete_instance(model, universe, params);
        CoarseProximityInstance inst = base;
        inst.name = "broken-symmetry";
        inst.close = [base, params](const TameSet& a, const TameSet& b) {
            if (a.describe() > b.describe())
                return synth(Outcome::Divergent, "order-dependent refusal", params);
            return base.close(a, b);
        };
        out.push_back({"symmetry", inst});
    }
    {
        auto base = discrete_instance(model, universe, params);
        CoarseProximityInstance inst = base;
        inst.name = "broken-union";
        inst.close = [base, params](const TameSet& a, const TameSet& b) {
            if (a.describe().rfind("union(", 0) == 0 || b.describe().rfind("union(", 0) == 0)
                return synth(Outcome::Divergent, "refuses unions", params);
            return base.close(a, b);
        };
        out.push_back({"union", inst});
    }
    {
        auto base = discrete_instance(model, universe, params);
        CoarseProximityInstance inst = base;
        inst.name = "broken-boundedness";
        inst.close = [base, params](const TameSet& a, const TameSet& b) {
            const bool ba = base.bounded(a).bounded, bb = base.bounded(b).bounded;
            if (ba != bb) return synth(Outcome::Close, "relates bounded to unbounded", params);
            return base.close(a, b);
        };
        out.push_back({"boundedness", inst});
    }
    {
        auto base = discrete_instance(model, universe, params);
        CoarseProximityInstance inst = base;
        inst.name = "broken-intersection";
        inst.close = [params](const TameSet&, const TameSet&) {
            return synth(Outcome::Divergent, "relates nothing", params);
        };
        inst.separator = [base](const TameSet& a,
                                const TameSet& b) -> std::optional<SeparatorReport> {
            return base.separator(a, b);
        };
        out.push_back({"intersection", inst});
    }
    {
        auto base = discrete_instance(model, universe, params);
        CoarseProximityInstance inst = base;
        inst.name = "broken-strong";
        inst.separator = [base](const TameSet& a,
                                const TameSet& b) -> std::optional<SeparatorReport> {
            SeparatorReport rep;
            rep.separator = a;  // wrong side: A meets E unboundedly
            rep.verdict_first_vs_sep = base.close(a, a);
            rep.verdict_complement_vs_second = base.close(b, b);
            rep.note = "separator deliberately set to the first set";
            (void)b;
            return rep;
        };
        out.push_back({"strong", inst});
    }
    return out;
}

AxiomReport check_axioms(const CoarseProximityInstance& inst, const Catalog& catalog,
                         const EngineParams& params) {
    AxiomReport report;
    report.instance = inst.name;
    const auto& sets = catalog.sets;
    const size_t n = sets.size();

    std::map<std::pair<size_t, size_t>, Verdict> cache;
    auto v_of = [&](size_t i, size_t j) -> const Verdict& {
        auto key = std::make_pair(i, j);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, inst.close(sets[i].second, sets[j].second)).first;
        return it->second;
    };

    // (i) symmetry
    {
        AxiomResult r;
        r.axiom = "symmetry";
        r.status = CheckStatus::Pass;
        for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
            for (size_t j = i; j < n; ++j) {
                const auto& ij = v_of(i, j);
                const auto& ji = v_of(j, i);
                ++r.checked;
                if (ij.outcome != ji.outcome) {
                    r.status = CheckStatus::Fail;
                    r.counterexample = sets[i].first + "," + sets[j].first + ": " +
                                       outcome_name(ij.outcome) + " vs " + outcome_name(ji.outcome);
                    break;
                }
            }
        }
        report.results.push_back(r);
    }

    // (ii) union axiom over all triples
    {
        AxiomResult r;
        r.axiom = "union";
        r.status = CheckStatus::Pass;
        for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
            for (size_t j = i + 1; j < n && r.status == CheckStatus::Pass; ++j) {
                auto u = make_union(inst.model, {sets[i].second, sets[j].second});
                for (size_t k = 0; k < n; ++k) {
                    const auto& vi = v_of(i, k);
                    const auto& vj = v_of(j, k);
                    auto vu = inst.close(u, sets[k].second);
                    if (!vi.conclusive() || !vj.conclusive() || !vu.conclusive()) {
                        ++r.skipped;
                        continue;
                    }
                    ++r.checked;
                    const bool expect = vi.close() || vj.close();
                    if (vu.close() != expect) {
                        r.status = CheckStatus::Fail;
                        r.counterexample = "union(" + sets[i].first + "," + sets[j].first +
                                           ") vs " + sets[k].first;
                        break;
                    }
                }
            }
        }
        report.results.push_back(r);
    }

    // (iii) closeness forces both sides unbounded
    {
        AxiomResult r;
        r.axiom = "boundedness";
        r.status = CheckStatus::Pass;
        for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
            for (size_t j = i; j < n; ++j) {
                const auto& v = v_of(i, j);
                if (!v.close()) continue;
                ++r.checked;
                if (inst.bounded(sets[i].second).bounded || inst.bounded(sets[j].second).bounded) {
                    r.status = CheckStatus::Fail;
                    r.counterexample = sets[i].first + "," + sets[j].first + " close with a bounded side";
                    break;
                }
            }
        }
        report.results.push_back(r);
    }

    // (v) unbounded intersection forces closeness
    {
        AxiomResult r;
        r.axiom = "intersection";
        r.status = CheckStatus::Pass;
        for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
            for (size_t j = i; j < n; ++j) {
                auto inter = make_intersection(inst.model, sets[i].second, sets[j].second);
                if (inst.bounded(inter).bounded) continue;
                const auto& v = v_of(i, j);
                if (!v.conclusive()) {
                    ++r.skipped;
                    continue;
                }
                ++r.checked;
                if (!v.close()) {
                    r.status = CheckStatus::Fail;
                    r.counterexample =
                        sets[i].first + "," + sets[j].first + " unbounded intersection yet " +
                        outcome_name(v.outcome);
                    break;
                }
            }
        }
        report.results.push_back(r);
    }

    // (iv) strong axiom via the instance's separator
    {
        AxiomResult r;
        r.axiom = "strong";
        if (!inst.separator) {
            r.status = CheckStatus::Inconclusive;
            r.counterexample = "no separator constructor";
        } else {
            r.status = CheckStatus::Pass;
            for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
                for (size_t j = i; j < n; ++j) {
                    const auto& v = v_of(i, j);
                    if (!v.divergent()) continue;
                    auto rep = inst.separator(sets[i].second, sets[j].second);
                    if (!rep) {
                        ++r.skipped;
                        continue;
                    }
                    if (rep->inconclusive) {
                        ++r.skipped;
                        continue;
                    }
                    ++r.checked;
                    if (!rep->witnessed()) {
                        r.status = CheckStatus::Fail;
                        r.counterexample =
                            sets[i].first + "," + sets[j].first + ": separator verdicts " +
                            outcome_name(rep->verdict_first_vs_sep.outcome) + "/" +
                            outcome_name(rep->verdict_complement_vs_second.outcome);
                        break;
                    }
                }
            }
            if (r.status == CheckStatus::Pass && r.checked == 0) {
                r.status = CheckStatus::Inconclusive;
                r.counterexample = "no conclusive divergent pairs to separate";
            }
        }
        report.results.push_back(r);
    }

    // converse of the strong axiom: a witnessed separator forces divergence
    {
        AxiomResult r;
        r.axiom = "strong-converse";
        r.status = CheckStatus::Pass;
        if (!inst.separator) {
            r.status = CheckStatus::Inconclusive;
        } else {
            for (size_t i = 0; i < n && r.status == CheckStatus::Pass; ++i) {
                for (size_t j = i; j < n; ++j) {
                    const auto& v = v_of(i, j);
                    if (!v.divergent()) continue;
                    auto rep = inst.separator(sets[i].second, sets[j].second);
                    if (!rep || !rep->witnessed()) continue;
                    ++r.checked;
                    if (v.close()) {
                        r.status = CheckStatus::Fail;
                        r.counterexample = sets[i].first + "," + sets[j].first;
                        break;
                    }
                }
            }
        }
        report.results.push_back(r);
    }

    return report;
}

Report AxiomReport::to_report() const {
    Report rep;
    rep.add("instance", instance);
    for (const auto& r : results) {
        rep.add("axiom." + r.axiom + ".status", check_status_name(r.status));
        rep.add("axiom." + r.axiom + ".checked", static_cast<i64>(r.checked));
        rep.add("axiom." + r.axiom + ".skipped", static_cast<i64>(r.skipped));
        if (!r.counterexample.empty())
            rep.add("axiom." + r.axiom + ".counterexample", r.counterexample);
    }
    rep.add_bool("all_pass", all_pass());
    return rep;
}

NbhdResult coarse_nbhd(const CoarseProximityInstance& inst, const TameSet& A, const TameSet& B) {
    NbhdResult out;
    auto comp = make_complement(inst.model, inst.universe, B);
    out.closeness = inst.close(A, comp);
    out.holds = out.closeness.divergent();
    out.refuted = out.closeness.close();
    return out;
}

NbhdResult coarse_nbhd_metric(const MetricModel& model, const TameSet& universe, const TameSet& A,
                              const TameSet& B, const EngineParams& params) {
    NbhdResult out;
    auto comp = make_complement(model, universe, B);
    out.closeness = decide_close(model, A, comp, params);
    out.holds = out.closeness.divergent();
    out.refuted = out.closeness.close();
    return out;
}

Report DerivedReport::to_report() const {
    Report rep;
    for (const auto& i : items) {
        rep.add("derived." + i.name + ".status", check_status_name(i.status));
        if (!i.detail.empty()) rep.add("derived." + i.name + ".detail", i.detail);
    }
    rep.add_bool("all_pass", all_pass());
    return rep;
}

DerivedReport check_derived(const MetricModel& model, const Catalog& catalog,
                            const EngineParams& params) {
    DerivedReport out;
    const TameSet& uni = catalog.universe;
    auto nbhd = [&](const TameSet& a, const TameSet& b) {
        return coarse_nbhd_metric(model, uni, a, b, params);
    };

    // the whole space is coarsely near every unbounded catalog set
    {
        DerivedItem it;
        it.name = "space-near-unbounded";
        it.status = CheckStatus::Pass;
        int checked = 0;
        for (const auto& [name, s] : catalog.sets) {
            if (effective_bounded(model, s, params).bounded) continue;
            auto v = decide_close(model, uni, s, params);
            ++checked;
            if (!v.close()) {
                it.status = CheckStatus::Fail;
                it.detail = name + ": " + outcome_name(v.outcome);
                break;
            }
        }
        if (checked == 0) it.status = CheckStatus::Inconclusive;
        out.items.push_back(it);
    }

    // bounded sets have every set as a coarse neighborhood
    {
        DerivedItem it;
        it.name = "bounded-has-all-neighborhoods";
        it.status = CheckStatus::Inconclusive;
        for (const auto& [bname, bset] : catalog.sets) {
            if (!effective_bounded(model, bset, params).bounded) continue;
            it.status = CheckStatus::Pass;
            for (const auto& [cname, cset] : catalog.sets) {
                auto r = nbhd(bset, cset);
                if (!r.holds) {
                    it.status = CheckStatus::Fail;
                    it.detail = bname + " not << " + cname;
                    break;
                }
            }
            break;
        }
        out.items.push_back(it);
    }

    // neighborhood containment, subset monotonicity, transitivity through
    // tiered neighborhoods of the first unbounded sparse catalog set
    const i64 enum_radius = params.horizon + 2;
    const TameSet* base = nullptr;
    std::string base_name;
    for (const auto& [name, s] : catalog.sets) {
        if (s.bound_tag() == BoundTag::Unbounded && s.enumerable_at(enum_radius) &&
            s.integer_only()) {
            base = &s;
            base_name = name;
            break;
        }
    }
    if (base) {
        AdequateSeq f = AdequateSeq::from_poly(parse_poly("n^3", {"n", "", ""}));
        AdequateSeq g = star_refine(f);
        auto Uf = u_set(model, uni, *base, f, model.basepoint, params.horizon);
        auto Ug = u_set(model, uni, *base, g, model.basepoint, params.horizon);
        {
            DerivedItem it;
            it.name = "nbhd-contains-up-to-bounded";
            auto r = nbhd(*base, Uf);
            if (!r.conclusive()) {
                it.status = CheckStatus::Inconclusive;
            } else if (!r.holds) {
                it.status = CheckStatus::Fail;
                it.detail = base_name + " not << its tiered neighborhood";
            } else {
                // members of the small side outside the neighborhood stay bounded
                bool ok = true;
                for (const auto& p : base->enumerate(params.horizon)) {
                    if (!Uf.contains(p) && sq_gt_units(sq_norm(p), params.grid.back())) ok = false;
                }
                it.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
            }
            out.items.push_back(it);
        }
        {
            DerivedItem it;
            it.name = "nbhd-subset-monotone";
            auto sub = make_minus_ball(model, *base, 50, model.basepoint);
            auto r = nbhd(sub, Uf);
            it.status = r.holds ? CheckStatus::Pass
                                : (r.refuted ? CheckStatus::Fail : CheckStatus::Inconclusive);
            out.items.push_back(it);
        }
        {
            DerivedItem it;
            it.name = "nbhd-transitive";
            auto r1 = nbhd(*base, Ug);
            auto r2 = nbhd(Ug, Uf);
            auto r3 = nbhd(*base, Uf);
            if (r1.holds && r2.holds) {
                it.status = r3.holds ? CheckStatus::Pass : CheckStatus::Fail;
                if (!r3.holds) it.detail = "chain holds but the composite fails";
            } else {
                it.status = CheckStatus::Inconclusive;
                it.detail = "chain links not conclusive";
            }
            out.items.push_back(it);
        }
        {
            DerivedItem it;
            it.name = "nbhd-complement-swap";
            auto lhs = nbhd(*base, Uf);
            auto compB = make_complement(model, uni, Uf);
            auto compA = make_complement(model, uni, *base);
            auto rhs = nbhd(compB, compA);
            if (lhs.conclusive() && rhs.conclusive()) {
                it.status = (lhs.holds == rhs.holds) ? CheckStatus::Pass : CheckStatus::Fail;
            } else {
                it.status = CheckStatus::Inconclusive;
            }
            out.items.push_back(it);
        }
    }

    // interpolation: a neighborhood admits an intermediate one through the
    // separator construction
    {
        DerivedItem it;
        it.name = "interpolation";
        it.status = CheckStatus::Inconclusive;
        // find a conclusive divergent sparse pair (A, C): then A << X\C and
        // the separator of (A, C) interpolates
        for (size_t i = 0; i < catalog.sets.size() && it.status == CheckStatus::Inconclusive;
             ++i) {
            for (size_t j = 0; j < catalog.sets.size(); ++j) {
                if (i == j) continue;
                const auto& A = catalog.sets[i].second;
                const auto& C = catalog.sets[j].second;
                if (A.bound_tag() != BoundTag::Unbounded || C.bound_tag() != BoundTag::Unbounded)
                    continue;
                auto v = decide_close(model, A, C, params);
                if (!v.divergent()) continue;
                auto rep = separator_annular(model, uni, A, C, params);
                if (rep.inconclusive) continue;
                it.status = rep.witnessed() ? CheckStatus::Pass : CheckStatus::Fail;
                it.detail = catalog.sets[i].first + " << complement(" + catalog.sets[j].first +
                            ") via separator";
                break;
            }
        }
        out.items.push_back(it);
    }

    // related pairs share coarse neighborhoods (forward direction)
    {
        DerivedItem it;
        it.name = "related-share-neighborhoods";
        it.status = CheckStatus::Inconclusive;
        for (const auto& t : catalog.truths) {
            if (t.kind != GroundTruth::Kind::Phi) continue;
            const TameSet& A = catalog.require_set(t.a);
            const TameSet& B = catalog.require_set(t.b);
            it.status = CheckStatus::Pass;
            int used = 0;
            for (const auto& [cname, cset] : catalog.sets) {
                if (used >= 5) break;
                auto ra = nbhd(A, cset);
                auto rb = nbhd(B, cset);
                if (!ra.conclusive() || !rb.conclusive()) continue;
                ++used;
                if (ra.holds != rb.holds) {
                    it.status = CheckStatus::Fail;
                    it.detail = t.a + "/" + t.b + " disagree at " + cname;
                    break;
                }
            }
            if (used == 0) it.status = CheckStatus::Inconclusive;
            break;
        }
        out.items.push_back(it);
    }

    // closeness is invariant under replacing sets by related ones
    {
        DerivedItem it;
        it.name = "closeness-respects-relation";
        it.status = CheckStatus::Inconclusive;
        std::vector<std::pair<std::string, std::string>> phi_pairs;
        for (const auto& t : catalog.truths)
            if (t.kind == GroundTruth::Kind::Phi) phi_pairs.push_back({t.a, t.b});
        if (phi_pairs.size() >= 2) {
            const TameSet& A = catalog.require_set(phi_pairs[0].first);
            const TameSet& C = catalog.require_set(phi_pairs[0].second);
            const TameSet& B = catalog.require_set(phi_pairs[1].first);
            const TameSet& D = catalog.require_set(phi_pairs[1].second);
            auto v1 = decide_close(model, A, B, params);
            auto v2 = decide_close(model, C, D, params);
            if (v1.conclusive() && v2.conclusive()) {
                it.status = (v1.close() == v2.close()) ? CheckStatus::Pass : CheckStatus::Fail;
                it.detail = phi_pairs[0].first + "," + phi_pairs[1].first + " vs " +
                            phi_pairs[0].second + "," + phi_pairs[1].second;
            }
        }
        out.items.push_back(it);
    }

    return out;
}

}  // namespace coarseprox
