#pragma once

// Abstract coarse-proximity instances (metric, discrete, indiscrete), the
// five-axiom harness checked extensionally over a catalog, coarse
// neighborhoods, and the derived-property checks. Axioms are checked over
// the catalog as the quantifier domain; inconclusive verdicts are reported
// and never counted as passes.

#include <functional>
#include <optional>

#include "coarseprox/engine.hpp"
#include "coarseprox/neighborhoods.hpp"
#include "coarseprox/report.hpp"
#include "coarseprox/setdsl.hpp"

namespace coarseprox {

struct CoarseProximityInstance {
    std::string name;
    MetricModel model;
    TameSet universe;
    std::function<Verdict(const TameSet&, const TameSet&)> close;
    std::function<EffectiveBound(const TameSet&)> bounded;
    // Called on conclusive non-close pairs; absent means the strong axiom is
    // reported inconclusive.
    std::function<std::optional<SeparatorReport>(const TameSet&, const TameSet&)> separator;
};

CoarseProximityInstance metric_instance(const MetricModel& model, const TameSet& universe,
                                        const EngineParams& params);
CoarseProximityInstance discrete_instance(const MetricModel& model, const TameSet& universe,
                                          const EngineParams& params);
CoarseProximityInstance indiscrete_instance(const MetricModel& model, const TameSet& universe,
                                            const EngineParams& params);

// Deliberately broken instances, one per axiom, for harness sanity checks.
std::vector<std::pair<std::string, CoarseProximityInstance>> broken_instances(
    const MetricModel& model, const TameSet& universe, const EngineParams& params);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string check_status_name(CheckStatus s);

struct AxiomResult {
    std::string axiom;
    CheckStatus status = CheckStatus::Inconclusive;
    int checked = 0;
    int skipped = 0;
    std::string counterexample;
};

struct AxiomReport {
    std::string instance;
    std::vector<AxiomResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (r.status != CheckStatus::Pass) return false;
        return true;
    }
    const AxiomResult* find(const std::string& axiom) const {
        for (const auto& r : results)
            if (r.axiom == axiom) return &r;
        return nullptr;
    }
    Report to_report() const;
};

AxiomReport check_axioms(const CoarseProximityInstance& inst, const Catalog& catalog,
                         const EngineParams& params);

// A << B held at verdict level: closeness(A, X \ B) divergent.
struct NbhdResult {
    Verdict closeness;
    bool holds = false;
    bool refuted = false;
    bool conclusive() const { return holds || refuted; }
};
NbhdResult coarse_nbhd(const CoarseProximityInstance& inst, const TameSet& A, const TameSet& B);
NbhdResult coarse_nbhd_metric(const MetricModel& model, const TameSet& universe, const TameSet& A,
                              const TameSet& B, const EngineParams& params);

struct DerivedItem {
    std::string name;
    CheckStatus status = CheckStatus::Inconclusive;
    std::string detail;
};
struct DerivedReport {
    std::vector<DerivedItem> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (i.status == CheckStatus::Fail) return false;
        return true;
    }
    Report to_report() const;
};

// Derived-lemma checks over a catalog; items that need sets missing from the
// catalog are reported inconclusive with a note.
DerivedReport check_derived(const MetricModel& model, const Catalog& catalog,
                            const EngineParams& params);

}  // namespace coarseprox
