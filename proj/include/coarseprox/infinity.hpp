#pragma once

// The hyperspace at infinity: closeness between collections of unbounded
// sets over a finite family of adequate sequences, partitions into
// finite-Hausdorff-distance classes, the induced class-level relation, the
// zero-dimensional ladder set, and the three flagship demonstrations.
//
// Closeness at infinity is only ever "up to family": the universal
// quantifier over adequate sequences is replaced by a named finite family
// recorded in the verdict. A negative outcome carries a single witnessing
// sequence, which is a genuine certificate.

#include "coarseprox/adequate.hpp"
#include "coarseprox/axioms.hpp"
#include "coarseprox/engine.hpp"
#include "coarseprox/report.hpp"

namespace coarseprox {

struct Collection {
    std::string name;
    std::vector<std::pair<std::string, TameSet>> members;  // all unbounded
};

struct InfinityVerdict {
    enum class Outcome { CloseUpToFamily, NotClose, Inconclusive };
    Outcome outcome = Outcome::Inconclusive;
    // For each family member that passed: the passing pair of member names.
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>> passes;
    std::string witness_tag;  // NOT-CLOSE: the witnessing sequence
    std::string note;

    bool close() const { return outcome == Outcome::CloseUpToFamily; }
    bool not_close() const { return outcome == Outcome::NotClose; }
};
std::string infinity_outcome_name(InfinityVerdict::Outcome o);

std::vector<AdequateSeq> default_family();

InfinityVerdict delta_infinity(const MetricModel& model, const TameSet& universe,
                               const Collection& A, const Collection& C,
                               const std::vector<AdequateSeq>& family,
                               const EngineParams& params);

struct PhiPartition {
    std::vector<std::vector<size_t>> classes;  // indices into the input sets
    bool conclusive = false;
    std::vector<std::string> blockers;  // inconclusive pairs, if any
    bool transitive_consistent = false;
};
PhiPartition phi_classes(const MetricModel& model,
                         const std::vector<std::pair<std::string, TameSet>>& sets,
                         const EngineParams& params);

struct ClassRelation {
    PhiPartition partition;
    // related[i][j] per class pair; diagonal true by reflexivity
    std::vector<std::vector<bool>> related;
    std::vector<std::vector<std::string>> witness;  // witnessing tag per NOT-CLOSE pair
    bool conclusive = false;
    bool is_identity() const;
};
ClassRelation class_delta(const MetricModel& model, const TameSet& universe,
                          const std::vector<std::pair<std::string, TameSet>>& sets,
                          const std::vector<AdequateSeq>& family, const EngineParams& params);

// Ladder set for the non-discreteness demonstration: blocks of arithmetic
// progressions with growing step, covering enough of the line that its
// tiered neighborhood is everything. Unbounded with zero-dimensional
// large-scale structure (r-components of uniformly bounded diameter).
TameSet build_asdim0_set(const AdequateSeq& f, i64 horizon);

struct DemoZReport {
    std::vector<Collection> groups;
    std::vector<std::tuple<std::string, std::string, InfinityVerdict>> pair_verdicts;
    bool all_not_close = false;
    std::string witness_tag;
    Report to_report() const;
};
DemoZReport demo_z_components(const EngineParams& params, i64 basepoint = 0);

struct DemoNReport {
    InfinityVerdict verdict;
    i64 covered_through = 0;  // the tiered neighborhood covers [1, this]
    std::vector<std::pair<i64, i64>> component_diameters;  // (r, max diameter)
    bool asdim_zero_evidence = false;
    Report to_report() const;
};
DemoNReport demo_n_nondiscrete(const AdequateSeq& f, const EngineParams& params);

struct DemoSquaresReport {
    ClassRelation relation;
    bool discrete = false;  // identity relation on at least 4 classes
    Report to_report() const;
};
DemoSquaresReport demo_squares(const EngineParams& params);

}  // namespace coarseprox
