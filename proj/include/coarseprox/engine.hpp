#pragma once

// Semi-decision of metric coarse closeness at an explicit horizon.
//
// CLOSE is witnessed: a pair outside every grid radius at distance below the
// epsilon cap, with the grid reaching at least tau so a divergent pair would
// have had room to show itself. DIVERGENT needs a certified profile and one
// of two routes: the last entry exceeds tau, or the profile shows sustained
// growth (at least 4x over the first entry, 2x over the first quarter, still
// rising over the last entries). Everything else is INCONCLUSIVE. DIVERGENT
// is evidence at the horizon, not a proof.

#include <string>
#include <vector>

#include "coarseprox/dist.hpp"
#include "coarseprox/model.hpp"
#include "coarseprox/profile.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

struct EngineParams {
    i64 horizon = 10000;
    i64 tau = 64;       // divergence threshold
    i64 eps_cap = 32;   // closeness cap
    int grid_points = 16;
    std::vector<i64> grid;  // derived geometrically when empty

    i64 saturation() const { return 4 * tau; }
    void validate_and_fill();
    static EngineParams defaults() {
        EngineParams p;
        p.validate_and_fill();
        return p;
    }
};

enum class Outcome { Close, Divergent, Inconclusive };
std::string outcome_name(Outcome o);

struct PairWitness {
    i64 radius = 0;
    Point a, b;
    ExactDist d;
};

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    i64 epsilon = -1;  // CLOSE only: all grid entries witnessed below this
    std::vector<PairWitness> witnesses;
    DistanceProfile profile;
    i64 horizon = 0, tau = 0, eps_cap = 0;
    std::string note;

    bool conclusive() const { return outcome != Outcome::Inconclusive; }
    bool close() const { return outcome == Outcome::Close; }
    bool divergent() const { return outcome == Outcome::Divergent; }
};

Verdict decide_close(const MetricModel& model, const TameSet& A, const TameSet& B,
                     const EngineParams& params);

// Assemble a verdict from an already-computed pair profile; shared by the
// separator constructions, which produce their profiles through their own
// certified scans.
Verdict verdict_from_pair_profile(const PairProfile& pp, const EngineParams& params);

// The three equivalent characterizations of metric coarse closeness,
// each evaluated through its own route, plus the agreement flag.
struct CharacterizationReport {
    Verdict profile_form;   // bounded truncated distance at every scale
    Verdict witness_form;   // witness pairs outside every bounded region
    Verdict subset_form;    // unbounded subsets at finite Hausdorff distance
    TameSet greedy_a1, greedy_b1;
    bool conclusive = false;
    bool agree = false;
};
CharacterizationReport check_characterizations(const MetricModel& model, const TameSet& A,
                                               const TameSet& B, const EngineParams& params);

// Finite-Hausdorff-distance relation; bounded sets are related to each other
// (and to the empty set), never to unbounded ones.
Verdict phi_related(const MetricModel& model, const TameSet& A, const TameSet& B,
                    const EngineParams& params);

enum class Boundedness { Unbounded, Bounded, Inconclusive };
std::string boundedness_name(Boundedness b);
struct BoundednessVerdict {
    Boundedness outcome = Boundedness::Inconclusive;
    std::vector<Point> escape_witnesses;  // one beyond each grid radius when unbounded
    std::string note;
};
BoundednessVerdict is_unbounded(const MetricModel& model, const TameSet& S,
                                const EngineParams& params);

// Whether the engine treats the set as bounded for closeness purposes:
// declared bounded, or nothing found beyond the grid at the horizon.
struct EffectiveBound {
    bool bounded = false;
    std::string why;
};
EffectiveBound effective_bounded(const MetricModel& model, const TameSet& S,
                                 const EngineParams& params);

}  // namespace coarseprox
