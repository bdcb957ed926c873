#pragma once

// Tiered coarse neighborhoods U_{x0}(A, f) and the two separator
// constructions witnessing the strong axiom: the annular build (a tube of
// growing width around B outside certified radii) and the half-plane build
// (points at least as close to B as to A).

#include "coarseprox/adequate.hpp"
#include "coarseprox/engine.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

// x lies in U_{x0}(A, f) iff x is in A, or d(x, A) < n* where n* is the
// largest n with f(n) <= d(x, x0).
bool u_membership(const MetricModel& model, const TameSet& A, const AdequateSeq& f,
                  const Point& x0, const Point& x, i64 horizon);

TameSet u_set(const MetricModel& model, const TameSet& universe, const TameSet& A,
              const AdequateSeq& f, const Point& x0, i64 horizon);

struct SeparatorReport {
    TameSet separator;
    Verdict verdict_first_vs_sep;        // A against E
    Verdict verdict_complement_vs_second;  // X \ E against B
    std::vector<i64> radii;              // extracted certificate radii
    bool inconclusive = false;
    std::string note;

    bool witnessed() const {
        return !inconclusive && verdict_first_vs_sep.divergent() &&
               verdict_complement_vs_second.divergent();
    }
};

// Separator from certified truncation radii: E = B together with the
// n-neighborhoods of B outside radius r_n, where the truncated distance
// exceeds n^2 at r_n and the radii gaps exceed n + 1.
SeparatorReport separator_annular(const MetricModel& model, const TameSet& universe,
                                  const TameSet& A, const TameSet& B, const EngineParams& params);

// Separator E = { x : d(x, B) <= d(x, A) } with certified scans.
SeparatorReport separator_voronoi(const MetricModel& model, const TameSet& universe,
                                  const TameSet& A, const TameSet& B, const EngineParams& params);

}  // namespace coarseprox
