#pragma once

// Integer-polynomial point maps between models, coarse-map checking
// (properness + bornology moduli), closeness of maps, preimage/image tame
// sets, and the induced map on finite-Hausdorff-distance classes.

#include <string>
#include <vector>

#include "coarseprox/engine.hpp"
#include "coarseprox/poly.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

struct PointMap {
    MetricModel domain, codomain;
    std::vector<Poly> coords;  // one per codomain coordinate, vars x,y,z

    Point apply(const Point& p) const;
    std::string str() const;
};

PointMap compose(const PointMap& outer, const PointMap& inner);

struct CoarseMapModuli {
    // T[n-1]: least k with every enumerated preimage of the open n-ball
    // about y0 inside the open k-ball about x0; divergent when preimages
    // keep growing at the horizon.
    std::vector<i64> T;
    std::vector<bool> T_divergent;
    // rho[n-1]: greatest sampled m (capped) such that pairs at distance <= m
    // map within distance < n; floored at 1.
    std::vector<i64> rho;
    i64 range = 0;
    i64 pair_cap = 0;
};
CoarseMapModuli moduli_estimate(const PointMap& h, i64 horizon, i64 range = 64);

struct CoarseCheck {
    bool proper = false;
    bool bornologous = false;
    std::string note;
    CoarseMapModuli moduli;
    bool pass() const { return proper && bornologous; }
};
CoarseCheck check_coarse(const PointMap& h, const EngineParams& params);

// Image and preimage as tame sets.
TameSet image_set(const PointMap& h, const TameSet& S);
TameSet preimage_set(const PointMap& h, const TameSet& domain_universe, const TameSet& target);

struct CpmCheck {
    bool bounded_preserved = false;
    bool closeness_preserved = false;
    std::vector<std::string> failures;
    bool agrees_with_coarse = false;
    bool pass() const { return bounded_preserved && closeness_preserved; }
};
// named_sets: catalog sets of the map's domain model; close_pairs/divergent
// pairs index into named_sets.
CpmCheck check_cpm(const PointMap& h, const std::vector<std::pair<std::string, TameSet>>& sets,
                   const std::vector<std::pair<size_t, size_t>>& close_pairs,
                   const EngineParams& params);

// sup_{d(x,x0)<=r} d(h(x), l(x)) over the grid; CLOSE iff bounded by the cap.
Verdict maps_close(const PointMap& h, const PointMap& l, const EngineParams& params);

struct InducedClassMap {
    std::vector<TameSet> images;   // one per representative
    bool well_defined = false;     // related reps map to related images
    std::vector<std::string> notes;
};
InducedClassMap induced_class_map(const PointMap& h, const std::vector<TameSet>& reps,
                                  const EngineParams& params);

}  // namespace coarseprox
