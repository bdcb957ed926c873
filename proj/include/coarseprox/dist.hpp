#pragma once

// Distance computations between tame sets: point-to-set with triangle
// certificates, truncated pair distances, pair profiles over a radius grid,
// and Hausdorff profiles. Values are exact up to an optional saturation cap.

#include <optional>
#include <utility>

#include "coarseprox/model.hpp"
#include "coarseprox/profile.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

struct PointSetDist {
    ExactDist value;
    bool exact = false;
    std::optional<Point> witness;
};

// min over members of S (within the horizon ball around the basepoint, or
// closer) of d(x, .); infinity when no member is in range.
PointSetDist dist_point_set(const MetricModel& model, const Point& x, const TameSet& S,
                            i64 horizon);

struct TruncatedDist {
    ExactDist value;
    bool exact = false;
    bool saturated = false;
    std::optional<std::pair<Point, Point>> witness;
};

struct PairProfile {
    DistanceProfile profile;
    std::vector<std::optional<std::pair<Point, Point>>> witnesses;  // per entry
};

// d(A \ B(x0,r), B \ B(x0,r)) over all grid radii at once, over pairs inside
// the horizon ball. Pass saturation > 0 to cap exact search effort.
PairProfile compute_pair_profile(const MetricModel& model, const TameSet& A, const TameSet& B,
                                 const std::vector<i64>& grid, i64 horizon, i64 saturation);

TruncatedDist set_distance_truncated(const MetricModel& model, const TameSet& A, const TameSet& B,
                                     i64 radius, i64 horizon, i64 saturation = 0);

// One-sided sup over points of A and B within each radius of the distance to
// the other set; evidence for the Hausdorff distance.
DistanceProfile hausdorff_profile(const MetricModel& model, const TameSet& A, const TameSet& B,
                                  const std::vector<i64>& radii, i64 horizon, i64 saturation);

// First member found with d(member, basepoint) > r, or nullopt. Uses
// enumeration when affordable and deterministic direction probes otherwise.
std::optional<Point> find_member_beyond(const MetricModel& model, const TameSet& S, i64 r,
                                        i64 horizon);

// Deterministic membership samples with d(., x0) in [min_norm, horizon];
// for dense sets probed along a fixed direction table.
std::vector<Point> sample_members(const TameSet& s, const Point& x0, i64 min_norm, i64 horizon,
                                  size_t budget);

bool set_fully_enumerated(const TameSet& S, i64 horizon);
bool set_is_empty(const TameSet& S);

}  // namespace coarseprox
