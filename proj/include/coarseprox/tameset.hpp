#pragma once

// Tame sets: finitely described, lazily enumerable subsets of a metric
// model. Enumeration within any ball around the origin is exact and
// monotone; membership agrees with enumeration. Every engine certificate
// rests on these two guarantees.

#include <unordered_map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "coarseprox/geometry.hpp"
#include "coarseprox/model.hpp"
#include "coarseprox/poly.hpp"

namespace coarseprox {

enum class BoundTag { Bounded, Unbounded, Unknown };

struct NearestHit {
    Point point;
    i64 sq = -1;
};

class SetNode;
using NodePtr = std::shared_ptr<const SetNode>;

// Uniform grid over cached enumeration points, for exact nearest queries.
class GridIndex {
public:
    void build(std::shared_ptr<const std::vector<Point>> pts, int dim);
    std::optional<NearestHit> nearest(const Point& q, i64 cap_units, const Point& norm_center,
                                      i64 min_norm_units, i64 dist_floor = 0) const;
    bool built() const { return pts_ != nullptr; }
    const std::vector<Point>* snapshot() const { return pts_.get(); }

private:
    static constexpr i64 kCellHalves = 64;
    std::unordered_map<i64, std::vector<uint32_t>> cells_;
    std::shared_ptr<const std::vector<Point>> pts_;
    int dim_ = 1;
    i64 key_of_cell(i64 cx, i64 cy, i64 cz) const;
};

class SetNode {
public:
    enum class Kind { Generic, CoreDistFilter, Complement };

    virtual ~SetNode() = default;
    virtual int dim() const = 0;
    virtual bool contains(const Point& p) const = 0;
    virtual void generate(i64 radius_units, std::vector<Point>& out) const = 0;
    virtual BoundTag bound_tag() const = 0;
    virtual std::optional<i64> extent_units() const { return std::nullopt; }
    virtual i64 estimate_count(i64 radius_units) const = 0;
    virtual bool integer_only() const { return true; }
    virtual std::string describe() const = 0;
    virtual Kind kind() const { return Kind::Generic; }

    // Enumeration snapshots; points sorted by (squared norm, lex). Regrowth
    // makes a fresh snapshot so existing views stay valid.
    struct Cache {
        mutable std::recursive_mutex mu;
        i64 radius = -1;
        std::shared_ptr<const std::vector<Point>> pts;
        std::shared_ptr<const std::vector<i64>> sqnorms;
        GridIndex index;
    };
    Cache& cache() const { return cache_; }

protected:
    bool contains_via_enumeration(const Point& p) const;

private:
    mutable Cache cache_;
};

// View of an enumeration prefix; shares ownership of its snapshot.
struct EnumView {
    std::shared_ptr<const std::vector<Point>> pts;
    size_t count = 0;
    const Point* begin() const { return pts->data(); }
    const Point* end() const { return pts->data() + count; }
    size_t size() const { return count; }
    bool empty() const { return count == 0; }
    const Point& operator[](size_t i) const { return (*pts)[i]; }
};

class TameSet {
public:
    TameSet() = default;
    explicit TameSet(NodePtr node) : node_(std::move(node)) {}

    bool valid() const { return node_ != nullptr; }
    int dim() const { return node_->dim(); }
    bool contains(const Point& p) const { return node_->contains(p); }
    BoundTag bound_tag() const { return node_->bound_tag(); }
    std::optional<i64> extent_units() const { return node_->extent_units(); }
    bool integer_only() const { return node_->integer_only(); }
    std::string describe() const { return node_->describe(); }
    SetNode::Kind node_kind() const { return node_->kind(); }
    const SetNode* node() const { return node_.get(); }
    NodePtr node_ptr() const { return node_; }

    static constexpr i64 kEnumCap = 4'000'000;
    bool enumerable_at(i64 radius_units) const {
        return node_->estimate_count(radius_units) <= kEnumCap;
    }

    // All members within the closed ball of the given radius about the
    // origin, sorted by (squared norm, lex). Monotone: a larger radius only
    // extends the prefix.
    EnumView enumerate(i64 radius_units) const;

    // Exact nearest member x of this set to q with d(x, q) <= cap and
    // d(x, norm_center) >= min_norm (pass min_norm <= 0 for no constraint).
    std::optional<NearestHit> nearest_upto(const Point& q, i64 cap_units, const Point& norm_center,
                                           i64 min_norm_units, i64 dist_floor = 0) const;

    ExactDist max_member_norm(i64 radius_units, const Point& center) const;

private:
    NodePtr node_;
    void ensure_enumerated(i64 radius_units) const;
};

// Exact nearest over integer lattice rings; for sets that are cheap to test
// for membership but too dense to enumerate.
std::optional<NearestHit> nearest_member_by_rings(const TameSet& set, const Point& q,
                                                  i64 cap_units, const Point& norm_center,
                                                  i64 min_norm_units, i64 dist_floor = 0);

i64 isqrt_floor(i64 v);
i64 norm_ceil_units(const Point& p);

// --- constructors for the catalog primitives and combinators ---

TameSet make_seq(const MetricModel& model, const Poly& poly);
TameSet make_curve(const MetricModel& model, const std::vector<Poly>& coords);
TameSet make_ray(const MetricModel& model, const Point& dir, const Point& base);
TameSet make_graph_abs(const MetricModel& model);
TameSet make_quadrant1(const MetricModel& model);
TameSet make_lattice_all(const MetricModel& model);
TameSet make_points(const MetricModel& model, std::vector<Point> pts);
TameSet make_union(const MetricModel& model, std::vector<TameSet> parts);
TameSet make_shift(const MetricModel& model, const TameSet& inner, const Point& offset);
TameSet make_minus_ball(const MetricModel& model, const TameSet& inner, i64 radius_units,
                        const Point& center);
TameSet make_add_points(const MetricModel& model, const TameSet& inner, std::vector<Point> pts);
TameSet make_remove_points(const MetricModel& model, const TameSet& inner,
                           std::vector<Point> pts);
TameSet make_complement(const MetricModel& model, const TameSet& universe, const TameSet& inner);
TameSet make_intersection(const MetricModel& model, const TameSet& a, const TameSet& b);

// Set of universe points within a radius-indexed distance of a core set:
// members are the core plus every x with d(x, core) < t_k, where (R_k, t_k)
// is the largest schedule step with d(x, x0) >= R_k. Realizes both the
// coarse neighborhoods U(A, f) and the annular separator sets.
struct DistSchedule {
    std::vector<std::pair<i64, i64>> steps;  // (radius R_n, threshold t_n), radii increasing
    i64 thresh_at_sq(i64 sq_from_x0) const;
    i64 max_threshold() const;
};
TameSet make_core_dist_filter(const MetricModel& model, const TameSet& universe,
                              const TameSet& core, DistSchedule schedule, const Point& x0,
                              std::string label);

// Structural accessors used by the distance engine's specialized paths.
struct CoreDistFilterInfo {
    TameSet core;
    const DistSchedule* schedule;
    Point x0;
};
std::optional<CoreDistFilterInfo> as_core_dist_filter(const TameSet& s);
struct ComplementInfo {
    TameSet universe;
    TameSet inner;
};
std::optional<ComplementInfo> as_complement(const TameSet& s);

TameSet universe_of_model(const MetricModel& model);

}  // namespace coarseprox
