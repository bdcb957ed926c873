#include "coarseprox/tameset.hpp"

#include <algorithm>
#include <cmath>

namespace coarseprox {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool norm_lex_less(const Point& a, const Point& b) {
    const i64 na = sq_norm(a), nb = sq_norm(b);
    if (na != nb) return na < nb;
    return lex_less(a, b);
}

bool passes_min_norm(const Point& p, const Point& center, i64 min_norm_units) {
    if (min_norm_units <= 0) return true;
    return sq_ge_units(sq_dist(p, center), min_norm_units);
}

void update_best(std::optional<NearestHit>& best, const Point& p, i64 sq) {
    if (!best || sq < best->sq || (sq == best->sq && lex_less(p, best->point))) {
        best = NearestHit{p, sq};
    }
}

}  // namespace

i64 isqrt_floor(i64 v) {
    if (v < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

i64 norm_ceil_units(const Point& p) {
    // smallest integer u with u >= |p|, exactly
    const i64 sq = sq_norm(p);
    i64 u = (isqrt_floor(sq) + 1) / 2;
    while (4 * u * u < sq) ++u;
    while (u > 0 && 4 * (u - 1) * (u - 1) >= sq) --u;
    return u;
}

// ---------- GridIndex ----------

i64 GridIndex::key_of_cell(i64 cx, i64 cy, i64 cz) const {
    constexpr i64 M = i64{1} << 21, OFF = i64{1} << 20;
    return ((cx + OFF) * M + (cy + OFF)) * M + (cz + OFF);
}

void GridIndex::build(std::shared_ptr<const std::vector<Point>> pts, int dim) {
    cells_.clear();
    dim_ = dim;
    pts_ = std::move(pts);
    const auto& v = *pts_;
    for (uint32_t i = 0; i < v.size(); ++i) {
        const Point& p = v[i];
        const i64 cx = floor_div(p.h[0], kCellHalves);
        const i64 cy = dim_ > 1 ? floor_div(p.h[1], kCellHalves) : 0;
        const i64 cz = dim_ > 2 ? floor_div(p.h[2], kCellHalves) : 0;
        cells_[key_of_cell(cx, cy, cz)].push_back(i);
    }
}

std::optional<NearestHit> GridIndex::nearest(const Point& q, i64 cap_units,
                                             const Point& norm_center, i64 min_norm_units,
                                             i64 dist_floor) const {
    if (!pts_) return std::nullopt;
    const auto& v = *pts_;
    const i64 qcx = floor_div(q.h[0], kCellHalves);
    const i64 qcy = dim_ > 1 ? floor_div(q.h[1], kCellHalves) : 0;
    const i64 qcz = dim_ > 2 ? floor_div(q.h[2], kCellHalves) : 0;
    const i64 cap_sq = 4 * cap_units * cap_units;
    const i64 floor_sq = 4 * dist_floor * dist_floor;
    std::optional<NearestHit> best;

    auto scan_cell = [&](i64 cx, i64 cy, i64 cz) {
        auto it = cells_.find(key_of_cell(cx, cy, cz));
        if (it == cells_.end()) return;
        for (uint32_t idx : it->second) {
            const Point& p = v[idx];
            const i64 sq = sq_dist(p, q);
            if (sq > cap_sq || sq < floor_sq) continue;
            if (best && sq > best->sq) continue;
            if (!passes_min_norm(p, norm_center, min_norm_units)) continue;
            update_best(best, p, sq);
        }
    };

    const i64 start_k = std::max<i64>(0, (2 * dist_floor * 5) / (9 * kCellHalves) - 1);
    for (i64 k = start_k;; ++k) {
        if (k > 0) {
            const i64 lb = (k - 1) * kCellHalves;
            const i64 lb_sq = lb * lb;
            if (lb_sq > cap_sq) break;
            if (best && lb_sq > best->sq) break;
        }
        if (dim_ == 1) {
            if (k == 0) {
                scan_cell(qcx, 0, 0);
            } else {
                scan_cell(qcx - k, 0, 0);
                scan_cell(qcx + k, 0, 0);
            }
        } else if (dim_ == 2) {
            for (i64 dx = -k; dx <= k; ++dx) {
                for (i64 dy = -k; dy <= k; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
                    scan_cell(qcx + dx, qcy + dy, 0);
                }
            }
        } else {
            for (i64 dx = -k; dx <= k; ++dx) {
                for (i64 dy = -k; dy <= k; ++dy) {
                    for (i64 dz = -k; dz <= k; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != k) continue;
                        scan_cell(qcx + dx, qcy + dy, qcz + dz);
                    }
                }
            }
        }
        if (k > (i64{1} << 24)) break;  // unreachable guard
    }
    return best;
}

// ---------- SetNode / TameSet enumeration machinery ----------

bool SetNode::contains_via_enumeration(const Point& p) const {
    // Exactness: enumeration up to |p| contains p iff p is a member.
    const i64 r = norm_ceil_units(p);
    {
        std::lock_guard<std::recursive_mutex> lk(cache_.mu);
        if (cache_.radius >= r && cache_.pts) {
            const auto& pts = *cache_.pts;
            auto it = std::lower_bound(pts.begin(), pts.end(), p, norm_lex_less);
            return it != pts.end() && *it == p;
        }
    }
    // Fall back: generate fresh (caller-side ensure_enumerated would also work,
    // but nodes cannot see the TameSet wrapper).
    std::vector<Point> out;
    generate(r, out);
    for (const auto& x : out)
        if (x == p) return true;
    return false;
}

void TameSet::ensure_enumerated(i64 radius_units) const {
    auto& c = node_->cache();
    std::lock_guard<std::recursive_mutex> lk(c.mu);
    if (c.radius >= radius_units) return;
    // Grow geometrically while the estimated size is cheap; otherwise grow
    // just past the request to avoid huge transient enumerations.
    i64 target = std::max<i64>(radius_units, 8);
    if (node_->estimate_count(target * 2) <= 1'000'000) {
        target *= 2;
    } else if (node_->estimate_count(target + target / 4) <= kEnumCap) {
        target += target / 4;
    }
    auto pts = std::make_shared<std::vector<Point>>();
    node_->generate(target, *pts);
    const i64 lim = 4 * target * target;
    std::erase_if(*pts, [&](const Point& p) { return sq_norm(p) > lim; });
    std::sort(pts->begin(), pts->end(), norm_lex_less);
    pts->erase(std::unique(pts->begin(), pts->end()), pts->end());
    auto sq = std::make_shared<std::vector<i64>>();
    sq->reserve(pts->size());
    for (const auto& p : *pts) sq->push_back(sq_norm(p));
    c.pts = std::move(pts);
    c.sqnorms = std::move(sq);
    c.radius = target;
    c.index = GridIndex{};
}

EnumView TameSet::enumerate(i64 radius_units) const {
    ensure_enumerated(radius_units);
    auto& c = node_->cache();
    std::lock_guard<std::recursive_mutex> lk(c.mu);
    const i64 lim = 4 * radius_units * radius_units;
    const auto& sq = *c.sqnorms;
    const size_t n = std::upper_bound(sq.begin(), sq.end(), lim) - sq.begin();
    return EnumView{c.pts, n};
}

std::optional<NearestHit> TameSet::nearest_upto(const Point& q, i64 cap_units,
                                                const Point& norm_center, i64 min_norm_units,
                                                i64 dist_floor) const {
    const i64 needed = norm_ceil_units(q) + cap_units + 1;
    if (enumerable_at(needed)) {
        ensure_enumerated(needed);
        auto& c = node_->cache();
        std::lock_guard<std::recursive_mutex> lk(c.mu);
        if (!c.index.built() || c.index.snapshot() != c.pts.get()) {
            c.index.build(c.pts, dim());
        }
        return c.index.nearest(q, cap_units, norm_center, min_norm_units, dist_floor);
    }
    if (!integer_only())
        throw std::logic_error("nearest_upto: dense set without integer support");
    return nearest_member_by_rings(*this, q, cap_units, norm_center, min_norm_units, dist_floor);
}

ExactDist TameSet::max_member_norm(i64 radius_units, const Point& center) const {
    auto view = enumerate(radius_units);
    if (view.empty()) return ExactDist::infinite();  // no members: treated as -inf by callers
    i64 best = -1;
    for (const auto& p : view) best = std::max(best, sq_dist(p, center));
    return ExactDist::from_sq(best);
}

std::optional<NearestHit> nearest_member_by_rings(const TameSet& set, const Point& q,
                                                  i64 cap_units, const Point& norm_center,
                                                  i64 min_norm_units, i64 dist_floor) {
    const int dim = set.dim();
    const i64 cap_sq = 4 * cap_units * cap_units;
    const i64 floor_sq = 4 * dist_floor * dist_floor;
    // center integer point (round halves toward even)
    std::array<i64, 3> c{0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = floor_div(q.h[i] + 1, 2);
    std::optional<NearestHit> best;

    auto try_point = [&](i64 x, i64 y, i64 z) {
        Point p{dim, {2 * x, 2 * y, 2 * z}};
        const i64 sq = sq_dist(p, q);
        if (sq > cap_sq || sq < floor_sq) return;
        if (best && sq > best->sq) return;
        if (!set.contains(p)) return;
        if (!passes_min_norm(p, norm_center, min_norm_units)) return;
        update_best(best, p, sq);
    };

    const i64 start_k = std::max<i64>(0, (dist_floor * 5) / 9 - 1);
    for (i64 k = start_k;; ++k) {
        if (k > 0) {
            const i64 lb = 2 * (k - 1);  // halves
            if (lb * lb > cap_sq) break;
            if (best && lb * lb > best->sq) break;
        }
        if (dim == 1) {
            if (k == 0) {
                try_point(c[0], 0, 0);
            } else {
                try_point(c[0] - k, 0, 0);
                try_point(c[0] + k, 0, 0);
            }
        } else if (dim == 2) {
            for (i64 dx = -k; dx <= k; ++dx) {
                for (i64 dy = -k; dy <= k; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
                    try_point(c[0] + dx, c[1] + dy, 0);
                }
            }
        } else {
            for (i64 dx = -k; dx <= k; ++dx) {
                for (i64 dy = -k; dy <= k; ++dy) {
                    for (i64 dz = -k; dz <= k; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != k) continue;
                        try_point(c[0] + dx, c[1] + dy, c[2] + dz);
                    }
                }
            }
        }
        if (k > (i64{1} << 24)) break;
    }
    return best;
}

// ---------- node implementations ----------

namespace {

class SeqNode final : public SetNode {
public:
    SeqNode(MetricModel model, Poly poly) : model_(model), poly_(std::move(poly)) {
        if (model_.dim() != 1) throw std::invalid_argument("seq requires a 1-dimensional model");
        if (poly_.is_constant()) throw std::invalid_argument("seq polynomial must be nonconstant");
    }
    int dim() const override { return 1; }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p) || p.h[0] % 2 != 0) return false;
        return contains_via_enumeration(p);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        const i64 stop = poly_.escape_index(r);
        for (i64 n = 0; n <= stop; ++n) {
            const i64 v = poly_.eval1(n);
            if (std::abs(v) > r) continue;
            Point p = Point::integer1(v);
            if (model_.valid_point(p)) out.push_back(p);
        }
    }
    BoundTag bound_tag() const override {
        // On the natural line a sequence escaping to -inf has only finitely
        // many valid values.
        if (model_.kind == ModelKind::NaturalLine && poly_.lead1() < 0) return BoundTag::Bounded;
        return BoundTag::Unbounded;
    }
    std::optional<i64> extent_units() const override {
        if (bound_tag() != BoundTag::Bounded) return std::nullopt;
        const i64 stop = poly_.escape_index(0);
        i64 ext = 0;
        for (i64 n = 0; n <= stop; ++n) {
            const i64 v = poly_.eval1(n);
            if (v >= 0) ext = std::max(ext, v);
        }
        return ext;
    }
    i64 estimate_count(i64 r) const override { return poly_.escape_index(r) + 1; }
    std::string describe() const override { return "seq(" + poly_.str1("n") + ")"; }

private:
    MetricModel model_;
    Poly poly_;
};

class CurveNode final : public SetNode {
public:
    CurveNode(MetricModel model, std::vector<Poly> coords)
        : model_(model), coords_(std::move(coords)) {
        if (static_cast<int>(coords_.size()) != model_.dim())
            throw std::invalid_argument("curve arity must match model dimension");
        bool any = false;
        for (const auto& c : coords_) any = any || !c.is_constant();
        if (!any) throw std::invalid_argument("curve must have a nonconstant coordinate");
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p) || !p.is_integer()) return false;
        return contains_via_enumeration(p);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        i64 stop = std::numeric_limits<i64>::max();
        for (const auto& c : coords_)
            if (!c.is_constant()) stop = std::min(stop, c.escape_index(r));
        for (i64 n = 0; n <= stop; ++n) {
            Point p{model_.dim(), {0, 0, 0}};
            bool ok = true;
            for (int i = 0; i < model_.dim(); ++i) {
                const i64 v = coords_[i].eval1(n);
                if (std::abs(v) > r) ok = false;
                p.h[i] = 2 * v;
            }
            if (ok && model_.valid_point(p)) out.push_back(p);
        }
    }
    BoundTag bound_tag() const override { return BoundTag::Unbounded; }
    i64 estimate_count(i64 r) const override {
        i64 stop = std::numeric_limits<i64>::max();
        for (const auto& c : coords_)
            if (!c.is_constant()) stop = std::min(stop, c.escape_index(r));
        return stop + 1;
    }
    std::string describe() const override {
        std::string s = "curve(";
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].str1("n");
        }
        return s + ")";
    }

private:
    MetricModel model_;
    std::vector<Poly> coords_;
};

class RayNode final : public SetNode {
public:
    RayNode(MetricModel model, Point dir, Point base) : model_(model), dir_(dir), base_(base) {
        if (dir.dim != model_.dim() || base.dim != model_.dim())
            throw std::invalid_argument("ray: dimension mismatch");
        if (sq_norm(dir) == 0) throw std::invalid_argument("ray: zero direction");
        if (!dir.is_integer()) throw std::invalid_argument("ray: direction must be integral");
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p)) return false;
        // p = base + t*dir with integer t >= 0
        int pivot = 0;
        while (pivot < dim() && dir_.h[pivot] == 0) ++pivot;
        const i64 delta = p.h[pivot] - base_.h[pivot];
        if (delta % dir_.h[pivot] != 0) return false;
        const i64 t = delta / dir_.h[pivot];
        if (t < 0) return false;
        for (int i = 0; i < dim(); ++i)
            if (base_.h[i] + t * dir_.h[i] != p.h[i]) return false;
        return true;
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        const double dn = std::sqrt(static_cast<double>(sq_norm(dir_)));
        const double bn = std::sqrt(static_cast<double>(sq_norm(base_)));
        const i64 tmax = static_cast<i64>((2.0 * r + bn) / dn) + 2;
        for (i64 t = 0; t <= tmax; ++t) {
            Point p = base_;
            for (int i = 0; i < dim(); ++i) p.h[i] += t * dir_.h[i];
            if (model_.valid_point(p)) out.push_back(p);
        }
    }
    BoundTag bound_tag() const override {
        if (model_.kind == ModelKind::NaturalLine && dir_.h[0] < 0) return BoundTag::Bounded;
        return BoundTag::Unbounded;
    }
    std::optional<i64> extent_units() const override {
        if (bound_tag() != BoundTag::Bounded) return std::nullopt;
        return norm_ceil_units(base_);
    }
    i64 estimate_count(i64 r) const override {
        const double dn = std::sqrt(static_cast<double>(sq_norm(dir_)));
        const double bn = std::sqrt(static_cast<double>(sq_norm(base_)));
        return static_cast<i64>((2.0 * r + bn) / dn) + 3;
    }
    bool integer_only() const override { return base_.is_integer(); }
    std::string describe() const override {
        std::string s = "ray(dir=" + dir_.str();
        if (sq_norm(base_) != 0) s += ",base=" + base_.str();
        return s + ")";
    }

private:
    MetricModel model_;
    Point dir_, base_;
};

class GraphAbsNode final : public SetNode {
public:
    explicit GraphAbsNode(MetricModel model) : model_(model) {
        if (model_.dim() != 2) throw std::invalid_argument("graph_abs requires dimension 2");
    }
    int dim() const override { return 2; }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p) || !p.is_integer()) return false;
        return p.h[1] == std::abs(p.h[0]);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        for (i64 x = -r; x <= r; ++x) out.push_back(Point::integer2(x, std::abs(x)));
    }
    BoundTag bound_tag() const override { return BoundTag::Unbounded; }
    i64 estimate_count(i64 r) const override { return 2 * r + 1; }
    std::string describe() const override { return "graph_abs"; }

private:
    MetricModel model_;
};

class Quadrant1Node final : public SetNode {
public:
    explicit Quadrant1Node(MetricModel model) : model_(model) {
        if (model_.dim() != 2) throw std::invalid_argument("quadrant1 requires dimension 2");
    }
    int dim() const override { return 2; }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p) || !p.is_integer()) return false;
        return p.h[0] >= 0 && p.h[1] >= 0;
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        for (i64 x = 0; x <= r; ++x) {
            for (i64 y = 0; y * y + x * x <= r * r; ++y) out.push_back(Point::integer2(x, y));
        }
    }
    BoundTag bound_tag() const override { return BoundTag::Unbounded; }
    i64 estimate_count(i64 r) const override { return (r + 1) * (r + 1); }
    std::string describe() const override { return "quadrant1"; }

private:
    MetricModel model_;
};

class LatticeAllNode final : public SetNode {
public:
    explicit LatticeAllNode(MetricModel model) : model_(model) {}
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        return model_.valid_point(p) && p.is_integer();
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        const int d = dim();
        const i64 lo0 = (model_.kind == ModelKind::NaturalLine) ? 0 : -r;
        if (d == 1) {
            for (i64 x = lo0; x <= r; ++x) out.push_back(Point::integer1(x));
        } else if (d == 2) {
            for (i64 x = -r; x <= r; ++x)
                for (i64 y = -r; y <= r; ++y)
                    if (x * x + y * y <= r * r) out.push_back(Point::integer2(x, y));
        } else {
            for (i64 x = -r; x <= r; ++x)
                for (i64 y = -r; y <= r; ++y)
                    for (i64 z = -r; z <= r; ++z)
                        if (x * x + y * y + z * z <= r * r)
                            out.push_back(Point{3, {2 * x, 2 * y, 2 * z}});
        }
    }
    BoundTag bound_tag() const override { return BoundTag::Unbounded; }
    i64 estimate_count(i64 r) const override {
        const int d = dim();
        i64 e = 1;
        for (int i = 0; i < d; ++i) {
            if (e > (i64{1} << 40)) return e;
            e *= (2 * r + 1);
        }
        return e;
    }
    std::string describe() const override { return "lattice"; }

private:
    MetricModel model_;
};

class FinitePointsNode final : public SetNode {
public:
    FinitePointsNode(MetricModel model, std::vector<Point> pts)
        : model_(model), pts_(std::move(pts)) {
        for (const auto& p : pts_) model_.check_point(p);
        std::sort(pts_.begin(), pts_.end(), norm_lex_less);
        pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), p, norm_lex_less);
        return it != pts_.end() && *it == p;
    }
    void generate(i64, std::vector<Point>& out) const override {
        out.insert(out.end(), pts_.begin(), pts_.end());
    }
    BoundTag bound_tag() const override { return BoundTag::Bounded; }
    std::optional<i64> extent_units() const override {
        i64 e = 0;
        for (const auto& p : pts_) e = std::max(e, norm_ceil_units(p));
        return e;
    }
    i64 estimate_count(i64) const override { return static_cast<i64>(pts_.size()); }
    bool integer_only() const override {
        for (const auto& p : pts_)
            if (!p.is_integer()) return false;
        return true;
    }
    std::string describe() const override {
        std::string s = "points(";
        for (size_t i = 0; i < pts_.size(); ++i) {
            if (i) s += ",";
            s += pts_[i].str();
        }
        return s + ")";
    }
    const std::vector<Point>& points() const { return pts_; }

private:
    MetricModel model_;
    std::vector<Point> pts_;
};

class UnionNode final : public SetNode {
public:
    UnionNode(MetricModel model, std::vector<TameSet> parts)
        : model_(model), parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("union of nothing");
        for (const auto& p : parts_)
            if (p.dim() != model_.dim()) throw std::invalid_argument("union: dimension mismatch");
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        for (const auto& s : parts_)
            if (s.contains(p)) return true;
        return false;
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        for (const auto& s : parts_) {
            auto view = s.enumerate(r);
            out.insert(out.end(), view.begin(), view.end());
        }
    }
    BoundTag bound_tag() const override {
        bool unknown = false;
        for (const auto& s : parts_) {
            if (s.bound_tag() == BoundTag::Unbounded) return BoundTag::Unbounded;
            if (s.bound_tag() == BoundTag::Unknown) unknown = true;
        }
        return unknown ? BoundTag::Unknown : BoundTag::Bounded;
    }
    std::optional<i64> extent_units() const override {
        if (bound_tag() != BoundTag::Bounded) return std::nullopt;
        i64 e = 0;
        for (const auto& s : parts_) e = std::max(e, *s.extent_units());
        return e;
    }
    i64 estimate_count(i64 r) const override {
        i64 e = 0;
        for (const auto& s : parts_) {
            e += s.node()->estimate_count(r);
            if (e > (i64{1} << 40)) break;
        }
        return e;
    }
    bool integer_only() const override {
        for (const auto& s : parts_)
            if (!s.integer_only()) return false;
        return true;
    }
    std::string describe() const override {
        std::string s = "union(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += parts_[i].describe();
        }
        return s + ")";
    }

private:
    MetricModel model_;
    std::vector<TameSet> parts_;
};

class ShiftNode final : public SetNode {
public:
    ShiftNode(MetricModel model, TameSet inner, Point offset)
        : model_(model), inner_(std::move(inner)), offset_(offset) {
        if (offset_.dim != model_.dim()) throw std::invalid_argument("shift: dimension mismatch");
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        if (!model_.valid_point(p)) return false;
        Point q = p;
        for (int i = 0; i < p.dim; ++i) q.h[i] -= offset_.h[i];
        return inner_.contains(q);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        auto view = inner_.enumerate(r + norm_ceil_units(offset_) + 1);
        for (const auto& p : view) {
            Point q = p;
            for (int i = 0; i < q.dim; ++i) q.h[i] += offset_.h[i];
            if (model_.valid_point(q)) out.push_back(q);
        }
    }
    BoundTag bound_tag() const override {
        // A shift off the natural line can clip unboundedly many points only
        // in the negative direction, which the line does not have.
        return inner_.bound_tag();
    }
    std::optional<i64> extent_units() const override {
        auto e = inner_.extent_units();
        if (!e) return std::nullopt;
        return *e + norm_ceil_units(offset_);
    }
    i64 estimate_count(i64 r) const override {
        return inner_.node()->estimate_count(r + norm_ceil_units(offset_) + 1);
    }
    bool integer_only() const override { return inner_.integer_only() && offset_.is_integer(); }
    std::string describe() const override {
        return "shift(" + inner_.describe() + "," + offset_.str() + ")";
    }

private:
    MetricModel model_;
    TameSet inner_;
    Point offset_;
};

class MinusBallNode final : public SetNode {
public:
    MinusBallNode(MetricModel model, TameSet inner, i64 radius_units, Point center)
        : model_(model), inner_(std::move(inner)), radius_(radius_units), center_(center) {
        if (radius_ < 0) throw std::invalid_argument("minus_ball: negative radius");
    }
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        return inner_.contains(p) && sq_gt_units(sq_dist(p, center_), radius_);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        auto view = inner_.enumerate(r);
        for (const auto& p : view)
            if (sq_gt_units(sq_dist(p, center_), radius_)) out.push_back(p);
    }
    BoundTag bound_tag() const override { return inner_.bound_tag(); }
    std::optional<i64> extent_units() const override { return inner_.extent_units(); }
    i64 estimate_count(i64 r) const override { return inner_.node()->estimate_count(r); }
    bool integer_only() const override { return inner_.integer_only(); }
    std::string describe() const override {
        return "minus_ball(" + inner_.describe() + "," + std::to_string(radius_) + ")";
    }

private:
    MetricModel model_;
    TameSet inner_;
    i64 radius_;
    Point center_;
};

class RemovePointsNode final : public SetNode {
public:
    RemovePointsNode(MetricModel model, TameSet inner, std::vector<Point> pts)
        : model_(model), inner_(std::move(inner)), removed_(model, std::move(pts)) {}
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        return inner_.contains(p) && !removed_.contains(p);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        auto view = inner_.enumerate(r);
        for (const auto& p : view)
            if (!removed_.contains(p)) out.push_back(p);
    }
    BoundTag bound_tag() const override { return inner_.bound_tag(); }
    std::optional<i64> extent_units() const override { return inner_.extent_units(); }
    i64 estimate_count(i64 r) const override { return inner_.node()->estimate_count(r); }
    bool integer_only() const override { return inner_.integer_only(); }
    std::string describe() const override {
        std::string s = "remove_points(" + inner_.describe();
        for (const auto& p : removed_.points()) s += "," + p.str();
        return s + ")";
    }

private:
    MetricModel model_;
    TameSet inner_;
    FinitePointsNode removed_;
};

class ComplementNode final : public SetNode {
public:
    ComplementNode(MetricModel model, TameSet universe, TameSet inner)
        : model_(model), universe_(std::move(universe)), inner_(std::move(inner)) {}
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override {
        return universe_.contains(p) && !inner_.contains(p);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        auto view = universe_.enumerate(r);
        for (const auto& p : view)
            if (!inner_.contains(p)) out.push_back(p);
    }
    BoundTag bound_tag() const override {
        if (inner_.bound_tag() == BoundTag::Bounded &&
            universe_.bound_tag() == BoundTag::Unbounded)
            return BoundTag::Unbounded;
        return BoundTag::Unknown;
    }
    i64 estimate_count(i64 r) const override { return universe_.node()->estimate_count(r); }
    bool integer_only() const override { return universe_.integer_only(); }
    std::string describe() const override { return "complement(" + inner_.describe() + ")"; }
    Kind kind() const override { return Kind::Complement; }
    const TameSet& universe() const { return universe_; }
    const TameSet& inner() const { return inner_; }

private:
    MetricModel model_;
    TameSet universe_;
    TameSet inner_;
};

class IntersectionNode final : public SetNode {
public:
    IntersectionNode(MetricModel model, TameSet a, TameSet b)
        : model_(model), a_(std::move(a)), b_(std::move(b)) {}
    int dim() const override { return model_.dim(); }
    bool contains(const Point& p) const override { return a_.contains(p) && b_.contains(p); }
    void generate(i64 r, std::vector<Point>& out) const override {
        const TameSet& lead = a_.node()->estimate_count(r) <= b_.node()->estimate_count(r) ? a_ : b_;
        const TameSet& other = (&lead == &a_) ? b_ : a_;
        auto view = lead.enumerate(r);
        for (const auto& p : view)
            if (other.contains(p)) out.push_back(p);
    }
    BoundTag bound_tag() const override {
        if (a_.bound_tag() == BoundTag::Bounded || b_.bound_tag() == BoundTag::Bounded)
            return BoundTag::Bounded;
        return BoundTag::Unknown;
    }
    std::optional<i64> extent_units() const override {
        auto ea = a_.extent_units(), eb = b_.extent_units();
        if (ea && eb) return std::min(*ea, *eb);
        if (ea) return ea;
        return eb;
    }
    i64 estimate_count(i64 r) const override {
        return std::min(a_.node()->estimate_count(r), b_.node()->estimate_count(r));
    }
    bool integer_only() const override { return a_.integer_only() || b_.integer_only(); }
    std::string describe() const override {
        return "intersect(" + a_.describe() + "," + b_.describe() + ")";
    }

private:
    MetricModel model_;
    TameSet a_, b_;
};

class CoreDistFilterNode final : public SetNode {
public:
    CoreDistFilterNode(MetricModel model, TameSet universe, TameSet core, DistSchedule schedule,
                       Point x0, std::string label)
        : model_(model),
          universe_(std::move(universe)),
          core_(std::move(core)),
          schedule_(std::move(schedule)),
          x0_(x0),
          label_(std::move(label)) {}
    int dim() const override { return model_.dim(); }

    bool contains(const Point& p) const override {
        if (!universe_.contains(p)) return false;
        if (core_.contains(p)) return true;
        const i64 t = schedule_.thresh_at_sq(sq_dist(p, x0_));
        if (t <= 0) return false;
        auto hit = core_.nearest_upto(p, t, x0_, 0);
        return hit && sq_lt_units(hit->sq, t);
    }

    void generate(i64 r, std::vector<Point>& out) const override {
        if (universe_.node()->estimate_count(r) <= TameSet::kEnumCap) {
            auto view = universe_.enumerate(r);
            for (const auto& p : view)
                if (contains(p)) out.push_back(p);
            return;
        }
        // Universe too dense: emit candidates around core points and filter.
        const i64 tmax = schedule_.max_threshold();
        auto core_view = core_.enumerate(r + tmax + 1);
        for (const auto& c : core_view) {
            if (contains(c)) out.push_back(c);
            const i64 local = schedule_.thresh_at_sq(
                4 * (norm_ceil_units(c) + tmax + 1) * (norm_ceil_units(c) + tmax + 1));
            if (local <= 0) continue;
            // integer lattice candidates within the local threshold of c
            const i64 cx = floor_div(c.h[0] + 1, 2), cy = dim() > 1 ? floor_div(c.h[1] + 1, 2) : 0;
            const i64 cz = dim() > 2 ? floor_div(c.h[2] + 1, 2) : 0;
            for (i64 dx = -local - 1; dx <= local + 1; ++dx) {
                for (i64 dy = (dim() > 1 ? -local - 1 : 0); dy <= (dim() > 1 ? local + 1 : 0); ++dy) {
                    for (i64 dz = (dim() > 2 ? -local - 1 : 0); dz <= (dim() > 2 ? local + 1 : 0);
                         ++dz) {
                        Point p{dim(), {2 * (cx + dx), 2 * (cy + dy), 2 * (cz + dz)}};
                        const i64 dc = sq_dist(p, c);
                        if (sq_gt_units(dc, local + 1)) continue;
                        // d(p, core) <= d(p, c): inside this point's own
                        // threshold the full membership test is redundant
                        const i64 t = schedule_.thresh_at_sq(sq_dist(p, x0_));
                        if (t > 0 && sq_lt_units(dc, t)) {
                            if (universe_.contains(p)) out.push_back(p);
                            continue;
                        }
                        if (contains(p)) out.push_back(p);
                    }
                }
            }
        }
    }

    BoundTag bound_tag() const override {
        if (core_.bound_tag() == BoundTag::Bounded) return BoundTag::Bounded;
        return core_.bound_tag();
    }
    std::optional<i64> extent_units() const override {
        auto e = core_.extent_units();
        if (!e) return std::nullopt;
        // x in the set has |x - x0| - d(x0, core-ball) < t(|x - x0|); with
        // thresholds far below their radii the reach past the core is at
        // most the largest threshold whose radius is attainable.
        i64 ext = *e;
        const i64 base = *e + norm_ceil_units(x0_);
        for (const auto& [rn, tn] : schedule_.steps) {
            if (rn <= base + tn) ext = std::max(ext, base + tn);
        }
        return ext;
    }
    i64 estimate_count(i64 r) const override {
        {
            std::lock_guard<std::recursive_mutex> lk(cache().mu);
            if (cache().radius >= r && cache().sqnorms) {
                const auto& sq = *cache().sqnorms;
                return std::upper_bound(sq.begin(), sq.end(), 4 * r * r) - sq.begin();
            }
        }
        const i64 tmax = schedule_.max_threshold();
        const i64 core_n = core_.node()->estimate_count(r + tmax + 1);
        i64 width = 1;
        for (int i = 1; i < dim(); ++i) width *= (2 * tmax + 2);
        const i64 tube = core_n * width * 2;
        const i64 uni = universe_.node()->estimate_count(r);
        return std::min(tube, uni);
    }
    bool integer_only() const override { return universe_.integer_only(); }
    std::string describe() const override { return label_; }
    Kind kind() const override { return Kind::CoreDistFilter; }

    const TameSet& core() const { return core_; }
    const DistSchedule& schedule() const { return schedule_; }
    const Point& x0() const { return x0_; }
    const TameSet& universe() const { return universe_; }

private:
    MetricModel model_;
    TameSet universe_;
    TameSet core_;
    DistSchedule schedule_;
    Point x0_;
    std::string label_;
};

}  // namespace

// ---------- DistSchedule ----------

i64 DistSchedule::thresh_at_sq(i64 sq_from_x0) const {
    i64 t = 0;
    for (const auto& [rn, tn] : steps) {
        if (sq_ge_units(sq_from_x0, rn))
            t = tn;
        else
            break;
    }
    return t;
}

i64 DistSchedule::max_threshold() const {
    i64 t = 0;
    for (const auto& [rn, tn] : steps) t = std::max(t, tn);
    return t;
}

// ---------- factories ----------

TameSet make_seq(const MetricModel& m, const Poly& p) {
    return TameSet(std::make_shared<SeqNode>(m, p));
}
TameSet make_curve(const MetricModel& m, const std::vector<Poly>& coords) {
    return TameSet(std::make_shared<CurveNode>(m, coords));
}
TameSet make_ray(const MetricModel& m, const Point& dir, const Point& base) {
    return TameSet(std::make_shared<RayNode>(m, dir, base));
}
TameSet make_graph_abs(const MetricModel& m) {
    return TameSet(std::make_shared<GraphAbsNode>(m));
}
TameSet make_quadrant1(const MetricModel& m) {
    return TameSet(std::make_shared<Quadrant1Node>(m));
}
TameSet make_lattice_all(const MetricModel& m) {
    return TameSet(std::make_shared<LatticeAllNode>(m));
}
TameSet make_points(const MetricModel& m, std::vector<Point> pts) {
    return TameSet(std::make_shared<FinitePointsNode>(m, std::move(pts)));
}
TameSet make_union(const MetricModel& m, std::vector<TameSet> parts) {
    return TameSet(std::make_shared<UnionNode>(m, std::move(parts)));
}
TameSet make_shift(const MetricModel& m, const TameSet& inner, const Point& offset) {
    return TameSet(std::make_shared<ShiftNode>(m, inner, offset));
}
TameSet make_minus_ball(const MetricModel& m, const TameSet& inner, i64 radius_units,
                        const Point& center) {
    return TameSet(std::make_shared<MinusBallNode>(m, inner, radius_units, center));
}
TameSet make_add_points(const MetricModel& m, const TameSet& inner, std::vector<Point> pts) {
    std::vector<TameSet> parts{inner, make_points(m, std::move(pts))};
    return make_union(m, std::move(parts));
}
TameSet make_remove_points(const MetricModel& m, const TameSet& inner, std::vector<Point> pts) {
    return TameSet(std::make_shared<RemovePointsNode>(m, inner, std::move(pts)));
}
TameSet make_complement(const MetricModel& m, const TameSet& universe, const TameSet& inner) {
    // X \ (X \ S) = S, which keeps verdict-level involution checks honest.
    if (auto info = as_complement(inner)) return info->inner;
    return TameSet(std::make_shared<ComplementNode>(m, universe, inner));
}
TameSet make_intersection(const MetricModel& m, const TameSet& a, const TameSet& b) {
    return TameSet(std::make_shared<IntersectionNode>(m, a, b));
}
TameSet make_core_dist_filter(const MetricModel& m, const TameSet& universe, const TameSet& core,
                              DistSchedule schedule, const Point& x0, std::string label) {
    return TameSet(std::make_shared<CoreDistFilterNode>(m, universe, core, std::move(schedule), x0,
                                                        std::move(label)));
}

std::optional<CoreDistFilterInfo> as_core_dist_filter(const TameSet& s) {
    if (s.node_kind() != SetNode::Kind::CoreDistFilter) return std::nullopt;
    const auto* n = static_cast<const CoreDistFilterNode*>(s.node());
    return CoreDistFilterInfo{n->core(), &n->schedule(), n->x0()};
}

std::optional<ComplementInfo> as_complement(const TameSet& s) {
    if (!s.valid() || s.node_kind() != SetNode::Kind::Complement) return std::nullopt;
    const auto* n = static_cast<const ComplementNode*>(s.node());
    return ComplementInfo{n->universe(), n->inner()};
}

TameSet universe_of_model(const MetricModel& m) { return make_lattice_all(m); }

}  // namespace coarseprox
