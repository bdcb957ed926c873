#include "coarseprox/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <sstream>

namespace coarseprox {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 units_ceil_of_sq(i64 sq) {
    if (sq < 0) return -1;
    return (isqrt_floor(sq) + 2) / 2;
}

// Small open-addressed grid for incrementally inserted points.
class SweepGrid {
public:
    explicit SweepGrid(int dim) : dim_(dim) {}
    void insert(const Point& p) {
        cells_[key_of(p)].push_back(p);
    }
    std::optional<NearestHit> nearest(const Point& q, i64 cap_sq) const {
        std::optional<NearestHit> best;
        const i64 qcx = floor_div(q.h[0], kCell);
        const i64 qcy = dim_ > 1 ? floor_div(q.h[1], kCell) : 0;
        auto scan = [&](i64 cx, i64 cy) {
            auto it = cells_.find(pack(cx, cy));
            if (it == cells_.end()) return;
            for (const Point& p : it->second) {
                const i64 sq = sq_dist(p, q);
                if (sq > cap_sq) continue;
                if (!best || sq < best->sq || (sq == best->sq && lex_less(p, best->point)))
                    best = NearestHit{p, sq};
            }
        };
        for (i64 k = 0;; ++k) {
            if (k > 0) {
                const i64 lb = (k - 1) * kCell;
                if (lb * lb > cap_sq) break;
                if (best && lb * lb > best->sq) break;
            }
            if (dim_ == 1) {
                if (k == 0)
                    scan(qcx, 0);
                else {
                    scan(qcx - k, 0);
                    scan(qcx + k, 0);
                }
            } else {
                for (i64 dx = -k; dx <= k; ++dx)
                    for (i64 dy = -k; dy <= k; ++dy) {
                        if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
                        scan(qcx + dx, qcy + dy);
                    }
            }
        }
        return best;
    }

private:
    static constexpr i64 kCell = 64;
    int dim_;
    std::unordered_map<i64, std::vector<Point>> cells_;
    static i64 pack(i64 cx, i64 cy) {
        constexpr i64 M = i64{1} << 21, OFF = i64{1} << 20;
        return (cx + OFF) * M + (cy + OFF);
    }
    i64 key_of(const Point& p) const {
        return pack(floor_div(p.h[0], kCell), dim_ > 1 ? floor_div(p.h[1], kCell) : 0);
    }
};

struct RunningMin {
    std::optional<NearestHit> hit;  // distance + other-side point
    std::optional<Point> self;      // matching scan-side point
    void offer(const Point& a, const NearestHit& h) {
        if (!hit || h.sq < hit->sq ||
            (h.sq == hit->sq && lex_less(h.point, hit->point))) {
            hit = h;
            self = a;
        }
    }
    i64 cap_sq(i64 sat_sq) const { return hit ? std::min(hit->sq, sat_sq) : sat_sq; }
};

enum class SideMode { Enumerated, TubeCoreDist, CompCoreDist, DenseMembership };

SideMode classify(const TameSet& s, i64 enum_radius) {
    if (auto comp = as_complement(s)) {
        if (as_core_dist_filter(comp->inner) && !s.enumerable_at(enum_radius))
            return SideMode::CompCoreDist;
    }
    if (as_core_dist_filter(s)) return SideMode::TubeCoreDist;
    if (s.enumerable_at(enum_radius)) return SideMode::Enumerated;
    return SideMode::DenseMembership;
}

// Points of s inside the horizon ball about x0, sorted by distance to x0
// descending (for incremental activation while the grid radius descends).
struct SortedSide {
    std::vector<Point> pts;
    std::vector<i64> sqd;  // distance to x0, descending
    size_t first_outside(i64 r) const {
        // count of points with d >= r (prefix, since sorted descending)
        const i64 lim = 4 * r * r;
        size_t lo = 0, hi = pts.size();
        while (lo < hi) {
            const size_t mid = (lo + hi) / 2;
            if (sqd[mid] >= lim)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }
};

SortedSide collect_side(const TameSet& s, const Point& x0, i64 horizon) {
    SortedSide out;
    auto view = s.enumerate(horizon + norm_ceil_units(x0) + 1);
    std::vector<std::pair<i64, Point>> tmp;
    tmp.reserve(view.size());
    const i64 lim = 4 * horizon * horizon;
    for (const auto& p : view) {
        const i64 d = sq_dist(p, x0);
        if (d <= lim) tmp.push_back({d, p});
    }
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return lex_less(a.second, b.second);
    });
    out.pts.reserve(tmp.size());
    out.sqd.reserve(tmp.size());
    for (auto& [d, p] : tmp) {
        out.pts.push_back(p);
        out.sqd.push_back(d);
    }
    return out;
}

// Deterministic direction table for membership probing of dense sets.
const std::vector<std::array<double, 3>>& probe_dirs(int dim) {
    static const std::vector<std::array<double, 3>> d1 = {{1, 0, 0}, {-1, 0, 0}};
    static const std::vector<std::array<double, 3>> d2 = [] {
        std::vector<std::array<double, 3>> v;
        for (int k = 0; k < 32; ++k) {
            const double ang = 2.0 * 3.14159265358979323846 * k / 32.0;
            v.push_back({std::cos(ang), std::sin(ang), 0});
        }
        return v;
    }();
    static const std::vector<std::array<double, 3>> d3 = [] {
        std::vector<std::array<double, 3>> v;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c) {
                    if (!a && !b && !c) continue;
                    const double n = std::sqrt(double(a * a + b * b + c * c));
                    v.push_back({a / n, b / n, c / n});
                }
        return v;
    }();
    if (dim == 1) return d1;
    if (dim == 2) return d2;
    return d3;
}

std::vector<Point> sample_members_near(const TameSet& s, const Point& x0, i64 r, i64 horizon,
                                       size_t budget) {
    std::vector<Point> out;
    const int dim = s.dim();
    for (i64 rad = r + 1; rad <= horizon && out.size() < budget; rad = rad + std::max<i64>(1, rad / 8)) {
        for (const auto& dir : probe_dirs(dim)) {
            if (out.size() >= budget) break;
            Point c{dim, {0, 0, 0}};
            for (int i = 0; i < dim; ++i)
                c.h[i] = x0.h[i] + 2 * static_cast<i64>(std::llround(dir[i] * double(rad)));
            for (i64 dx = -2; dx <= 2 && out.size() < budget; ++dx) {
                for (i64 dy = (dim > 1 ? -2 : 0); dy <= (dim > 1 ? 2 : 0); ++dy) {
                    Point p = c;
                    p.h[0] += 2 * dx;
                    if (dim > 1) p.h[1] += 2 * dy;
                    if (!sq_ge_units(sq_dist(p, x0), r)) continue;
                    if (!sq_le_units(sq_dist(p, x0), horizon)) continue;
                    if (s.contains(p)) out.push_back(p);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<Point> sample_members(const TameSet& s, const Point& x0, i64 min_norm, i64 horizon,
                                  size_t budget) {
    return sample_members_near(s, x0, min_norm, horizon, budget);
}

bool set_fully_enumerated(const TameSet& S, i64 horizon) {
    if (S.bound_tag() != BoundTag::Bounded) return false;
    auto e = S.extent_units();
    return e && *e <= horizon;
}

bool set_is_empty(const TameSet& S) {
    if (S.bound_tag() != BoundTag::Bounded) return false;
    auto e = S.extent_units();
    if (!e) return false;
    return S.enumerate(*e + 1).empty();
}

PointSetDist dist_point_set(const MetricModel& model, const Point& x, const TameSet& S,
                            i64 horizon) {
    model.check_point(x);
    const Point x0 = model.basepoint;
    const i64 dx0 = units_ceil_of_sq(sq_dist(x, x0));
    if (horizon < dx0) throw std::invalid_argument("dist_point_set: horizon below |x - x0|");
    auto hit = S.nearest_upto(x, horizon + dx0 + 1, x0, 0);
    PointSetDist out;
    if (!hit) {
        out.value = ExactDist::infinite();
        out.exact = set_fully_enumerated(S, horizon) || S.node()->estimate_count(horizon) == 0;
        // An unbounded set always meets a large enough ball, so a miss at
        // this cap can only happen for genuinely empty/bounded sets.
        if (S.bound_tag() == BoundTag::Bounded) out.exact = true;
        return out;
    }
    out.value = ExactDist::from_sq(hit->sq);
    out.witness = hit->point;
    out.exact = out.value.le_units(horizon - dx0) || set_fully_enumerated(S, horizon);
    return out;
}

PairProfile compute_pair_profile(const MetricModel& model, const TameSet& A, const TameSet& B,
                                 const std::vector<i64>& grid, i64 horizon, i64 saturation) {
    if (grid.empty()) throw std::invalid_argument("empty radius grid");
    const Point x0 = model.basepoint;
    const i64 enum_radius = horizon + norm_ceil_units(x0) + 1;
    const i64 sat = saturation > 0 ? saturation : horizon;
    const i64 sat_sq = 4 * sat * sat;

    SideMode ma = classify(A, enum_radius);
    SideMode mb = classify(B, enum_radius);
    // Tube-shaped sides stay in membership mode against a much smaller
    // enumerable partner (no need to materialize the tube), and act as the
    // enumerated side otherwise when affordable.
    auto tube_mode = [&](SideMode& mine, const TameSet& me, SideMode other_mode,
                         const TameSet& other) {
        if (mine != SideMode::TubeCoreDist) return;
        if (!me.enumerable_at(enum_radius)) return;  // stay membership-only
        if (other_mode == SideMode::Enumerated &&
            me.node()->estimate_count(enum_radius) >
                8 * other.node()->estimate_count(enum_radius))
            return;  // partner is small: scan the partner instead
        mine = SideMode::Enumerated;
    };
    tube_mode(ma, A, mb, B);
    tube_mode(mb, B, ma, A);

    PairProfile out;
    out.profile.basepoint = x0;
    out.profile.horizon = horizon;
    out.profile.entries.resize(grid.size());
    out.witnesses.resize(grid.size());

    const bool complete = set_fully_enumerated(A, horizon) && set_fully_enumerated(B, horizon);

    auto finalize_entry = [&](size_t gi, const RunningMin& run, bool side_empty, bool exhaustive) {
        ProfileEntry& e = out.profile.entries[gi];
        e.radius = grid[gi];
        if (side_empty) {
            e.value = ExactDist::infinite();
            e.exact = true;
            return;
        }
        if (!run.hit) {
            // nothing within the saturation cap: certified lower bound
            e.value = ExactDist::from_sq(sat_sq);
            e.saturated = true;
            e.exact = exhaustive;
            return;
        }
        e.value = ExactDist::from_sq(run.hit->sq);
        e.exact = exhaustive && (e.value.le_units(horizon - grid[gi]) || complete);
        out.witnesses[gi] = std::make_pair(*run.self, run.hit->point);
    };

    // --- both sides enumerable: one sweep over descending radii ---
    if (ma == SideMode::Enumerated && mb == SideMode::Enumerated) {
        SortedSide sa = collect_side(A, x0, horizon);
        SortedSide sb = collect_side(B, x0, horizon);
        SweepGrid ga(model.dim()), gb(model.dim());
        size_t ia = 0, ib = 0;
        RunningMin run;  // run.self is the A-point, run.hit the B-point
        for (size_t gi = grid.size(); gi-- > 0;) {
            const i64 r = grid[gi];
            const size_t na = sa.first_outside(r), nb = sb.first_outside(r);
            const size_t a_lo = ia, b_lo = ib;
            for (; ib < nb; ++ib) gb.insert(sb.pts[ib]);
            for (; ia < na; ++ia) ga.insert(sa.pts[ia]);
            for (size_t j = a_lo; j < na; ++j) {
                if (auto h = gb.nearest(sa.pts[j], run.cap_sq(sat_sq))) run.offer(sa.pts[j], *h);
            }
            // fresh B points against previously active A (fresh A covered above)
            for (size_t j = b_lo; j < nb; ++j) {
                if (auto h = ga.nearest(sb.pts[j], run.cap_sq(sat_sq)))
                    run.offer(h->point, NearestHit{sb.pts[j], h->sq});
            }
            finalize_entry(gi, run, na == 0 || nb == 0, true);
        }
        return out;
    }

    // --- one side enumerable, other membership-only ---
    const bool a_enum = (ma == SideMode::Enumerated);
    if (a_enum || mb == SideMode::Enumerated) {
        const TameSet& scan = a_enum ? A : B;
        const TameSet& other = a_enum ? B : A;
        const SideMode other_mode = a_enum ? mb : ma;
        SortedSide ss = collect_side(scan, x0, horizon);

        std::optional<CoreDistFilterInfo> comp_info;  // complement of a tube
        std::optional<CoreDistFilterInfo> tube_info;  // the tube itself
        if (other_mode == SideMode::CompCoreDist) {
            auto ci = as_complement(other);
            comp_info = as_core_dist_filter(ci->inner);
        } else if (other_mode == SideMode::TubeCoreDist) {
            tube_info = as_core_dist_filter(other);
        }

        for (size_t gi = grid.size(); gi-- > 0;) {
            const i64 r = grid[gi];
            const size_t n = ss.first_outside(r);
            RunningMin run;
            // ascending |a| (nearest to the truncation boundary first)
            for (size_t idx = n; idx-- > 0;) {
                const Point& a = ss.pts[idx];
                if (run.hit && run.hit->sq == 0) break;
                const i64 cap_sq = run.cap_sq(sat_sq);
                const i64 cap_units = std::min<i64>(sat, units_ceil_of_sq(cap_sq) + 1);
                if (other.contains(a)) {
                    run.offer(a, NearestHit{a, 0});
                    continue;
                }
                if (comp_info) {
                    // complement points at norm >= m keep distance >= thresh(m)
                    // from the core, so nearby core presence gives a lower bound
                    const i64 anorm = units_ceil_of_sq(sq_dist(a, x0));
                    const i64 m = std::max<i64>(r, anorm - cap_units - 1);
                    const i64 tlow = comp_info->schedule->thresh_at_sq(4 * m * m);
                    if (tlow > 0) {
                        auto ch = comp_info->core.nearest_upto(a, tlow + 1, x0, 0);
                        const i64 dcore = ch ? units_ceil_of_sq(ch->sq) : tlow + 1;
                        const i64 lb = tlow - dcore - 1;
                        if (lb > 0) {
                            if (run.hit && 4 * lb * lb >= run.hit->sq) continue;
                            if (!run.hit && 4 * lb * lb >= sat_sq) continue;
                        }
                    }
                } else if (tube_info) {
                    // a tube point within cap of a puts a core point within
                    // cap + max-threshold of a, at norm >= r - max-threshold
                    const i64 tmax = tube_info->schedule->max_threshold();
                    if (!tube_info->core
                             .nearest_upto(a, cap_units + tmax + 1, x0,
                                           std::max<i64>(0, r - tmax - 1))
                             .has_value())
                        continue;
                }
                if (auto h = nearest_member_by_rings(other, a, cap_units, x0, r)) {
                    if (h->sq <= run.cap_sq(sat_sq)) run.offer(a, *h);
                }
            }
            RunningMin oriented = run;
            if (!a_enum && run.hit) {
                oriented.self = run.hit->point;
                oriented.hit = NearestHit{*run.self, run.hit->sq};
            }
            finalize_entry(gi, oriented, n == 0, true);
        }
        return out;
    }

    // --- both sides membership-only: witness probing, never exact ---
    for (size_t gi = 0; gi < grid.size(); ++gi) {
        const i64 r = grid[gi];
        auto samples = sample_members_near(A, x0, r, horizon, 96);
        RunningMin run;
        for (const auto& a : samples) {
            const i64 cap_units = std::min<i64>(sat, units_ceil_of_sq(run.cap_sq(sat_sq)) + 1);
            if (auto h = nearest_member_by_rings(B, a, cap_units, x0, r)) run.offer(a, *h);
            if (run.hit && run.hit->sq == 0) break;
        }
        ProfileEntry& e = out.profile.entries[gi];
        e.radius = r;
        if (run.hit) {
            e.value = ExactDist::from_sq(run.hit->sq);
            e.exact = false;
            out.witnesses[gi] = std::make_pair(*run.self, run.hit->point);
        } else {
            e.value = ExactDist::from_sq(sat_sq);
            e.saturated = true;
            e.exact = false;
        }
    }
    return out;
}

TruncatedDist set_distance_truncated(const MetricModel& model, const TameSet& A, const TameSet& B,
                                     i64 radius, i64 horizon, i64 saturation) {
    if (radius < 0) throw std::invalid_argument("negative truncation radius");
    if (horizon < radius) throw std::invalid_argument("horizon below truncation radius");
    auto pp = compute_pair_profile(model, A, B, {radius}, horizon, saturation);
    TruncatedDist out;
    out.value = pp.profile.entries[0].value;
    out.exact = pp.profile.entries[0].exact;
    out.saturated = pp.profile.entries[0].saturated;
    out.witness = pp.witnesses[0];
    return out;
}

DistanceProfile hausdorff_profile(const MetricModel& model, const TameSet& A, const TameSet& B,
                                  const std::vector<i64>& radii, i64 horizon, i64 saturation) {
    const Point x0 = model.basepoint;
    const i64 enum_radius = horizon + norm_ceil_units(x0) + 1;
    const i64 sat = saturation > 0 ? saturation : horizon;
    DistanceProfile prof;
    prof.basepoint = x0;
    prof.horizon = horizon;

    auto side_points = [&](const TameSet& s, i64 r) -> std::vector<Point> {
        if (s.enumerable_at(enum_radius)) {
            auto view = s.enumerate(r + norm_ceil_units(x0) + 1);
            std::vector<Point> pts;
            for (const auto& p : view)
                if (sq_le_units(sq_dist(p, x0), r)) pts.push_back(p);
            return pts;
        }
        return sample_members_near(s, x0, 0, r, 256);
    };
    const bool exhaustive =
        A.enumerable_at(enum_radius) && B.enumerable_at(enum_radius);
    if (set_is_empty(A) || set_is_empty(B))
        throw std::invalid_argument("hausdorff_profile: empty set");

    for (i64 r : radii) {
        ProfileEntry e;
        e.radius = r;
        ExactDist worst = ExactDist::zero();
        bool all_exact = true;
        bool saturated = false;
        for (int side = 0; side < 2; ++side) {
            const TameSet& from = side == 0 ? A : B;
            const TameSet& to = side == 0 ? B : A;
            for (const auto& p : side_points(from, r)) {
                auto hit = to.nearest_upto(p, sat, x0, 0);
                if (!hit) {
                    saturated = true;
                    worst = ExactDist::from_sq(4 * sat * sat);
                    continue;
                }
                ExactDist d = ExactDist::from_sq(hit->sq);
                if (worst < d) worst = d;
                if (!d.le_units(horizon - units_ceil_of_sq(sq_dist(p, x0))))
                    all_exact = false;
            }
        }
        e.value = worst;
        e.saturated = saturated;
        e.exact = exhaustive && all_exact;
        prof.entries.push_back(e);
    }
    return prof;
}

std::optional<Point> find_member_beyond(const MetricModel& model, const TameSet& S, i64 r,
                                        i64 horizon) {
    const Point x0 = model.basepoint;
    const i64 enum_radius = horizon + norm_ceil_units(x0) + 1;
    if (S.enumerable_at(enum_radius)) {
        auto view = S.enumerate(enum_radius);
        for (size_t i = view.size(); i-- > 0;) {
            const Point& p = view[i];
            if (sq_gt_units(sq_dist(p, x0), r)) return p;
            // sorted by origin norm; once well inside we can stop
            if (sq_le_units(sq_norm(p), std::max<i64>(0, r - norm_ceil_units(x0) - 1))) break;
        }
        return std::nullopt;
    }
    auto samples = sample_members_near(S, x0, r + 1, horizon, 8);
    for (const auto& p : samples)
        if (sq_gt_units(sq_dist(p, x0), r)) return p;
    return std::nullopt;
}

std::string DistanceProfile::to_csv() const {
    std::ostringstream os;
    os << "radius,value,exact\n";
    for (const auto& e : entries) {
        os << e.radius << "," << e.value.str() << "," << (e.exact ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace coarseprox
