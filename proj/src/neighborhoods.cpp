#include "coarseprox/neighborhoods.hpp"

#include <algorithm>
#include <functional>

namespace coarseprox {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 units_ceil_of_sq(i64 sq) {
    if (sq < 0) return -1;
    i64 u = (isqrt_floor(sq) + 1) / 2;
    while (4 * u * u < sq) ++u;
    while (u > 0 && 4 * (u - 1) * (u - 1) >= sq) --u;
    return u;
}

// Exact nearest integer point satisfying a predicate, by expanding rings.
// A positive dist_floor asserts (caller-certified) that no target point lies
// strictly below that distance, so the predicate is skipped there.
std::optional<NearestHit> nearest_pred_by_rings(const std::function<bool(const Point&)>& pred,
                                                int dim, const Point& q, i64 cap_units,
                                                const Point& norm_center, i64 min_norm_units,
                                                i64 dist_floor = 0) {
    const i64 cap_sq = 4 * cap_units * cap_units;
    const i64 floor_sq = 4 * dist_floor * dist_floor;
    std::array<i64, 3> c{0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = floor_div(q.h[i] + 1, 2);
    std::optional<NearestHit> best;
    auto try_point = [&](i64 x, i64 y, i64 z) {
        Point p{dim, {2 * x, 2 * y, 2 * z}};
        const i64 sq = sq_dist(p, q);
        if (sq > cap_sq || sq < floor_sq) return;
        if (best && sq > best->sq) return;
        if (min_norm_units > 0 && !sq_ge_units(sq_dist(p, norm_center), min_norm_units)) return;
        if (!pred(p)) return;
        if (!best || sq < best->sq || (sq == best->sq && lex_less(p, best->point)))
            best = NearestHit{p, sq};
    };
    const i64 start_k = std::max<i64>(0, (dist_floor * 5) / 9 - 1);
    for (i64 k = start_k;; ++k) {
        if (k > 0) {
            const i64 lb = 2 * (k - 1);
            if (lb * lb > cap_sq) break;
            if (best && lb * lb > best->sq) break;
        }
        if (dim == 1) {
            if (k == 0)
                try_point(c[0], 0, 0);
            else {
                try_point(c[0] - k, 0, 0);
                try_point(c[0] + k, 0, 0);
            }
        } else if (dim == 2) {
            for (i64 dx = -k; dx <= k; ++dx)
                for (i64 dy = -k; dy <= k; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != k) continue;
                    try_point(c[0] + dx, c[1] + dy, 0);
                }
        } else {
            for (i64 dx = -k; dx <= k; ++dx)
                for (i64 dy = -k; dy <= k; ++dy)
                    for (i64 dz = -k; dz <= k; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != k) continue;
                        try_point(c[0] + dx, c[1] + dy, c[2] + dz);
                    }
        }
    }
    return best;
}

// d(p, S) <= d(p, T), exactly, via capped nearest queries.
bool closer_or_tied(const TameSet& S, const TameSet& T, const Point& p, const Point& x0) {
    i64 cap = 2;
    std::optional<NearestHit> hs;
    for (;;) {
        hs = S.nearest_upto(p, cap, x0, 0);
        if (hs) break;
        cap *= 2;
        if (cap > (i64{1} << 40)) return false;  // S effectively empty near p
    }
    auto ht = T.nearest_upto(p, units_ceil_of_sq(hs->sq) + 1, x0, 0);
    if (!ht) return true;
    return hs->sq <= ht->sq;
}

struct ScanSpec {
    // membership of the target side (already includes any universe filter)
    std::function<bool(const Point&)> target_contains;
    // once per point: can this point ever matter under the saturation cap?
    std::function<bool(const Point&)> relevant;
    // per level: certified lower bound for d(a, target outside ball r)
    std::function<i64(const Point& a, i64 r, i64 cap_units)> lower_bound;
    // optional: a cheaper membership test anchored at the scan point
    std::function<std::function<bool(const Point&)>(const Point& a)> local_pred;
};

PairProfile profile_vs_membership(const MetricModel& model, const TameSet& scan,
                                  const ScanSpec& spec, const std::vector<i64>& grid, i64 horizon,
                                  i64 sat) {
    const Point x0 = model.basepoint;
    const i64 sat_sq = 4 * sat * sat;
    PairProfile out;
    out.profile.basepoint = x0;
    out.profile.horizon = horizon;
    out.profile.entries.resize(grid.size());
    out.witnesses.resize(grid.size());

    auto view = scan.enumerate(horizon + norm_ceil_units(x0) + 1);
    std::vector<std::pair<i64, Point>> pts;  // (sq from x0) ascending
    std::vector<std::pair<i64, Point>> live;
    bool any_member = false;
    for (const auto& p : view) {
        const i64 d = sq_dist(p, x0);
        if (!sq_le_units(d, horizon)) continue;
        any_member = true;
        if (spec.relevant && !spec.relevant(p)) continue;
        live.push_back({d, p});
    }
    pts = std::move(live);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lex_less(a.second, b.second);
    });
    const i64 max_member_sq = [&] {
        i64 m = -1;
        for (const auto& p : view) {
            const i64 d = sq_dist(p, x0);
            if (sq_le_units(d, horizon)) m = std::max(m, d);
        }
        return m;
    }();

    for (size_t gi = 0; gi < grid.size(); ++gi) {
        const i64 r = grid[gi];
        std::optional<NearestHit> best;
        std::optional<Point> self;
        const bool any_active =
            any_member && max_member_sq >= 0 && sq_ge_units(max_member_sq, r);
        for (const auto& [dsq, a] : pts) {
            if (!sq_ge_units(dsq, r)) continue;
            if (best && best->sq == 0) break;
            const i64 cap_sq = best ? std::min(best->sq, sat_sq) : sat_sq;
            const i64 cap_units = std::min<i64>(sat, units_ceil_of_sq(cap_sq) + 1);
            i64 lb = 0;
            if (spec.lower_bound) {
                lb = spec.lower_bound(a, r, cap_units);
                if (lb >= cap_units) continue;
            }
            const auto pred = spec.local_pred ? spec.local_pred(a) : spec.target_contains;
            auto h = nearest_pred_by_rings(pred, model.dim(), a, cap_units, x0, r, lb);
            if (h && (!best || h->sq < best->sq ||
                      (h->sq == best->sq && lex_less(h->point, best->point)))) {
                best = h;
                self = a;
            }
        }
        ProfileEntry& e = out.profile.entries[gi];
        e.radius = r;
        if (!any_active) {
            e.value = ExactDist::infinite();
            e.exact = true;
        } else if (!best) {
            e.value = ExactDist::from_sq(sat_sq);
            e.saturated = true;
            e.exact = true;
        } else {
            e.value = ExactDist::from_sq(best->sq);
            e.exact = e.value.le_units(horizon - r);
            out.witnesses[gi] = std::make_pair(*self, best->point);
        }
    }
    return out;
}

}  // namespace

bool u_membership(const MetricModel& model, const TameSet& A, const AdequateSeq& f,
                  const Point& x0, const Point& x, i64 horizon) {
    model.check_point(x);
    model.check_point(x0);
    (void)horizon;
    if (A.contains(x)) return true;
    const i64 dsq = sq_dist(x, x0);
    i64 nstar = 0;
    for (i64 n = 1;; ++n) {
        if (sq_ge_units(dsq, f(n)))
            nstar = n;
        else
            break;
    }
    if (nstar == 0) return false;
    auto hit = A.nearest_upto(x, nstar, x0, 0);
    return hit && sq_lt_units(hit->sq, nstar);
}

TameSet u_set(const MetricModel& model, const TameSet& universe, const TameSet& A,
              const AdequateSeq& f, const Point& x0, i64 horizon) {
    DistSchedule sched = f.schedule_up_to(2 * horizon + 2 * norm_ceil_units(x0) + 4);
    std::string label = "U(" + A.describe() + "," + f.tag() + ")";
    return make_core_dist_filter(model, universe, A, std::move(sched), x0, std::move(label));
}

SeparatorReport separator_annular(const MetricModel& model, const TameSet& universe,
                                  const TameSet& A, const TameSet& B, const EngineParams& params) {
    SeparatorReport rep;
    const auto ba = effective_bounded(model, A, params);
    const auto bb = effective_bounded(model, B, params);
    if (bb.bounded) {
        // degenerate branch: E = B
        rep.separator = B;
        rep.verdict_first_vs_sep = decide_close(model, A, B, params);
        rep.verdict_complement_vs_second =
            decide_close(model, make_complement(model, universe, B), B, params);
        rep.note = "second set bounded; separator equals it";
        return rep;
    }
    if (ba.bounded) {
        // degenerate branch: E = X \ A
        TameSet e = make_complement(model, universe, A);
        rep.separator = e;
        rep.verdict_first_vs_sep = decide_close(model, A, e, params);
        rep.verdict_complement_vs_second = decide_close(model, A, B, params);
        rep.note = "first set bounded; separator is its complement";
        return rep;
    }

    auto pp = compute_pair_profile(model, A, B, params.grid, params.horizon, params.saturation());
    // extract radii: r_n with certified distance > n^2 and gaps > n + 1
    i64 prev = 0;
    for (i64 n = 1;; ++n) {
        bool found = false;
        for (const auto& e : pp.profile.entries) {
            if (e.radius <= prev) continue;
            if (n > 1 && e.radius - prev <= n + 1) continue;
            if (!e.exact) continue;
            if (!e.value.gt_units(n * n)) continue;
            rep.radii.push_back(e.radius);
            prev = e.radius;
            found = true;
            break;
        }
        if (!found) break;
    }
    if (rep.radii.size() < 4) {
        rep.inconclusive = true;
        rep.note = "profile insufficient to certify separator radii";
        rep.verdict_first_vs_sep = verdict_from_pair_profile(pp, params);
        rep.verdict_complement_vs_second.outcome = Outcome::Inconclusive;
        return rep;
    }

    DistSchedule sched;
    for (size_t i = 0; i < rep.radii.size(); ++i)
        sched.steps.push_back({rep.radii[i], static_cast<i64>(i + 1)});
    TameSet e = make_core_dist_filter(model, universe, B, sched, model.basepoint,
                                      "separator(" + B.describe() + ")");
    rep.separator = e;
    rep.verdict_first_vs_sep = decide_close(model, A, e, params);
    rep.verdict_complement_vs_second =
        decide_close(model, make_complement(model, universe, e), B, params);
    return rep;
}

SeparatorReport separator_voronoi(const MetricModel& model, const TameSet& universe,
                                  const TameSet& A, const TameSet& B, const EngineParams& params) {
    SeparatorReport rep;
    const Point x0 = model.basepoint;

    if (A.node() == B.node()) {
        // E is the whole space; its complement is empty.
        rep.separator = universe;
        rep.verdict_first_vs_sep = decide_close(model, A, universe, params);
        Verdict v;
        v.outcome = Outcome::Divergent;
        v.note = "complement of the separator is empty";
        v.horizon = params.horizon;
        v.tau = params.tau;
        v.eps_cap = params.eps_cap;
        rep.verdict_complement_vs_second = v;
        rep.note = "identical sets: separator is the whole space";
        return rep;
    }

    auto in_E = [&](const Point& p) {
        return universe.contains(p) && closer_or_tied(B, A, p, x0);
    };
    auto in_comp = [&](const Point& p) {
        return universe.contains(p) && !closer_or_tied(B, A, p, x0);
    };

    // E as a queryable set (membership only; scans below carry the verdicts)
    struct PredNode final : SetNode {
        MetricModel model;
        TameSet universe, a, b;
        Point x0;
        PredNode(MetricModel m, TameSet u, TameSet aa, TameSet bb, Point x)
            : model(m), universe(std::move(u)), a(std::move(aa)), b(std::move(bb)), x0(x) {}
        int dim() const override { return model.dim(); }
        bool contains(const Point& p) const override {
            return universe.contains(p) && closer_or_tied(b, a, p, x0);
        }
        void generate(i64 r, std::vector<Point>& out) const override {
            auto view = universe.enumerate(r);
            for (const auto& p : view)
                if (closer_or_tied(b, a, p, x0)) out.push_back(p);
        }
        BoundTag bound_tag() const override { return BoundTag::Unknown; }
        i64 estimate_count(i64 r) const override { return universe.node()->estimate_count(r); }
        bool integer_only() const override { return universe.integer_only(); }
        std::string describe() const override {
            return "halfspace(" + b.describe() + "<=" + a.describe() + ")";
        }
    };
    rep.separator = TameSet(std::make_shared<PredNode>(model, universe, A, B, x0));

    // Any separator point within c of a scan point forces the opposite base
    // set within 2c, which gives the relevance filter, a certified distance
    // floor of half the truncated base-set distance, and anchored local
    // membership tests: for p near the scan point, the distance to its own
    // base set is at most the hop, and the distance to the opposite one is
    // at least the anchored distance minus the hop.
    const i64 sat = params.saturation();
    auto base_spec = [&](const TameSet& opposite) {
        ScanSpec spec;
        spec.relevant = [opposite, x0, sat](const Point& p) {
            return opposite.nearest_upto(p, 2 * sat + 2, x0, 0).has_value();
        };
        spec.lower_bound = [opposite, x0](const Point& p, i64 r, i64 cap) {
            auto h = opposite.nearest_upto(p, 2 * cap + 2, x0, std::max<i64>(0, r - cap - 1));
            if (!h) return cap;  // no opposite base point in range: nothing within cap
            return isqrt_floor(h->sq / 4) / 2;
        };
        return spec;
    };

    // A against E = { d(.,B) <= d(.,A) }: a scan anchored at a in A knows
    // d(p,A) <= hop and d(p,B) >= d(a,B) - hop.
    {
        auto spec = base_spec(B);
        spec.target_contains = in_E;
        spec.local_pred = [&, x0, sat](const Point& a) -> std::function<bool(const Point&)> {
            auto far_hit = B.nearest_upto(a, 4 * sat, x0, 0);
            const i64 dB_a = far_hit ? units_ceil_of_sq(far_hit->sq) : 4 * sat;
            const TameSet uni = universe, As = A, Bs = B;
            return [=](const Point& p) {
                if (!uni.contains(p)) return false;
                const i64 hop = units_ceil_of_sq(sq_dist(p, a));
                auto ah = As.nearest_upto(p, hop + 1, x0, 0);
                if (!ah) return false;
                const i64 dA = units_ceil_of_sq(ah->sq);
                const i64 b_floor = std::max<i64>(0, dB_a - hop - 1);
                if (b_floor > dA) return false;  // B certainly farther: not in E
                auto bh = Bs.nearest_upto(p, dA + 1, x0, 0, b_floor);
                return bh && bh->sq <= ah->sq;
            };
        };
        auto ppA = profile_vs_membership(model, A, spec, params.grid, params.horizon, sat);
        rep.verdict_first_vs_sep = verdict_from_pair_profile(ppA, params);
    }

    // B against X \ E = { d(.,A) < d(.,B) }, anchored at b in B.
    {
        auto spec = base_spec(A);
        spec.target_contains = in_comp;
        spec.local_pred = [&, x0, sat](const Point& b) -> std::function<bool(const Point&)> {
            auto far_hit = A.nearest_upto(b, 4 * sat, x0, 0);
            const i64 dA_b = far_hit ? units_ceil_of_sq(far_hit->sq) : 4 * sat;
            const TameSet uni = universe, As = A, Bs = B;
            return [=](const Point& p) {
                if (!uni.contains(p)) return false;
                const i64 hop = units_ceil_of_sq(sq_dist(p, b));
                auto bh = Bs.nearest_upto(p, hop + 1, x0, 0);
                if (!bh) return false;
                const i64 dB = units_ceil_of_sq(bh->sq);
                const i64 a_floor = std::max<i64>(0, dA_b - hop - 1);
                if (a_floor >= dB) return false;  // A certainly no closer
                auto ah = As.nearest_upto(p, dB, x0, 0, a_floor);
                return ah && ah->sq < bh->sq;
            };
        };
        auto ppB = profile_vs_membership(model, B, spec, params.grid, params.horizon, sat);
        rep.verdict_complement_vs_second = verdict_from_pair_profile(ppB, params);
    }
    return rep;
}

}  // namespace coarseprox
