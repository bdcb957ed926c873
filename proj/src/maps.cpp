#include "coarseprox/maps.hpp"

#include <algorithm>
#include <limits>

namespace coarseprox {

namespace {

std::array<std::string, 3> domain_vars(int dim) {
    if (dim == 1) return {"x", "", ""};
    if (dim == 2) return {"x", "y", ""};
    return {"x", "y", "z"};
}

i64 escape_bound_for_image(const PointMap& h, i64 r) {
    i64 best = std::numeric_limits<i64>::max();
    for (const auto& c : h.coords) {
        if (c.is_constant()) continue;
        best = std::min(best, c.escape_index(r));
    }
    if (best == std::numeric_limits<i64>::max()) return 0;  // constant map
    return best;
}

class ImageNode final : public SetNode {
public:
    ImageNode(PointMap h, TameSet inner) : h_(std::move(h)), inner_(std::move(inner)) {
        if (h_.domain.dim() != 1)
            throw std::invalid_argument("image sets require a 1-dimensional domain");
    }
    int dim() const override { return h_.codomain.dim(); }
    bool contains(const Point& p) const override {
        if (!h_.codomain.valid_point(p)) return false;
        return contains_via_enumeration(p);
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        const i64 src = std::max<i64>(escape_bound_for_image(h_, r), 1);
        auto view = inner_.enumerate(src);
        for (const auto& x : view) {
            Point y = h_.apply(x);
            if (h_.codomain.valid_point(y)) out.push_back(y);
        }
    }
    BoundTag bound_tag() const override {
        bool nonconst = false;
        for (const auto& c : h_.coords) nonconst = nonconst || !c.is_constant();
        if (!nonconst) return BoundTag::Bounded;
        if (inner_.bound_tag() == BoundTag::Bounded) return BoundTag::Bounded;
        if (inner_.bound_tag() == BoundTag::Unbounded) return BoundTag::Unbounded;
        return BoundTag::Unknown;
    }
    std::optional<i64> extent_units() const override {
        if (bound_tag() != BoundTag::Bounded) return std::nullopt;
        auto e = inner_.extent_units();
        if (!e) return std::nullopt;
        i64 worst = 0;
        auto view = inner_.enumerate(*e + 1);
        for (const auto& x : view) worst = std::max(worst, norm_ceil_units(h_.apply(x)));
        return worst;
    }
    i64 estimate_count(i64 r) const override {
        return inner_.node()->estimate_count(std::max<i64>(escape_bound_for_image(h_, r), 1));
    }
    std::string describe() const override {
        return "image(" + h_.str() + "," + inner_.describe() + ")";
    }

private:
    PointMap h_;
    TameSet inner_;
};

class PreimageNode final : public SetNode {
public:
    PreimageNode(PointMap h, TameSet uni, TameSet target)
        : h_(std::move(h)), uni_(std::move(uni)), target_(std::move(target)) {}
    int dim() const override { return h_.domain.dim(); }
    bool contains(const Point& p) const override {
        if (!uni_.contains(p)) return false;
        return target_.contains(h_.apply(p));
    }
    void generate(i64 r, std::vector<Point>& out) const override {
        auto view = uni_.enumerate(r);
        for (const auto& p : view)
            if (target_.contains(h_.apply(p))) out.push_back(p);
    }
    BoundTag bound_tag() const override { return BoundTag::Unknown; }
    i64 estimate_count(i64 r) const override { return uni_.node()->estimate_count(r); }
    bool integer_only() const override { return uni_.integer_only(); }
    std::string describe() const override {
        return "preimage(" + h_.str() + "," + target_.describe() + ")";
    }

private:
    PointMap h_;
    TameSet uni_, target_;
};

}  // namespace

Point PointMap::apply(const Point& p) const {
    if (p.dim != domain.dim()) throw std::invalid_argument("map applied to wrong dimension");
    if (!p.is_integer()) throw std::invalid_argument("maps evaluate on integer points only");
    std::array<i64, 3> vars{p.h[0] / 2, p.dim > 1 ? p.h[1] / 2 : 0, p.dim > 2 ? p.h[2] / 2 : 0};
    Point out{codomain.dim(), {0, 0, 0}};
    for (int i = 0; i < codomain.dim(); ++i) {
        out.h[i] = 2 * coords[i].eval(std::span<const i64>(vars.data(), domain.dim()));
    }
    return out;
}

std::string PointMap::str() const {
    const auto vars = domain_vars(domain.dim());
    std::string lhs = domain.dim() == 1 ? vars[0] : "(" + vars[0] + "," + vars[1] +
                                                        (domain.dim() > 2 ? "," + vars[2] : "") +
                                                        ")";
    std::string rhs;
    if (codomain.dim() == 1) {
        rhs = coords[0].str(vars);
    } else {
        rhs = "(";
        for (int i = 0; i < codomain.dim(); ++i) {
            if (i) rhs += ",";
            rhs += coords[i].str(vars);
        }
        rhs += ")";
    }
    return lhs + " -> " + rhs;
}

PointMap compose(const PointMap& outer, const PointMap& inner) {
    if (outer.domain.dim() != inner.codomain.dim())
        throw std::invalid_argument("compose: dimension mismatch");
    // substitute inner coordinates into each outer polynomial
    PointMap out;
    out.domain = inner.domain;
    out.codomain = outer.codomain;
    for (const auto& oc : outer.coords) {
        Poly acc(0);
        for (const auto& term : oc.terms()) {
            Poly t(term.coef);
            for (int v = 0; v < 3; ++v)
                for (int e = 0; e < term.exp[v]; ++e) t = t * inner.coords[v];
            acc = acc + t;
        }
        out.coords.push_back(acc);
    }
    return out;
}

CoarseMapModuli moduli_estimate(const PointMap& h, i64 horizon, i64 range) {
    CoarseMapModuli out;
    out.range = range;
    out.pair_cap = 128;
    if (h.domain.dim() > 1) horizon = std::min<i64>(horizon, 512);
    const Point x0 = h.domain.basepoint;
    const Point y0 = h.codomain.basepoint;
    auto domain_all = universe_of_model(h.domain);
    auto view = domain_all.enumerate(horizon + norm_ceil_units(x0) + 1);

    std::vector<std::pair<i64, i64>> img_norms;  // (|x - x0| ceil, |h(x) - y0| sq)
    std::vector<Point> pts;
    for (const auto& x : view) {
        if (!sq_le_units(sq_dist(x, x0), horizon)) continue;
        pts.push_back(x);
        img_norms.push_back({norm_ceil_units(Point{
                                 x.dim, {x.h[0] - x0.h[0], x.dim > 1 ? x.h[1] - x0.h[1] : 0,
                                         x.dim > 2 ? x.h[2] - x0.h[2] : 0}}),
                             sq_dist(h.apply(x), y0)});
    }

    // T(n): least k with preimage of the open n-ball inside the open k-ball
    for (i64 n = 1; n <= range; ++n) {
        i64 deep = 0;
        for (const auto& [xn, ysq] : img_norms) {
            if (sq_lt_units(ysq, n)) deep = std::max(deep, xn);
        }
        out.T.push_back(deep + 1);
        out.T_divergent.push_back(deep >= (horizon * 9) / 10);
    }

    // rho(n): scan pairs bucketed by domain distance (1-dimensional domains
    // walk offset pairs; higher dimensions sample grid neighbors)
    std::vector<i64> worst_img_for_gap(out.pair_cap + 1, 0);  // max image sq per domain gap
    if (h.domain.dim() == 1) {
        for (size_t i = 0; i < pts.size(); ++i) {
            const Point img_p = h.apply(pts[i]);
            for (i64 gap = 1; gap <= out.pair_cap; ++gap) {
                Point q = Point::integer1(pts[i].h[0] / 2 + gap);
                if (!h.domain.valid_point(q)) break;
                if (!sq_le_units(sq_dist(q, x0), horizon)) break;
                const i64 img = sq_dist(img_p, h.apply(q));
                worst_img_for_gap[gap] = std::max(worst_img_for_gap[gap], img);
            }
        }
    } else {
        for (const auto& p : pts) {
            for (i64 dx = -4; dx <= 4; ++dx)
                for (i64 dy = -4; dy <= 4; ++dy) {
                    if (!dx && !dy) continue;
                    Point q = p;
                    q.h[0] += 2 * dx;
                    if (p.dim > 1) q.h[1] += 2 * dy;
                    if (!h.domain.valid_point(q)) continue;
                    if (!sq_le_units(sq_dist(q, x0), horizon)) continue;
                    const i64 gap = norm_ceil_units(Point{p.dim, {2 * dx, 2 * dy, 0}});
                    if (gap > out.pair_cap) continue;
                    const i64 img = sq_dist(h.apply(p), h.apply(q));
                    worst_img_for_gap[gap] = std::max(worst_img_for_gap[gap], img);
                }
        }
    }
    // make cumulative: worst image distance over all gaps <= m
    for (i64 m = 2; m <= out.pair_cap; ++m)
        worst_img_for_gap[m] = std::max(worst_img_for_gap[m], worst_img_for_gap[m - 1]);
    for (i64 n = 1; n <= range; ++n) {
        i64 best = 0;
        for (i64 m = 1; m <= out.pair_cap; ++m) {
            if (sq_lt_units(worst_img_for_gap[m], n))
                best = m;
            else
                break;
        }
        out.rho.push_back(std::max<i64>(best, 1));
    }
    return out;
}

CoarseCheck check_coarse(const PointMap& h, const EngineParams& params) {
    CoarseCheck out;
    out.moduli = moduli_estimate(h, params.horizon);
    out.proper = true;
    for (bool d : out.moduli.T_divergent)
        if (d) out.proper = false;
    if (!out.proper) out.note = "preimage of a bounded ball keeps growing at the horizon";
    // bornologous: rho must get past its floor and keep climbing, unless it
    // has already pegged the sampling cap (e.g. constant maps)
    const auto& rho = out.moduli.rho;
    out.bornologous = rho.back() >= 2 && (rho.back() > rho[rho.size() / 4] ||
                                          rho.back() >= out.moduli.pair_cap);
    if (!out.bornologous) {
        if (!out.note.empty()) out.note += "; ";
        out.note += "bounded families spread out: rho stalls at " + std::to_string(rho.back());
    }
    return out;
}

TameSet image_set(const PointMap& h, const TameSet& S) {
    return TameSet(std::make_shared<ImageNode>(h, S));
}

TameSet preimage_set(const PointMap& h, const TameSet& domain_universe, const TameSet& target) {
    return TameSet(std::make_shared<PreimageNode>(h, domain_universe, target));
}

CpmCheck check_cpm(const PointMap& h, const std::vector<std::pair<std::string, TameSet>>& sets,
                   const std::vector<std::pair<size_t, size_t>>& close_pairs,
                   const EngineParams& params) {
    CpmCheck out;
    out.bounded_preserved = true;
    for (const auto& [name, s] : sets) {
        if (s.bound_tag() != BoundTag::Bounded) continue;
        auto img = image_set(h, s);
        if (img.bound_tag() != BoundTag::Bounded) {
            out.bounded_preserved = false;
            out.failures.push_back("image of bounded set " + name + " not bounded");
        }
    }
    out.closeness_preserved = true;
    for (const auto& [ia, ib] : close_pairs) {
        auto img_a = image_set(h, sets[ia].second);
        auto img_b = image_set(h, sets[ib].second);
        MetricModel cod = h.codomain;
        auto v = decide_close(cod, img_a, img_b, params);
        if (!v.close()) {
            out.closeness_preserved = false;
            out.failures.push_back("images of close pair (" + sets[ia].first + "," +
                                   sets[ib].first + ") verdict " + outcome_name(v.outcome));
        }
    }
    out.agrees_with_coarse = (check_coarse(h, params).pass() == out.pass());
    return out;
}

Verdict maps_close(const PointMap& h, const PointMap& l, const EngineParams& params) {
    if (h.domain.kind != l.domain.kind || h.codomain.kind != l.codomain.kind)
        throw std::invalid_argument("maps_close: mismatched models");
    Verdict v;
    v.horizon = params.horizon;
    v.tau = params.tau;
    v.eps_cap = params.eps_cap;
    const i64 hor =
        h.domain.dim() > 1 ? std::min<i64>(params.horizon, 512) : params.horizon;
    const Point x0 = h.domain.basepoint;
    auto domain_all = universe_of_model(h.domain);
    auto view = domain_all.enumerate(hor + norm_ceil_units(x0) + 1);
    DistanceProfile prof;
    prof.basepoint = x0;
    prof.horizon = params.horizon;
    // one pass: worst image gap per point, folded into the grid
    std::vector<ExactDist> worst(params.grid.size(), ExactDist::zero());
    for (const auto& x : view) {
        const i64 dsq = sq_dist(x, x0);
        if (!sq_le_units(dsq, hor)) continue;
        const ExactDist gap = ExactDist::from_sq(sq_dist(h.apply(x), l.apply(x)));
        for (size_t gi = 0; gi < params.grid.size(); ++gi) {
            if (sq_le_units(dsq, params.grid[gi]) && worst[gi] < gap) worst[gi] = gap;
        }
    }
    for (size_t gi = 0; gi < params.grid.size(); ++gi) {
        prof.entries.push_back({params.grid[gi], worst[gi], true, false});
    }
    v.profile = prof;
    bool all_small = true;
    ExactDist sup = ExactDist::zero();
    for (const auto& e : prof.entries) {
        if (!e.value.lt_units(params.eps_cap)) all_small = false;
        if (sup < e.value) sup = e.value;
    }
    if (all_small) {
        v.outcome = Outcome::Close;
        v.epsilon = sup.strict_int_bound();
    } else if (prof.entries.back().value.gt_units(params.tau) ||
               (prof.entries.back().value.ge_units(4) &&
                prof.entries.back().value.sq > prof.entries[prof.entries.size() / 2].value.sq)) {
        v.outcome = Outcome::Divergent;
    } else {
        v.outcome = Outcome::Inconclusive;
    }
    return v;
}

InducedClassMap induced_class_map(const PointMap& h, const std::vector<TameSet>& reps,
                                  const EngineParams& params) {
    InducedClassMap out;
    for (const auto& r : reps) out.images.push_back(image_set(h, r));
    out.well_defined = true;
    MetricModel dom = h.domain;
    MetricModel cod = h.codomain;
    for (size_t i = 0; i < reps.size(); ++i) {
        for (size_t j = i + 1; j < reps.size(); ++j) {
            auto rel = phi_related(dom, reps[i], reps[j], params);
            if (!rel.conclusive()) continue;
            auto img_rel = phi_related(cod, out.images[i], out.images[j], params);
            if (rel.close()) {
                if (!img_rel.close()) {
                    out.well_defined = false;
                    out.notes.push_back("related representatives " + std::to_string(i) + "," +
                                        std::to_string(j) + " map to " +
                                        outcome_name(img_rel.outcome));
                }
            }
        }
    }
    return out;
}

}  // namespace coarseprox
