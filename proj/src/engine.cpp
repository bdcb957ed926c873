#include "coarseprox/engine.hpp"

#include <algorithm>
#include <cmath>

namespace coarseprox {

namespace {

i64 units_ceil_of_sq(i64 sq) {
    if (sq < 0) return -1;
    return (isqrt_floor(sq) + 2) / 2;
}

// d1 >= k * d2, exactly, treating infinity as always-greater.
bool dist_ge_scaled(const ExactDist& d1, const ExactDist& d2, i64 k) {
    if (d1.is_inf()) return true;
    if (d2.is_inf()) return false;
    return d1.sq >= k * k * d2.sq;
}

bool divergent_profile(const DistanceProfile& prof, i64 tau) {
    if (prof.entries.empty()) return false;
    if (!prof.all_certified()) return false;
    if (!prof.nondecreasing()) return false;
    const auto& first_e = prof.entries.front();
    const auto& last = prof.entries.back().value;
    // route 1: the tail clears the divergence threshold, with certified
    // growth along the way (a flat profile above the threshold is a finite
    // gap, not divergence)
    if (last.gt_units(tau)) {
        if (first_e.value.is_inf()) return true;  // empty truncations throughout
        if (last.is_inf()) return true;           // tail empties out at the horizon
        if (!first_e.saturated && last.sq >= 2 * std::max<i64>(first_e.value.sq, 1)) return true;
    }
    // route 2: sustained growth across the grid
    const size_t n = prof.entries.size();
    if (n < 8) return false;
    if (first_e.saturated) return false;
    const auto& first = first_e.value;
    const auto& quarter = prof.entries[n / 4].value;
    const auto& near_end = prof.entries[n - 4].value;
    if (!last.ge_units(4)) return false;
    if (!dist_ge_scaled(last, first, 4)) return false;
    if (!dist_ge_scaled(last, quarter, 2)) return false;
    if (last.is_inf() || near_end.is_inf()) return false;  // covered above
    return last.sq > near_end.sq;
}

}  // namespace

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Close: return "CLOSE";
        case Outcome::Divergent: return "DIVERGENT";
        case Outcome::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string boundedness_name(Boundedness b) {
    switch (b) {
        case Boundedness::Unbounded: return "UNBOUNDED";
        case Boundedness::Bounded: return "BOUNDED";
        case Boundedness::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

void EngineParams::validate_and_fill() {
    if (horizon < 8) throw std::invalid_argument("horizon too small");
    if (tau <= eps_cap) throw std::invalid_argument("divergence threshold must exceed the epsilon cap");
    if (grid.empty()) {
        const i64 rmax = horizon / 2;
        const i64 rmin = std::min<i64>(4, rmax);
        grid.clear();
        for (int k = 0; k < grid_points; ++k) {
            const double t = grid_points == 1 ? 1.0 : double(k) / double(grid_points - 1);
            const i64 r = static_cast<i64>(
                std::llround(double(rmin) * std::pow(double(rmax) / double(rmin), t)));
            grid.push_back(std::max<i64>(1, r));
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    if (grid.back() > horizon / 2) throw std::invalid_argument("grid max above horizon/2");
    for (i64 r : grid)
        if (r <= 0) throw std::invalid_argument("grid radii must be positive");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("grid radii must be increasing");
}

EffectiveBound effective_bounded(const MetricModel& model, const TameSet& S,
                                 const EngineParams& params) {
    switch (S.bound_tag()) {
        case BoundTag::Bounded: return {true, "declared bounded"};
        case BoundTag::Unbounded: return {false, ""};
        case BoundTag::Unknown: break;
    }
    if (find_member_beyond(model, S, params.grid.back(), params.horizon)) return {false, ""};
    return {true, "no members beyond r=" + std::to_string(params.grid.back()) + " at horizon"};
}

Verdict decide_close(const MetricModel& model, const TameSet& A, const TameSet& B,
                     const EngineParams& params) {
    Verdict v;
    v.horizon = params.horizon;
    v.tau = params.tau;
    v.eps_cap = params.eps_cap;
    v.profile.basepoint = model.basepoint;
    v.profile.horizon = params.horizon;

    const auto ba = effective_bounded(model, A, params);
    const auto bb = effective_bounded(model, B, params);
    if (ba.bounded || bb.bounded) {
        v.outcome = Outcome::Divergent;
        v.note = ba.bounded ? ("first set: " + ba.why) : ("second set: " + bb.why);
        return v;
    }

    auto pp = compute_pair_profile(model, A, B, params.grid, params.horizon, params.saturation());
    Verdict pv = verdict_from_pair_profile(pp, params);
    pv.note = v.note;
    return pv;
}

Verdict verdict_from_pair_profile(const PairProfile& pp, const EngineParams& params) {
    Verdict v;
    v.horizon = params.horizon;
    v.tau = params.tau;
    v.eps_cap = params.eps_cap;
    v.profile = pp.profile;

    bool all_witnessed = true;
    ExactDist worst = ExactDist::zero();
    for (size_t i = 0; i < pp.profile.entries.size(); ++i) {
        const auto& e = pp.profile.entries[i];
        if (pp.witnesses[i] && e.value.lt_units(params.eps_cap)) {
            v.witnesses.push_back(
                {e.radius, pp.witnesses[i]->first, pp.witnesses[i]->second, e.value});
            if (worst < e.value) worst = e.value;
        } else {
            all_witnessed = false;
        }
    }

    if (all_witnessed && !pp.profile.entries.empty() &&
        pp.profile.entries.back().radius >= params.tau) {
        v.outcome = Outcome::Close;
        v.epsilon = worst.strict_int_bound();
        return v;
    }
    if (divergent_profile(v.profile, params.tau)) {
        v.outcome = Outcome::Divergent;
        return v;
    }
    v.outcome = Outcome::Inconclusive;
    if (all_witnessed) v.note = "witnessed at every radius but grid max below tau";
    return v;
}

Verdict phi_related(const MetricModel& model, const TameSet& A, const TameSet& B,
                    const EngineParams& params) {
    Verdict v;
    v.horizon = params.horizon;
    v.tau = params.tau;
    v.eps_cap = params.eps_cap;
    v.profile.basepoint = model.basepoint;
    v.profile.horizon = params.horizon;

    const auto ba = effective_bounded(model, A, params);
    const auto bb = effective_bounded(model, B, params);
    if (ba.bounded && bb.bounded) {
        v.outcome = Outcome::Close;
        v.epsilon = 0;
        v.note = "bounded sets are always related (the empty set counts as bounded)";
        return v;
    }
    if (ba.bounded != bb.bounded) {
        v.outcome = Outcome::Divergent;
        v.note = "bounded set against unbounded set";
        return v;
    }

    v.profile = hausdorff_profile(model, A, B, params.grid, params.horizon, params.saturation());
    bool all_small = true;
    ExactDist worst = ExactDist::zero();
    for (const auto& e : v.profile.entries) {
        if (!(e.exact && !e.saturated && e.value.lt_units(params.eps_cap))) all_small = false;
        if (!e.value.is_inf() && worst < e.value) worst = e.value;
    }
    if (all_small && params.grid.back() >= params.tau) {
        v.outcome = Outcome::Close;
        v.epsilon = worst.strict_int_bound();
        return v;
    }
    // Saturated Hausdorff entries are certified lower bounds, so divergence
    // may use them; inexact sampled entries may not certify.
    DistanceProfile certified = v.profile;
    if (divergent_profile(certified, params.tau)) {
        v.outcome = Outcome::Divergent;
        return v;
    }
    v.outcome = Outcome::Inconclusive;
    return v;
}

BoundednessVerdict is_unbounded(const MetricModel& model, const TameSet& S,
                                const EngineParams& params) {
    BoundednessVerdict out;
    if (S.bound_tag() == BoundTag::Bounded) {
        auto e = S.extent_units();
        if (e && *e <= params.horizon) {
            out.outcome = Boundedness::Bounded;
            out.note = "declared bounded; enumeration stable within extent " + std::to_string(*e);
            return out;
        }
        out.outcome = Boundedness::Inconclusive;
        out.note = "declared bounded but extent beyond horizon";
        return out;
    }
    bool all = true;
    for (i64 r : params.grid) {
        auto w = find_member_beyond(model, S, r, params.horizon);
        if (!w) {
            all = false;
            break;
        }
        out.escape_witnesses.push_back(*w);
    }
    if (all) {
        out.outcome = Boundedness::Unbounded;
        return out;
    }
    out.outcome = Boundedness::Inconclusive;
    out.note = "no members found beyond some grid radius at horizon";
    return out;
}

CharacterizationReport check_characterizations(const MetricModel& model, const TameSet& A,
                                               const TameSet& B, const EngineParams& params) {
    CharacterizationReport rep;
    rep.profile_form = decide_close(model, A, B, params);

    const Point x0 = model.basepoint;
    const auto ba = effective_bounded(model, A, params);
    const auto bb = effective_bounded(model, B, params);

    // (2) witness-pair form: a pair outside every tested bounded region.
    {
        Verdict v;
        v.horizon = params.horizon;
        v.tau = params.tau;
        v.eps_cap = params.eps_cap;
        if (ba.bounded || bb.bounded) {
            v.outcome = Outcome::Divergent;
            v.note = "bounded input";
        } else {
            bool all_found = true;
            ExactDist worst = ExactDist::zero();
            const i64 enum_radius = params.horizon + norm_ceil_units(x0) + 1;
            for (i64 r : params.grid) {
                bool found = false;
                if (A.enumerable_at(enum_radius)) {
                    auto view = A.enumerate(enum_radius);
                    int tried = 0;
                    for (const auto& a : view) {
                        if (!sq_ge_units(sq_dist(a, x0), r)) continue;
                        if (!sq_le_units(sq_dist(a, x0), params.horizon)) continue;
                        if (++tried > 64) break;
                        auto h = B.nearest_upto(a, params.eps_cap, x0, r);
                        if (h && sq_lt_units(h->sq, params.eps_cap)) {
                            found = true;
                            const ExactDist d = ExactDist::from_sq(h->sq);
                            if (worst < d) worst = d;
                            v.witnesses.push_back({r, a, h->point, d});
                            break;
                        }
                    }
                } else {
                    for (const auto& a :
                         sample_members(A, x0, r, params.horizon, 64)) {
                        auto h = B.nearest_upto(a, params.eps_cap, x0, r);
                        if (h && sq_lt_units(h->sq, params.eps_cap)) {
                            found = true;
                            const ExactDist d = ExactDist::from_sq(h->sq);
                            if (worst < d) worst = d;
                            v.witnesses.push_back({r, a, h->point, d});
                            break;
                        }
                    }
                }
                if (!found) {
                    all_found = false;
                    break;
                }
            }
            if (all_found && params.grid.back() >= params.tau) {
                v.outcome = Outcome::Close;
                v.epsilon = worst.strict_int_bound();
            } else {
                // negative evidence: exact minima above tau on the tail radii
                std::vector<i64> tail(params.grid.end() - std::min<size_t>(4, params.grid.size()),
                                      params.grid.end());
                auto pp = compute_pair_profile(model, A, B, tail, params.horizon,
                                               params.saturation());
                bool big = pp.profile.all_certified();
                for (const auto& e : pp.profile.entries)
                    if (!e.value.gt_units(params.tau)) big = false;
                if (big) {
                    v.outcome = Outcome::Divergent;
                    v.profile = pp.profile;
                } else if (divergent_profile(rep.profile_form.profile, params.tau)) {
                    v.outcome = Outcome::Divergent;
                    v.note = "tail minima below tau; growth route";
                    v.profile = pp.profile;
                } else {
                    v.outcome = Outcome::Inconclusive;
                }
            }
        }
        rep.witness_form = v;
    }

    // (3) greedy unbounded subsets of finite Hausdorff distance.
    {
        Verdict v;
        v.horizon = params.horizon;
        v.tau = params.tau;
        v.eps_cap = params.eps_cap;
        std::vector<Point> a1, b1;
        if (ba.bounded || bb.bounded) {
            v.outcome = Outcome::Divergent;
            v.note = "bounded input";
        } else {
            const i64 enum_radius = params.horizon + norm_ceil_units(x0) + 1;
            std::vector<Point> candidates;
            if (A.enumerable_at(enum_radius)) {
                auto view = A.enumerate(enum_radius);
                candidates.assign(view.begin(), view.end());
            } else {
                for (i64 r : params.grid) {
                    auto s = sample_members(A, x0, r, params.horizon, 32);
                    candidates.insert(candidates.end(), s.begin(), s.end());
                }
            }
            ExactDist worst = ExactDist::zero();
            for (const auto& a : candidates) {
                if (!sq_le_units(sq_dist(a, x0), params.horizon)) continue;
                auto h = B.nearest_upto(a, params.eps_cap, x0, 0);
                if (h && sq_lt_units(h->sq, params.eps_cap)) {
                    a1.push_back(a);
                    b1.push_back(h->point);
                    const ExactDist d = ExactDist::from_sq(h->sq);
                    if (worst < d) worst = d;
                }
            }
            i64 reach_sq = -1;
            for (const auto& a : a1) reach_sq = std::max(reach_sq, sq_dist(a, x0));
            const ExactDist reach = reach_sq < 0 ? ExactDist::zero() : ExactDist::from_sq(reach_sq);
            if (!a1.empty() && reach.gt_units(params.grid.back()) &&
                params.grid.back() >= params.tau) {
                v.outcome = Outcome::Close;
                v.epsilon = worst.strict_int_bound();
                v.note = "greedy subsets of size " + std::to_string(a1.size());
            } else if (A.enumerable_at(enum_radius) &&
                       !reach.gt_units(params.grid[params.grid.size() / 2])) {
                v.outcome = Outcome::Divergent;
                v.note = "matched subset stops at " + reach.str();
            } else {
                v.outcome = Outcome::Inconclusive;
            }
        }
        rep.greedy_a1 = make_points(model, a1);
        rep.greedy_b1 = make_points(model, b1);
        rep.subset_form = v;
    }

    rep.conclusive = rep.profile_form.conclusive() && rep.witness_form.conclusive() &&
                     rep.subset_form.conclusive();
    rep.agree = rep.conclusive && rep.profile_form.outcome == rep.witness_form.outcome &&
                rep.witness_form.outcome == rep.subset_form.outcome;
    return rep;
}

}  // namespace coarseprox
