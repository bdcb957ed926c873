#pragma once

// Adequate sequences: positive integer radius schedules with gaps
// f(n) - f(n-1) > n + 1. They parameterize the tiered coarse neighborhoods
// and the proximity at infinity.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "coarseprox/geometry.hpp"
#include "coarseprox/model.hpp"
#include "coarseprox/poly.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

class AdequateSeq {
public:
    AdequateSeq() = default;
    AdequateSeq(std::string tag, std::function<i64(i64)> fn);
    static AdequateSeq from_poly(const Poly& p);

    // f(n) for n >= 1, memoized.
    i64 operator()(i64 n) const;
    const std::string& tag() const { return tag_; }

    // Schedule of (f(n), n) steps covering radii up to max_radius.
    DistSchedule schedule_up_to(i64 max_radius) const;

private:
    std::string tag_;
    std::function<i64(i64)> fn_;
    struct Memo {
        std::mutex mu;
        std::vector<i64> vals;
    };
    std::shared_ptr<Memo> memo_;
};

struct AdequacyCheck {
    bool ok = false;
    i64 first_violation = 0;  // index n where the gap (or positivity) fails
    std::string detail;
};
AdequacyCheck validate_adequate(const AdequateSeq& f, i64 n_max);

// g(n) = f(n^2); adequate whenever f is.
AdequateSeq star_refine(const AdequateSeq& f);

// h(n) = max(f(n), g(n)).
AdequateSeq max_refine(const AdequateSeq& f, const AdequateSeq& g);

// Basepoint transfer: g(1) = T(1), g(n) = max(T(n^2), g(n-1) + n + 2) with
// T(n) the least integer radius about x0 covering the f(n)-ball about x1.
AdequateSeq basepoint_change_seq(const MetricModel& model, const AdequateSeq& f, const Point& x0,
                                 const Point& x1);

}  // namespace coarseprox
