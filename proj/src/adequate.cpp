#include "coarseprox/adequate.hpp"

#include <algorithm>

namespace coarseprox {

AdequateSeq::AdequateSeq(std::string tag, std::function<i64(i64)> fn)
    : tag_(std::move(tag)), fn_(std::move(fn)), memo_(std::make_shared<Memo>()) {}

AdequateSeq AdequateSeq::from_poly(const Poly& p) {
    return AdequateSeq(p.str1("n"), [p](i64 n) { return p.eval1(n); });
}

i64 AdequateSeq::operator()(i64 n) const {
    if (n < 1) throw std::invalid_argument("adequate sequence index starts at 1");
    std::lock_guard<std::mutex> lk(memo_->mu);
    while (static_cast<i64>(memo_->vals.size()) < n) {
        memo_->vals.push_back(fn_(static_cast<i64>(memo_->vals.size()) + 1));
    }
    return memo_->vals[n - 1];
}

DistSchedule AdequateSeq::schedule_up_to(i64 max_radius) const {
    DistSchedule s;
    for (i64 n = 1;; ++n) {
        const i64 fn = (*this)(n);
        if (fn > max_radius) break;
        s.steps.push_back({fn, n});
        if (n > 1'000'000) throw std::range_error("schedule too long");
    }
    return s;
}

AdequacyCheck validate_adequate(const AdequateSeq& f, i64 n_max) {
    AdequacyCheck out;
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    i64 prev = 0;
    for (i64 n = 1; n <= n_max; ++n) {
        const i64 v = f(n);
        if (v <= 0) {
            out.first_violation = n;
            out.detail = "f(" + std::to_string(n) + ") = " + std::to_string(v) + " is not positive";
            return out;
        }
        if (n > 1 && v - prev <= n + 1) {
            out.first_violation = n;
            out.detail = "gap f(" + std::to_string(n) + ")-f(" + std::to_string(n - 1) + ") = " +
                         std::to_string(v - prev) + " needs > " + std::to_string(n + 1);
            return out;
        }
        prev = v;
    }
    out.ok = true;
    return out;
}

AdequateSeq star_refine(const AdequateSeq& f) {
    return AdequateSeq("star(" + f.tag() + ")", [f](i64 n) { return f(n * n); });
}

AdequateSeq max_refine(const AdequateSeq& f, const AdequateSeq& g) {
    return AdequateSeq("max(" + f.tag() + "," + g.tag() + ")",
                       [f, g](i64 n) { return std::max(f(n), g(n)); });
}

AdequateSeq basepoint_change_seq(const MetricModel& model, const AdequateSeq& f, const Point& x0,
                                 const Point& x1) {
    model.check_point(x0);
    model.check_point(x1);
    const i64 offset = norm_ceil_units(Point{
        x0.dim, {x1.h[0] - x0.h[0], x0.dim > 1 ? x1.h[1] - x0.h[1] : 0,
                 x0.dim > 2 ? x1.h[2] - x0.h[2] : 0}});
    auto T = [f, offset](i64 n) { return f(n) + offset; };
    // values build on each other; share one table through the closure
    auto vals = std::make_shared<std::vector<i64>>();
    auto fn = [T, vals](i64 n) {
        while (static_cast<i64>(vals->size()) < n) {
            const i64 k = static_cast<i64>(vals->size()) + 1;
            if (k == 1) {
                vals->push_back(T(1));
            } else {
                vals->push_back(std::max(T(k * k), (*vals)[k - 2] + k + 2));
            }
        }
        return (*vals)[n - 1];
    };
    return AdequateSeq("basepoint-change(" + f.tag() + ")", fn);
}

}  // namespace coarseprox
