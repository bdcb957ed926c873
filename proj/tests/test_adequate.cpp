#include "coarseprox/adequate.hpp"
#include "coarseprox/setdsl.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
AdequateSeq seq_of(const std::string& text) {
    return AdequateSeq::from_poly(parse_poly(text, {"n", "", ""}));
}
}  // namespace

TEST_CASE("gap validation") {
    CHECK(validate_adequate(seq_of("n^3"), 100).ok);
    // f(n) = n fails at n = 2: gap 1 needs > 3
    auto lin = validate_adequate(seq_of("n"), 3);
    CHECK(!lin.ok);
    CHECK(lin.first_violation == 2);
    // f(n) = n^2 fails at n = 2: gap 3 needs > 3
    auto sq = validate_adequate(seq_of("n^2"), 100);
    CHECK(!sq.ok);
    CHECK(sq.first_violation == 2);
    // positivity
    auto neg = validate_adequate(seq_of("n-5"), 10);
    CHECK(!neg.ok);
    CHECK(neg.first_violation == 1);
}

TEST_CASE("star refinement squares the index") {
    auto f = seq_of("n^3");
    auto g = star_refine(f);
    CHECK(g(2) == f(4));
    for (i64 n = 1; n <= 6; ++n) CHECK(g(n) == n * n * n * n * n * n);
    CHECK(validate_adequate(g, 100).ok);
}

TEST_CASE("max refinement") {
    auto f = seq_of("n^3");
    auto g = seq_of("2n^3+5n");
    auto h = max_refine(f, g);
    for (i64 n = 1; n <= 20; ++n) CHECK(h(n) == std::max(f(n), g(n)));
    CHECK(validate_adequate(h, 100).ok);
    auto same = max_refine(f, f);
    for (i64 n = 1; n <= 10; ++n) CHECK(same(n) == f(n));
    CHECK(validate_adequate(max_refine(f, star_refine(f)), 50).ok);
}

TEST_CASE("basepoint change recursion") {
    MetricModel m(ModelKind::NaturalLine);
    auto f = seq_of("n^3");
    // offset 5: T(n) = n^3 + 5
    auto g = basepoint_change_seq(m, f, Point::integer1(0), Point::integer1(5));
    CHECK(g(1) == 6);                       // T(1)
    CHECK(g(2) == std::max<i64>(69, 6 + 4));  // max(T(4), g(1)+4)
    CHECK(validate_adequate(g, 50).ok);

    // zero offset: g dominated by f on squares
    auto g0 = basepoint_change_seq(m, f, Point::integer1(0), Point::integer1(0));
    for (i64 n = 1; n <= 10; ++n) {
        const bool dominated = g0(n) >= f(n * n);
        CHECK(dominated);
    }
    CHECK(validate_adequate(g0, 50).ok);
}

TEST_CASE("schedules stop at the radius bound") {
    auto f = seq_of("n^3");
    auto sched = f.schedule_up_to(1000);
    REQUIRE(sched.steps.size() == 10);  // 10^3 = 1000 included
    CHECK(sched.steps.back() == std::pair<i64, i64>{1000, 10});
    CHECK(sched.thresh_at_sq(4 * 1000 * 1000) == 10);
    CHECK(sched.thresh_at_sq(4 * 999 * 999) == 9);
    CHECK(sched.thresh_at_sq(0) == 0);
    CHECK(sched.max_threshold() == 10);
}
