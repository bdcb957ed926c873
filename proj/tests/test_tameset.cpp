#include <set>

#include "coarseprox/tameset.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
MetricModel nat() { return MetricModel(ModelKind::NaturalLine); }
MetricModel e2() { return MetricModel(ModelKind::EuclideanReal2); }

Poly var_n() { return Poly::variable(0); }
}  // namespace

TEST_CASE("seq enumeration matches the definition") {
    auto squares = make_seq(nat(), var_n() * var_n());
    auto view = squares.enumerate(100);
    std::vector<i64> vals;
    for (const auto& p : view) vals.push_back(p.h[0] / 2);
    CHECK(vals == std::vector<i64>{0, 1, 4, 9, 16, 25, 36, 49, 64, 81, 100});
    CHECK(squares.contains(Point::integer1(49)));
    CHECK(!squares.contains(Point::integer1(50)));
    CHECK(squares.bound_tag() == BoundTag::Unbounded);
}

TEST_CASE("union of even and odd sequences covers the natural line") {
    Poly n = var_n();
    auto evens = make_seq(nat(), Poly(2) * n);
    auto odds = make_seq(nat(), Poly(2) * n + Poly(1));
    auto all = make_union(nat(), {evens, odds});
    auto line = make_lattice_all(nat());
    auto va = all.enumerate(200);
    auto vl = line.enumerate(200);
    REQUIRE(va.size() == vl.size());
    for (size_t i = 0; i < va.size(); ++i) CHECK(va[i] == vl[i]);
}

TEST_CASE("enumeration is monotone and exact under radius filtering") {
    std::vector<TameSet> sets = {
        make_ray(e2(), Point::integer2(1, 0), Point::integer2(0, 0)),
        make_graph_abs(e2()),
        make_seq(nat(), var_n() * var_n() + Poly(3) * var_n()),
        make_shift(e2(), make_graph_abs(e2()), Point::integer2(1, 0)),
    };
    for (const auto& s : sets) {
        auto big = s.enumerate(1000);
        for (i64 r : {10, 100, 1000}) {
            auto view = s.enumerate(r);
            std::set<std::pair<i64, i64>> got;
            for (const auto& p : view) {
                CHECK(sq_le_units(sq_norm(p), r));
                got.insert({p.h[0], s.dim() > 1 ? p.h[1] : 0});
            }
            size_t expected = 0;
            for (const auto& p : big)
                if (sq_le_units(sq_norm(p), r)) ++expected;
            CHECK(got.size() == view.size());
            CHECK(view.size() == expected);
        }
    }
}

TEST_CASE("membership agrees with enumeration") {
    auto parab = make_curve(e2(), {var_n(), var_n() * var_n()});
    auto view = parab.enumerate(400);
    CHECK(view.size() > 10);
    for (const auto& p : view) CHECK(parab.contains(p));
    CHECK(parab.contains(Point::integer2(7, 49)));
    CHECK(!parab.contains(Point::integer2(7, 48)));
}

TEST_CASE("set algebra examples") {
    auto xaxis = make_ray(e2(), Point::integer2(1, 0), Point::integer2(0, 0));
    auto yaxis = make_ray(e2(), Point::integer2(0, 1), Point::integer2(0, 0));
    auto uni = make_union(e2(), {xaxis, yaxis});
    size_t count = 0;
    for (const auto& p : uni.enumerate(5)) {
        CHECK((p.h[0] == 0 || p.h[1] == 0));
        ++count;
    }
    CHECK(count == 11);  // (0..5, 0) and (0, 0..5) with the origin once

    MetricModel m = nat();
    auto tail = make_minus_ball(m, make_lattice_all(m), 10, m.basepoint);
    std::vector<i64> vals;
    for (const auto& p : tail.enumerate(20)) vals.push_back(p.h[0] / 2);
    CHECK(vals == std::vector<i64>{11, 12, 13, 14, 15, 16, 17, 18, 19, 20});

    auto vshift = make_shift(e2(), make_graph_abs(e2()), Point::integer2(1, 0));
    CHECK(vshift.contains(Point::integer2(1, 0)));
    CHECK(!vshift.contains(Point::integer2(0, 0)));
}

TEST_CASE("declared unboundedness escapes every tested radius") {
    auto squares = make_seq(nat(), var_n() * var_n());
    for (i64 r : {10, 100, 1000}) {
        bool beyond = false;
        for (const auto& p : squares.enumerate(4 * r))
            if (sq_gt_units(sq_norm(p), r)) beyond = true;
        CHECK(beyond);
    }
}

TEST_CASE("bounded combinators carry extents") {
    auto fin = make_points(nat(), {Point::integer1(1), Point::integer1(2), Point::integer1(3)});
    CHECK(fin.bound_tag() == BoundTag::Bounded);
    CHECK(*fin.extent_units() == 3);
    auto shifted = make_shift(nat(), fin, Point::integer1(4));
    CHECK(shifted.bound_tag() == BoundTag::Bounded);
    CHECK(shifted.contains(Point::integer1(7)));

    // negative-leading sequence on the natural line is finite
    auto downhill = make_seq(nat(), Poly(10) - var_n());
    CHECK(downhill.bound_tag() == BoundTag::Bounded);
    auto v = downhill.enumerate(100);
    CHECK(v.size() == 11);  // 10, 9, ..., 0
}

TEST_CASE("complement over a line universe") {
    MetricModel m = nat();
    auto evens = make_seq(m, Poly(2) * var_n());
    auto comp = make_complement(m, make_lattice_all(m), evens);
    for (const auto& p : comp.enumerate(50)) CHECK((p.h[0] / 2) % 2 == 1);
    CHECK(comp.contains(Point::integer1(7)));
    CHECK(!comp.contains(Point::integer1(8)));
    // double complement simplifies structurally
    auto cc = make_complement(m, make_lattice_all(m), comp);
    CHECK(cc.node() == evens.node());
}

TEST_CASE("nearest queries are exact with norm constraints") {
    auto xaxis = make_ray(e2(), Point::integer2(1, 0), Point::integer2(0, 0));
    const Point origin = Point::integer2(0, 0);
    auto hit = xaxis.nearest_upto(Point::integer2(5, 5), 100, origin, 0);
    REQUIRE(hit.has_value());
    CHECK(hit->point == Point::integer2(5, 0));
    CHECK(hit->sq == 4 * 25);

    // constrained to norm >= 8, the nearest axis point to (5,5) is (8,0)
    auto far = xaxis.nearest_upto(Point::integer2(5, 5), 100, origin, 8);
    REQUIRE(far.has_value());
    CHECK(far->point == Point::integer2(8, 0));

    // dense membership path
    auto quad = make_quadrant1(e2());
    auto qh = nearest_member_by_rings(quad, Point::integer2(-3, 10), 50, origin, 0);
    REQUIRE(qh.has_value());
    CHECK(qh->point == Point::integer2(0, 10));
    CHECK(qh->sq == 4 * 9);
}

TEST_CASE("core-distance filter acts as a tiered tube") {
    MetricModel m = e2();
    auto yaxis = make_ray(m, Point::integer2(0, 1), Point::integer2(0, 0));
    DistSchedule sched;
    sched.steps = {{1, 1}, {8, 2}, {27, 3}, {64, 4}};  // f(n) = n^3
    auto tube = make_core_dist_filter(m, universe_of_model(m), yaxis, sched, m.basepoint, "U");
    // (1,30): |x| >= 27 so threshold 3 applies and d to the axis is 1
    CHECK(tube.contains(Point::integer2(1, 30)));
    // (5,6): |x| < 8 keeps threshold 1; d = 5
    CHECK(!tube.contains(Point::integer2(5, 6)));
    CHECK(tube.contains(Point::integer2(0, 4)));  // core point
    auto info = as_core_dist_filter(tube);
    REQUIRE(info.has_value());
    CHECK(info->schedule->max_threshold() == 4);

    auto comp = make_complement(m, universe_of_model(m), tube);
    CHECK(comp.contains(Point::integer2(5, 6)));
    CHECK(!comp.contains(Point::integer2(1, 30)));
    auto ci = as_complement(comp);
    REQUIRE(ci.has_value());
    CHECK(as_core_dist_filter(ci->inner).has_value());
}
