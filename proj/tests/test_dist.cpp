#include <random>

#include "coarseprox/dist.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
MetricModel nat() { return MetricModel(ModelKind::NaturalLine); }
MetricModel e2() { return MetricModel(ModelKind::EuclideanReal2); }
Poly n() { return Poly::variable(0); }

// brute-force oracle for truncated set distance over full enumerations
ExactDist brute_truncated(const MetricModel& m, const TameSet& A, const TameSet& B, i64 r,
                          i64 horizon) {
    auto va = A.enumerate(horizon + 2);
    auto vb = B.enumerate(horizon + 2);
    ExactDist best = ExactDist::infinite();
    for (const auto& a : va) {
        if (!sq_ge_units(sq_dist(a, m.basepoint), r)) continue;
        for (const auto& b : vb) {
            if (!sq_ge_units(sq_dist(b, m.basepoint), r)) continue;
            ExactDist d = ExactDist::from_sq(sq_dist(a, b));
            if (d < best) best = d;
        }
    }
    return best;
}
}  // namespace

TEST_CASE("point to set distances with certificates") {
    auto xaxis = make_ray(e2(), Point::integer2(1, 0), Point::integer2(0, 0));
    auto r = dist_point_set(e2(), Point::integer2(5, 5), xaxis, 100);
    CHECK(r.value.value() == doctest::Approx(5.0));
    CHECK(r.exact);
    CHECK(*r.witness == Point::integer2(5, 0));

    auto squares = make_seq(nat(), n() * n());
    auto r2 = dist_point_set(nat(), Point::integer1(7), squares, 100);
    CHECK(r2.value.value() == doctest::Approx(2.0));
    CHECK(r2.exact);

    auto empty = make_points(nat(), {});
    auto r3 = dist_point_set(nat(), Point::integer1(3), empty, 100);
    CHECK(r3.value.is_inf());
    CHECK(r3.exact);
}

TEST_CASE("truncated set distance examples") {
    MetricModel m = nat();
    auto evens = make_seq(m, Poly(2) * n());
    auto odds = make_seq(m, Poly(2) * n() + Poly(1));
    auto d = set_distance_truncated(m, evens, odds, 50, 10000);
    CHECK(d.value.value() == doctest::Approx(1.0));
    CHECK(d.exact);
    REQUIRE(d.witness.has_value());

    MetricModel m2 = e2();
    auto xaxis = make_ray(m2, Point::integer2(1, 0), Point::integer2(0, 0));
    auto yaxis = make_ray(m2, Point::integer2(0, 1), Point::integer2(0, 0));
    auto d2 = set_distance_truncated(m2, xaxis, yaxis, 10, 1000);
    CHECK(d2.value.value() == doctest::Approx(std::sqrt(200.0)));
    CHECK(d2.exact);
    CHECK(d2.witness->first == Point::integer2(10, 0));
    CHECK(d2.witness->second == Point::integer2(0, 10));

    auto empty = make_points(m, {});
    auto squares = make_seq(m, n() * n());
    auto d3 = set_distance_truncated(m, squares, empty, 7, 1000);
    CHECK(d3.value.is_inf());
    CHECK(d3.exact);

    CHECK_THROWS(set_distance_truncated(m, evens, odds, -1, 100));
}

TEST_CASE("truncated distances match the brute-force oracle at double horizon") {
    MetricModel m = nat();
    auto squares = make_seq(m, n() * n());
    auto shifted = make_seq(m, n() * n() + n());
    MetricModel m2 = e2();
    auto vshape = make_graph_abs(m2);
    auto diag = make_ray(m2, Point::integer2(1, 1), Point::integer2(0, 0));

    struct Case {
        MetricModel m;
        TameSet a, b;
    };
    std::vector<Case> cases = {{m, squares, shifted}, {m2, vshape, diag}};
    for (const auto& c : cases) {
        for (i64 r : {0, 5, 20, 60}) {
            auto got = set_distance_truncated(c.m, c.a, c.b, r, 200);
            if (got.exact && !got.saturated) {
                auto want = brute_truncated(c.m, c.a, c.b, r, 400);
                CHECK(got.value == want);
            }
        }
    }
}

TEST_CASE("pair profile is nondecreasing and certified for divergent rays") {
    MetricModel m = e2();
    auto xaxis = make_ray(m, Point::integer2(1, 0), Point::integer2(0, 0));
    auto yaxis = make_ray(m, Point::integer2(0, 1), Point::integer2(0, 0));
    std::vector<i64> grid = {4, 8, 16, 32, 64, 128};
    auto pp = compute_pair_profile(m, xaxis, yaxis, grid, 1000, 0);
    CHECK(pp.profile.nondecreasing());
    CHECK(pp.profile.all_certified());
    // truncated distance at radius r is realized at (r,0)-(0,r)
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(pp.profile.entries[i].value.sq == 4 * 2 * grid[i] * grid[i]);
    }
}

TEST_CASE("saturation caps exact search but stays certified") {
    MetricModel m = e2();
    auto xaxis = make_ray(m, Point::integer2(1, 0), Point::integer2(0, 0));
    auto yaxis = make_ray(m, Point::integer2(0, 1), Point::integer2(0, 0));
    auto pp = compute_pair_profile(m, xaxis, yaxis, {400}, 1000, 64);
    CHECK(pp.profile.entries[0].saturated);
    CHECK(pp.profile.entries[0].exact);
    CHECK(pp.profile.entries[0].value.value() == doctest::Approx(64.0));
}

TEST_CASE("hausdorff profiles") {
    MetricModel m = nat();
    auto squares = make_seq(m, n() * n());
    std::vector<i64> radii = {10, 100, 1000};
    auto self = hausdorff_profile(m, squares, squares, radii, 2000, 0);
    for (const auto& e : self.entries) CHECK(e.value.sq == 0);

    MetricModel m2 = e2();
    auto vshape = make_graph_abs(m2);
    auto vshift = make_shift(m2, vshape, Point::integer2(1, 0));
    auto prof = hausdorff_profile(m2, vshape, vshift, radii, 2000, 0);
    for (const auto& e : prof.entries) {
        CHECK(e.exact);
        CHECK(e.value.le_units(1));
    }

    auto line = make_lattice_all(m);
    auto prof2 = hausdorff_profile(m, line, squares, radii, 2000, 0);
    CHECK(prof2.nondecreasing());
    // worst one-sided gap at radius r sits mid-way between consecutive
    // squares, about sqrt(r)
    CHECK(prof2.entries[2].value.value() == doctest::Approx(31.0));
    CHECK(prof2.entries[0].value.value() == doctest::Approx(2.0));
    CHECK(prof2.entries[2].exact);

    auto empty = make_points(m, {});
    CHECK_THROWS(hausdorff_profile(m, empty, squares, radii, 100, 0));
}

TEST_CASE("dense membership side: close pair witnessed cheaply") {
    MetricModel m = e2();
    auto xaxis = make_ray(m, Point::integer2(1, 0), Point::integer2(0, 0));
    auto quad = make_quadrant1(m);
    std::vector<i64> grid = {4, 16, 64, 256, 1024, 5000};
    auto pp = compute_pair_profile(m, xaxis, quad, grid, 10000, 256);
    for (size_t i = 0; i < grid.size(); ++i) {
        REQUIRE(pp.witnesses[i].has_value());
        CHECK(pp.profile.entries[i].value.sq == 0);  // the axis sits inside the quadrant
    }
}

TEST_CASE("find_member_beyond respects the horizon") {
    MetricModel m = nat();
    auto squares = make_seq(m, n() * n());
    auto w = find_member_beyond(m, squares, 100, 10000);
    REQUIRE(w.has_value());
    CHECK(sq_gt_units(sq_norm(*w), 100));
    auto fin = make_points(m, {Point::integer1(3)});
    CHECK(!find_member_beyond(m, fin, 100, 10000).has_value());

    MetricModel m2 = e2();
    auto quad = make_quadrant1(m2);
    auto w2 = find_member_beyond(m2, quad, 5000, 10000);
    REQUIRE(w2.has_value());
    CHECK(quad.contains(*w2));
}
