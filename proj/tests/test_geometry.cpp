#include <random>

#include "coarseprox/geometry.hpp"
#include "coarseprox/model.hpp"
#include "doctest.h"

using namespace coarseprox;

TEST_CASE("distance basics") {
    MetricModel e2(ModelKind::EuclideanReal2);
    CHECK(distance(e2, Point::integer2(0, 0), Point::integer2(3, 4)).value() == doctest::Approx(5.0));
    CHECK(distance(e2, Point::integer2(7, -2), Point::integer2(7, -2)).sq == 0);

    MetricModel nat(ModelKind::NaturalLine);
    CHECK(distance(nat, Point::integer1(4), Point::integer1(9)).value() == doctest::Approx(5.0));

    CHECK_THROWS(distance(nat, Point::integer2(0, 0), Point::integer1(1)));
}

TEST_CASE("half-integer points are exact") {
    Point a = Point::make2(-1, 1);  // (-1/2, 1/2)
    Point b = Point::integer2(0, 0);
    CHECK(sq_dist(a, b) == 2);  // 4*d^2 = 2, d = sqrt(1/2)
    CHECK(ExactDist::from_sq(2).lt_units(1));
    CHECK(!ExactDist::from_sq(2).lt_units(0));
}

TEST_CASE("threshold comparisons are exact") {
    // d((0,0),(1,1)) = sqrt(2): strictly between 1 and 2
    const i64 sq = sq_dist(Point::integer2(0, 0), Point::integer2(1, 1));
    CHECK(sq_gt_units(sq, 1));
    CHECK(sq_lt_units(sq, 2));
    CHECK(ExactDist::from_sq(sq).strict_int_bound() == 2);
    CHECK(ExactDist::zero().strict_int_bound() == 1);
    CHECK(ExactDist::from_sq(4).strict_int_bound() == 2);  // d == 1
}

TEST_CASE("triangle inequality sampled exactly") {
    std::mt19937_64 rng(20240511);
    std::uniform_int_distribution<i64> coord(-2000, 2000);
    for (int dim = 1; dim <= 3; ++dim) {
        for (int it = 0; it < 4000; ++it) {
            Point p{dim, {coord(rng), dim > 1 ? coord(rng) : 0, dim > 2 ? coord(rng) : 0}};
            Point q{dim, {coord(rng), dim > 1 ? coord(rng) : 0, dim > 2 ? coord(rng) : 0}};
            Point r{dim, {coord(rng), dim > 1 ? coord(rng) : 0, dim > 2 ? coord(rng) : 0}};
            CHECK(sqrt_le_sum(sq_dist(p, r), sq_dist(p, q), sq_dist(q, r)));
            CHECK(sq_dist(p, q) == sq_dist(q, p));
            CHECK(sq_dist(p, q) >= 0);
        }
    }
}

TEST_CASE("infinite distances order correctly") {
    ExactDist inf = ExactDist::infinite();
    ExactDist five = ExactDist::from_sq(100);
    CHECK(five < inf);
    CHECK(!(inf < five));
    CHECK(inf.gt_units(1000000));
    CHECK(inf.str() == "inf");
}
