#include "coarseprox/axioms.hpp"
#include "coarseprox/neighborhoods.hpp"
#include "coarseprox/setdsl.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
const std::string kCatalogDir = COARSEPROX_CATALOG_DIR;

AdequateSeq seq_of(const std::string& text) {
    return AdequateSeq::from_poly(parse_poly(text, {"n", "", ""}));
}
EngineParams quick_params(i64 horizon = 2000) {
    EngineParams p;
    p.horizon = horizon;
    p.validate_and_fill();
    return p;
}
}  // namespace

TEST_CASE("tiered membership follows the radius schedule") {
    MetricModel m(ModelKind::EuclideanReal2);
    auto yaxis = parse_set_expr("ray(dir=(0,1))", m);
    auto f = seq_of("n^3");
    const Point x0 = m.basepoint;

    // core points always belong
    CHECK(u_membership(m, yaxis, f, x0, Point::integer2(0, 5), 1000));
    // |x| ~ 30 >= f(3) = 27 allows distance < 3; the x-offset is 1
    CHECK(u_membership(m, yaxis, f, x0, Point::integer2(1, 30), 1000));
    // |x| < f(2) = 8 allows only distance < 1
    CHECK(!u_membership(m, yaxis, f, x0, Point::integer2(5, 6), 1000));
    CHECK(!u_membership(m, yaxis, f, x0, Point::integer2(3, 30), 1000));

    auto U = u_set(m, universe_of_model(m), yaxis, f, x0, 1000);
    CHECK(U.contains(Point::integer2(1, 30)));
    CHECK(!U.contains(Point::integer2(5, 6)));
}

TEST_CASE("tiered neighborhoods contain their core and respect order") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    MetricModel m = cat.model;
    auto uni = cat.universe;
    auto f = seq_of("n^3");
    auto g = seq_of("n^6");
    const Point x0 = m.basepoint;

    for (const std::string name : {"xaxis", "vshape", "diag"}) {
        const auto& A = cat.require_set(name);
        auto Uf = u_set(m, uni, A, f, x0, 1000);
        auto Ug = u_set(m, uni, A, g, x0, 1000);
        for (const auto& p : A.enumerate(1000)) CHECK(Uf.contains(p));
        // f <= g pointwise forces U(A,g) inside U(A,f)
        for (const auto& p : Ug.enumerate(300)) {
            CAPTURE(name);
            CHECK(Uf.contains(p));
        }
    }

    // subset monotonicity: B inside A forces U(B,f) inside U(A,f)
    const auto& A = cat.require_set("vshape");
    const auto& B = cat.require_set("diag");
    auto UA = u_set(m, uni, A, f, x0, 1000);
    auto UB = u_set(m, uni, B, f, x0, 1000);
    for (const auto& p : UB.enumerate(300)) CHECK(UA.contains(p));
}

TEST_CASE("bounded cores give bounded neighborhoods") {
    MetricModel m(ModelKind::NaturalLine);
    auto fin = parse_set_expr("points(1,2,3)", m);
    auto U = u_set(m, universe_of_model(m), fin, seq_of("n^3"), m.basepoint, 1000);
    CHECK(U.bound_tag() == BoundTag::Bounded);
    auto view = U.enumerate(1000);
    CHECK(view.size() >= 3);
    CHECK(view.size() < 20);
}

TEST_CASE("union distributes over tiered neighborhoods") {
    MetricModel m(ModelKind::EuclideanReal2);
    auto uni = universe_of_model(m);
    auto f = seq_of("n^3");
    auto a = parse_set_expr("ray(dir=(1,0))", m);
    auto b = parse_set_expr("ray(dir=(0,1))", m);
    auto uab = make_union(m, {a, b});
    auto Ua = u_set(m, uni, a, f, m.basepoint, 1000);
    auto Ub = u_set(m, uni, b, f, m.basepoint, 1000);
    auto Uab = u_set(m, uni, uab, f, m.basepoint, 1000);
    auto lhs = make_union(m, {Ua, Ub});
    auto vl = lhs.enumerate(1000);
    auto vr = Uab.enumerate(1000);
    REQUIRE(vl.size() == vr.size());
    for (size_t i = 0; i < vl.size(); ++i) CHECK(vl[i] == vr[i]);
}

TEST_CASE("a set sits coarsely inside its tiered neighborhood") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params(10000);
    for (const std::string fname : {"n^3", "n^6"}) {
        auto f = seq_of(fname);
        for (const auto& [name, A] : cat.sets) {
            if (A.bound_tag() != BoundTag::Unbounded) continue;
            if (!A.enumerable_at(params.horizon + 2)) continue;  // the plane itself is trivial
            auto U = u_set(cat.model, cat.universe, A, f, cat.model.basepoint, params.horizon);
            auto res = coarse_nbhd_metric(cat.model, cat.universe, A, U, params);
            CAPTURE(name);
            CAPTURE(fname);
            CHECK(res.holds);
        }
    }
}

TEST_CASE("annulus distance bound holds exactly") {
    // points outside the neighborhood and outside the f(n)-ball keep
    // distance at least n - 1 from the trimmed core
    MetricModel m(ModelKind::EuclideanReal2);
    auto uni = universe_of_model(m);
    auto f = seq_of("n^3");
    auto A = parse_set_expr("ray(dir=(0,1))", m);
    auto U = u_set(m, uni, A, f, m.basepoint, 2000);
    auto comp = make_complement(m, uni, U);
    for (i64 n = 3; n <= 8; ++n) {
        auto d = set_distance_truncated(m, comp, A, f(n), 2000, 64);
        CAPTURE(n);
        CHECK(d.value.ge_units(n - 1));
        if (!d.saturated) CHECK(d.exact);
    }
}

TEST_CASE("annulus locality of the radius schedule") {
    auto f = seq_of("n^3");
    // sampled x in shell n and y within distance n of x stay in shells n-1..n+1
    for (i64 n = 3; n <= 10; ++n) {
        const i64 lo = f(n - 1), hi = f(n);
        for (i64 x = lo; x < hi; x += std::max<i64>(1, (hi - lo) / 7)) {
            for (i64 dy = -n + 1; dy <= n - 1; dy += std::max<i64>(1, n / 3)) {
                const i64 y = x + dy;
                if (y < 0) continue;
                const bool in_adjacent = y >= f(std::max<i64>(n - 2, 1)) && y < f(n + 1);
                CHECK(in_adjacent);
            }
        }
    }
}

TEST_CASE("inner ball members have nearby core points") {
    MetricModel m(ModelKind::EuclideanReal2);
    auto uni = universe_of_model(m);
    auto f = seq_of("n^3");
    auto A = parse_set_expr("ray(dir=(0,1))", m);
    auto U = u_set(m, uni, A, f, m.basepoint, 2000);
    for (i64 n = 2; n <= 10; ++n) {
        for (const auto& p : U.enumerate(std::min<i64>(f(n), 1500))) {
            auto hit = A.nearest_upto(p, n, m.basepoint, 0);
            REQUIRE(hit.has_value());
            CHECK(sq_lt_units(hit->sq, n));
        }
    }
}

TEST_CASE("star refinement pushes the double neighborhood inside") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params(10000);
    auto f = seq_of("n^3");
    auto g = star_refine(f);
    for (const std::string name : {"xaxis", "vshape"}) {
        const auto& A = cat.require_set(name);
        auto Ug = u_set(cat.model, cat.universe, A, g, cat.model.basepoint, params.horizon);
        auto Ugg = u_set(cat.model, cat.universe, Ug, g, cat.model.basepoint, params.horizon);
        auto Uf = u_set(cat.model, cat.universe, A, f, cat.model.basepoint, params.horizon);
        auto res = coarse_nbhd_metric(cat.model, cat.universe, Ugg, Uf, params);
        CAPTURE(name);
        CHECK(res.holds);
    }
}

TEST_CASE("annular separator splits divergent ray pairs") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params(10000);
    auto rep = separator_annular(cat.model, cat.universe, cat.require_set("xaxis"),
                                 cat.require_set("yaxis"), params);
    REQUIRE(!rep.inconclusive);
    CHECK(rep.radii.size() >= 8);
    for (size_t i = 1; i < rep.radii.size(); ++i) {
        CHECK(rep.radii[i] - rep.radii[i - 1] > static_cast<i64>(i + 1));
    }
    CHECK(rep.verdict_first_vs_sep.divergent());
    CHECK(rep.verdict_complement_vs_second.divergent());
    // the separator contains the second set
    for (const auto& p : cat.require_set("yaxis").enumerate(500))
        CHECK(rep.separator.contains(p));
}

TEST_CASE("annular separator degenerate branches") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params();
    // bounded second set: separator equals it
    auto rep = separator_annular(cat.model, cat.universe, cat.require_set("xaxis"),
                                 cat.require_set("fin"), params);
    CHECK(rep.witnessed());
    CHECK(rep.separator.node() == cat.require_set("fin").node());
    // bounded first set: separator is the complement
    auto rep2 = separator_annular(cat.model, cat.universe, cat.require_set("fin"),
                                  cat.require_set("xaxis"), params);
    CHECK(rep2.witnessed());
}

TEST_CASE("separator of an unbounded second set is unbounded") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params(10000);
    auto rep = separator_annular(cat.model, cat.universe, cat.require_set("xaxis"),
                                 cat.require_set("yaxis"), params);
    CHECK(rep.separator.bound_tag() == BoundTag::Unbounded);
}

TEST_CASE("half-plane separator splits divergent pairs") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params(10000);
    auto rep = separator_voronoi(cat.model, cat.universe, cat.require_set("xaxis"),
                                 cat.require_set("yaxis"), params);
    CHECK(rep.verdict_first_vs_sep.divergent());
    CHECK(rep.verdict_complement_vs_second.divergent());
    // ties go to the separator
    CHECK(rep.separator.contains(Point::integer2(3, 3)));
    // clearly nearer the second set
    CHECK(rep.separator.contains(Point::integer2(1, 5)));
    CHECK(!rep.separator.contains(Point::integer2(5, 1)));
}

TEST_CASE("half-plane separator with identical sets") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params();
    auto rep = separator_voronoi(cat.model, cat.universe, cat.require_set("xaxis"),
                                 cat.require_set("xaxis"), params);
    CHECK(rep.verdict_complement_vs_second.divergent());
}

TEST_CASE("staircase example: inside one neighborhood, clear of the other") {
    auto cat = load_catalog(kCatalogDir + "/paper_ex88.cprox");
    MetricModel m = cat.model;
    auto f = seq_of("n^3");
    const auto& A = cat.require_set("aup");
    const auto& B = cat.require_set("bup");
    const auto& C = cat.require_set("cpts");
    auto UA = u_set(m, cat.universe, A, f, m.basepoint, 10000);
    auto UB = u_set(m, cat.universe, B, f, m.basepoint, 10000);
    size_t checked = 0;
    for (const auto& p : C.enumerate(10000)) {
        CHECK(UA.contains(p));
        CHECK(!UB.contains(p));
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("basepoint transfer keeps neighborhoods nested") {
    MetricModel m(ModelKind::NaturalLine);
    auto uni = universe_of_model(m);
    auto params = quick_params(10000);
    auto f = seq_of("n^3");
    const Point x0 = Point::integer1(0), x1 = Point::integer1(5);
    auto g = basepoint_change_seq(m, f, x0, x1);
    CHECK(validate_adequate(g, 40).ok);
    for (const std::string expr : {"seq(n^2)", "seq(2n)"}) {
        auto C = parse_set_expr(expr, m);
        auto Ug = u_set(m, uni, C, g, x0, params.horizon);
        auto Uf = u_set(m, uni, C, f, x1, params.horizon);
        // every enumerated member of the transferred neighborhood lies in
        // the target neighborhood
        for (const auto& p : Ug.enumerate(params.horizon)) {
            CAPTURE(expr);
            CHECK(Uf.contains(p));
        }
        // and the coarse containment verdict agrees
        auto comp = make_complement(m, uni, Uf);
        auto v = decide_close(m, Ug, comp, params);
        CHECK(v.divergent());
    }
}
