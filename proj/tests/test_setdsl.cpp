#include <filesystem>

#include "coarseprox/setdsl.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
const std::string kCatalogDir = COARSEPROX_CATALOG_DIR;
MetricModel nat() { return MetricModel(ModelKind::NaturalLine); }
MetricModel e2() { return MetricModel(ModelKind::EuclideanReal2); }
}  // namespace

TEST_CASE("set expressions parse to the right sets") {
    auto squares = parse_set_expr("seq(n^2)", nat());
    CHECK(squares.contains(Point::integer1(49)));
    CHECK(!squares.contains(Point::integer1(48)));

    auto yray = parse_set_expr("ray(dir=(0,1))", e2());
    CHECK(yray.contains(Point::integer2(0, 7)));
    CHECK(!yray.contains(Point::integer2(1, 7)));

    auto all = parse_set_expr("union(seq(2n),seq(2n+1))", nat());
    for (i64 v = 0; v <= 50; ++v) CHECK(all.contains(Point::integer1(v)));

    auto shifted = parse_set_expr("shift(graph_abs,(1,0))", e2());
    CHECK(shifted.contains(Point::integer2(1, 0)));

    auto halfpt = parse_set_expr("points((1/2,3/2))", e2());
    CHECK(halfpt.contains(Point::make2(1, 3)));
}

TEST_CASE("every grammar production accepts and rejects") {
    struct Case {
        std::string good, bad;
        MetricModel model;
    };
    std::vector<Case> cases = {
        {"seq(n^3+5n)", "seq(n^^2)", nat()},
        {"curve(n,n^2)", "curve(n)", e2()},
        {"ray(dir=(1,0),base=(2,2))", "ray(base=(1,1))", e2()},
        {"graph_abs", "graph_abs(1)", e2()},
        {"quadrant1", "quadrant(1)", e2()},
        {"lattice", "lattice2", e2()},
        {"points((1,2),(3,4))", "points((1,2)", e2()},
        {"points(1,2,3)", "points(1/3)", nat()},
        {"union(seq(n),seq(2n))", "union()", nat()},
        {"shift(seq(n),5)", "shift(seq(n))", nat()},
        {"minus_ball(lattice,10)", "minus_ball(lattice,-1)", nat()},
        {"add_points(seq(n^2),7)", "add_points(7,seq(n))", nat()},
        {"remove_points(lattice,0,1)", "remove_points(lattice)", nat()},
        {"complement(seq(2n))", "complement()", nat()},
    };
    for (const auto& c : cases) {
        CAPTURE(c.good);
        CHECK_NOTHROW(parse_set_expr(c.good, c.model));
        CAPTURE(c.bad);
        CHECK_THROWS_AS(parse_set_expr(c.bad, c.model), ParseError);
    }
    // dimension mismatch and unknown primitive
    CHECK_THROWS_AS(parse_set_expr("graph_abs", nat()), ParseError);
    CHECK_THROWS_AS(parse_set_expr("circle(3)", e2()), ParseError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_catalog_text("model natural-line\nset a = seq(n^2)\nset b = se(n)\n");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("unknown primitive") != std::string::npos);
    }
}

TEST_CASE("catalog documents resolve names and truths") {
    const std::string doc =
        "model euclidean-2\n"
        "set a = ray(dir=(1,0))\n"
        "set b = quadrant1\n"
        "set c = ray(dir=(0,1))\n"
        "truth close a b 1\n"
        "truth close b c 1\n"
        "truth disjoint a c\n";
    auto cat = parse_catalog_text(doc);
    CHECK(cat.sets.size() == 3);
    CHECK(cat.truths.size() == 3);
    CHECK(cat.find_set("b") != nullptr);
    CHECK(cat.truths[0].eps == 1);

    CHECK_NOTHROW(parse_catalog_text("model natural-line\n"));
    CHECK_THROWS_AS(parse_catalog_text("model natural-line\ntruth close a b 1\n"), ParseError);
    CHECK_THROWS_AS(parse_catalog_text("set a = lattice\n"), ParseError);
}

TEST_CASE("maps parse with codomains") {
    auto embed = parse_map_expr("x -> (x,0) into euclidean-2", nat());
    CHECK(embed.codomain.dim() == 2);
    CHECK(embed.apply(Point::integer1(4)) == Point::integer2(4, 0));

    auto ident = parse_map_expr("x -> x", nat());
    CHECK(ident.apply(Point::integer1(9)) == Point::integer1(9));

    auto sq = parse_map_expr("x -> x^2", nat());
    CHECK(sq.apply(Point::integer1(7)) == Point::integer1(49));

    CHECK_THROWS_AS(parse_map_expr("x -> (x,0)", nat()), ParseError);  // arity vs codomain
    CHECK_THROWS_AS(parse_map_expr("y -> y", nat()), ParseError);
}

TEST_CASE("shipped catalogs load and round-trip through the printer") {
    for (const std::string name : {"paper_r2.cprox", "paper_z.cprox", "paper_n.cprox",
                                   "paper_squares.cprox", "paper_vx.cprox", "paper_ex88.cprox"}) {
        CAPTURE(name);
        auto cat = load_catalog(kCatalogDir + "/" + name);
        CHECK(!cat.sets.empty());
        const std::string printed = print_catalog(cat);
        auto reparsed = parse_catalog_text(printed);
        CHECK(print_catalog(reparsed) == printed);
        for (const auto& [n, s] : cat.sets) CHECK(s.dim() == cat.model.dim());
    }
}

TEST_CASE("catalog universe declarations") {
    auto cat = load_catalog(kCatalogDir + "/paper_squares.cprox");
    CHECK(cat.universe_declared);
    CHECK(cat.universe.contains(Point::integer1(49)));
    CHECK(!cat.universe.contains(Point::integer1(50)));
}
