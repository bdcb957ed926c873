#include "coarseprox/engine.hpp"
#include "coarseprox/setdsl.hpp"
#include "doctest.h"

using namespace coarseprox;

namespace {
const std::string kCatalogDir = COARSEPROX_CATALOG_DIR;

EngineParams quick_params(i64 horizon = 2000) {
    EngineParams p;
    p.horizon = horizon;
    p.validate_and_fill();
    return p;
}
}  // namespace

TEST_CASE("engine parameter validation") {
    EngineParams p;
    p.validate_and_fill();
    CHECK(p.grid.size() <= 16);
    CHECK(p.grid.back() == p.horizon / 2);
    CHECK(p.grid.front() >= 1);

    EngineParams bad;
    bad.tau = 10;
    bad.eps_cap = 20;
    CHECK_THROWS(bad.validate_and_fill());

    EngineParams badgrid;
    badgrid.grid = {10, 20, 50000};
    CHECK_THROWS(badgrid.validate_and_fill());
}

TEST_CASE("remark-style triple on the plane") {
    auto cat = load_catalog(kCatalogDir + "/paper_r2.cprox");
    auto params = quick_params();
    const auto& A = cat.require_set("xaxis");
    const auto& B = cat.require_set("quadrant");
    const auto& C = cat.require_set("yaxis");

    auto ab = decide_close(cat.model, A, B, params);
    CHECK(ab.close());
    CHECK(ab.epsilon == 1);

    auto bc = decide_close(cat.model, B, C, params);
    CHECK(bc.close());
    CHECK(bc.epsilon == 1);

    auto ac = decide_close(cat.model, A, C, params);
    CHECK(ac.divergent());
}

TEST_CASE("adjacent parity classes are close at every scale") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    auto v = decide_close(cat.model, cat.require_set("evens"), cat.require_set("odds"), params);
    CHECK(v.close());
    CHECK(v.epsilon == 2);
    // every grid radius carries a witness pair fully outside it
    CHECK(v.witnesses.size() == params.grid.size());
    for (const auto& w : v.witnesses) {
        CHECK(sq_ge_units(sq_norm(w.a), w.radius));
        CHECK(sq_ge_units(sq_norm(w.b), w.radius));
        CHECK(w.d.lt_units(2));
    }
}

TEST_CASE("squares drift apart from their shift") {
    MetricModel m(ModelKind::NaturalLine);
    auto a = parse_set_expr("seq(n^2)", m);
    auto b = parse_set_expr("seq(n^2+n)", m);
    auto v = decide_close(m, a, b, quick_params(10000));
    CHECK(v.divergent());
    CHECK(v.profile.nondecreasing());
    CHECK(v.profile.all_certified());
}

TEST_CASE("bounded inputs are divergent immediately") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    auto v = decide_close(cat.model, cat.require_set("fin"), cat.require_set("naturals"), params);
    CHECK(v.divergent());
    CHECK(v.profile.entries.empty());
    CHECK(!v.note.empty());
}

TEST_CASE("starved horizon is inconclusive") {
    MetricModel m(ModelKind::EuclideanReal2);
    auto a = parse_set_expr("ray(dir=(1,0))", m);
    auto c = parse_set_expr("ray(dir=(0,1))", m);
    EngineParams p;
    p.horizon = 10;
    p.validate_and_fill();
    auto v = decide_close(m, a, c, p);
    CHECK(v.outcome == Outcome::Inconclusive);
}

TEST_CASE("symmetry of outcomes over catalog pairs") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    for (size_t i = 0; i < cat.sets.size(); ++i) {
        for (size_t j = i + 1; j < cat.sets.size(); ++j) {
            auto ij = decide_close(cat.model, cat.sets[i].second, cat.sets[j].second, params);
            auto ji = decide_close(cat.model, cat.sets[j].second, cat.sets[i].second, params);
            CAPTURE(cat.sets[i].first);
            CAPTURE(cat.sets[j].first);
            CHECK(ij.outcome == ji.outcome);
        }
    }
}

TEST_CASE("bounded deletion does not change outcomes") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    const i64 d1 = params.grid.front(), d2 = params.grid.front() / 2;
    for (size_t i = 0; i < cat.sets.size(); ++i) {
        for (size_t j = i; j < cat.sets.size(); ++j) {
            auto base = decide_close(cat.model, cat.sets[i].second, cat.sets[j].second, params);
            if (!base.conclusive()) continue;
            auto ta = make_minus_ball(cat.model, cat.sets[i].second, d1, cat.model.basepoint);
            auto tb = make_minus_ball(cat.model, cat.sets[j].second, d2, cat.model.basepoint);
            auto trimmed = decide_close(cat.model, ta, tb, params);
            CAPTURE(cat.sets[i].first);
            CAPTURE(cat.sets[j].first);
            CHECK(trimmed.outcome == base.outcome);
        }
    }
}

TEST_CASE("union axiom at verdict level") {
    auto cat = load_catalog(kCatalogDir + "/paper_z.cprox");
    auto params = quick_params();
    const auto& S = cat.sets;
    for (size_t i = 0; i < S.size(); ++i) {
        for (size_t j = i + 1; j < S.size(); ++j) {
            auto u = make_union(cat.model, {S[i].second, S[j].second});
            for (size_t k = 0; k < S.size(); ++k) {
                auto vu = decide_close(cat.model, u, S[k].second, params);
                auto vi = decide_close(cat.model, S[i].second, S[k].second, params);
                auto vj = decide_close(cat.model, S[j].second, S[k].second, params);
                if (!vu.conclusive() || !vi.conclusive() || !vj.conclusive()) continue;
                CAPTURE(S[i].first); CAPTURE(S[j].first); CAPTURE(S[k].first);
                CHECK(vu.close() == (vi.close() || vj.close()));
            }
        }
    }
}

TEST_CASE("phi agrees with the annotated ground truth") {
    auto params = quick_params(10000);
    for (const std::string name : {"paper_r2.cprox", "paper_z.cprox", "paper_n.cprox"}) {
        auto cat = load_catalog(kCatalogDir + "/" + name);
        for (const auto& t : cat.truths) {
            if (t.kind != GroundTruth::Kind::Phi && t.kind != GroundTruth::Kind::NotPhi) continue;
            auto v = phi_related(cat.model, cat.require_set(t.a), cat.require_set(t.b), params);
            CAPTURE(name); CAPTURE(t.a); CAPTURE(t.b);
            if (t.kind == GroundTruth::Kind::Phi) {
                CHECK(v.close());
            } else {
                CHECK(v.divergent());
            }
        }
    }
}

TEST_CASE("phi special cases for bounded and empty sets") {
    MetricModel m(ModelKind::NaturalLine);
    auto params = quick_params();
    auto fin = parse_set_expr("points(1,2,3)", m);
    auto fin2 = parse_set_expr("points(90)", m);
    auto empty = parse_set_expr("points()", m);
    auto line = parse_set_expr("lattice", m);

    CHECK(phi_related(m, fin, fin2, params).close());
    CHECK(phi_related(m, empty, fin, params).close());
    CHECK(phi_related(m, fin, line, params).divergent());
    CHECK(phi_related(m, empty, line, params).divergent());
}

TEST_CASE("phi is an equivalence at verdict level on the catalog") {
    auto cat = load_catalog(kCatalogDir + "/paper_z.cprox");
    auto params = quick_params();
    const auto& S = cat.sets;
    std::vector<std::vector<Outcome>> rel(S.size(), std::vector<Outcome>(S.size()));
    for (size_t i = 0; i < S.size(); ++i) {
        for (size_t j = 0; j < S.size(); ++j) {
            rel[i][j] = phi_related(cat.model, S[i].second, S[j].second, params).outcome;
        }
        CHECK(rel[i][i] == Outcome::Close);  // reflexive
    }
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < S.size(); ++j) CHECK(rel[i][j] == rel[j][i]);  // symmetric
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = 0; j < S.size(); ++j)
            for (size_t k = 0; k < S.size(); ++k)
                if (rel[i][j] == Outcome::Close && rel[j][k] == Outcome::Close)
                    CHECK(rel[i][k] == Outcome::Close);  // transitive over conclusive closes
}

TEST_CASE("boundedness verdicts") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    auto squares = is_unbounded(cat.model, cat.require_set("squares"), params);
    CHECK(squares.outcome == Boundedness::Unbounded);
    CHECK(squares.escape_witnesses.size() == params.grid.size());

    auto fin = is_unbounded(cat.model, cat.require_set("fin"), params);
    CHECK(fin.outcome == Boundedness::Bounded);

    auto tail = is_unbounded(cat.model,
                             parse_set_expr("minus_ball(lattice,100)", cat.model), params);
    CHECK(tail.outcome == Boundedness::Unbounded);
}

TEST_CASE("characterizations agree on conclusive pairs") {
    auto cat = load_catalog(kCatalogDir + "/paper_n.cprox");
    auto params = quick_params();
    int conclusive = 0;
    for (size_t i = 0; i < cat.sets.size(); ++i) {
        for (size_t j = i; j < cat.sets.size(); ++j) {
            auto rep = check_characterizations(cat.model, cat.sets[i].second, cat.sets[j].second,
                                               params);
            CAPTURE(cat.sets[i].first); CAPTURE(cat.sets[j].first);
            if (rep.conclusive) {
                ++conclusive;
                CHECK(rep.agree);
            }
        }
    }
    CHECK(conclusive > 10);
}

TEST_CASE("greedy subsets witness closeness on reflexive pairs") {
    MetricModel m(ModelKind::NaturalLine);
    auto squares = parse_set_expr("seq(n^2)", m);
    auto rep = check_characterizations(m, squares, squares, quick_params());
    CHECK(rep.subset_form.close());
    CHECK(!rep.greedy_a1.enumerate(2000).empty());
}
