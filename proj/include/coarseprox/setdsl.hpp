#pragma once

// The .cprox catalog language: one declaration per line, '#' comments.
//
//   model euclidean-2            (euclidean-1/2/3, lattice-1/2/3,
//                                 natural-line, integer-line)
//   basepoint (0,0)
//   set NAME = EXPR
//   universe NAME | universe EXPR
//   map NAME = x -> (x,0) into euclidean-2
//   truth close A B 1 | disjoint A B | phi A B | not-phi A B
//         | bounded A | unbounded A
//
// EXPR: seq(POLY) | curve(POLY,POLY[,POLY]) | ray(dir=VEC[,base=VEC])
//       | graph_abs | quadrant1 | lattice | points(PT,...) | NAME
//       | union(EXPR,...) | shift(EXPR,VEC) | minus_ball(EXPR,INT)
//       | add_points(EXPR,PT,...) | remove_points(EXPR,PT,...)
//       | complement(EXPR)
// Coordinates admit halves (written a/2); polynomials are integer
// polynomials in n.

#include <string>
#include <vector>

#include "coarseprox/maps.hpp"
#include "coarseprox/model.hpp"
#include "coarseprox/tameset.hpp"

namespace coarseprox {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

struct GroundTruth {
    enum class Kind { Close, Disjoint, Phi, NotPhi, Bounded, Unbounded };
    Kind kind;
    std::string a, b;  // b empty for unary kinds
    i64 eps = -1;      // Close only
};

struct Catalog {
    MetricModel model;
    TameSet universe;
    std::string universe_name;  // set name when declared by reference
    bool universe_declared = false;
    std::vector<std::pair<std::string, TameSet>> sets;
    std::vector<std::pair<std::string, PointMap>> maps;
    std::vector<GroundTruth> truths;

    const TameSet* find_set(const std::string& name) const;
    const PointMap* find_map(const std::string& name) const;
    const TameSet& require_set(const std::string& name) const;
    const PointMap& require_map(const std::string& name) const;
};

Catalog parse_catalog_text(const std::string& text);
Catalog load_catalog(const std::string& path);

// A single set expression against a given model (no name references).
TameSet parse_set_expr(const std::string& text, const MetricModel& model);

Poly parse_poly(const std::string& text, const std::array<std::string, 3>& vars);

PointMap parse_map_expr(const std::string& text, const MetricModel& domain);

// Canonical printer; parsing the output reproduces the document.
std::string print_catalog(const Catalog& c);

std::string truth_kind_name(GroundTruth::Kind k);

}  // namespace coarseprox
