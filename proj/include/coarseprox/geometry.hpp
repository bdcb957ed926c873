#pragma once

// Exact lattice geometry. Points carry half-integer coordinates stored as
// integer numerators scaled by 2, so every squared distance is an exact
// int64 in quarter units. All threshold comparisons go through integer
// arithmetic (int128 where products can overflow); doubles appear only in
// output formatting.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace coarseprox {

using i64 = std::int64_t;
using i128 = __int128;

// A point in 1..3 dimensions; coords[i] is twice the real coordinate.
struct Point {
    int dim = 1;
    std::array<i64, 3> h{0, 0, 0};

    static Point make1(i64 x_halves) { return Point{1, {x_halves, 0, 0}}; }
    static Point make2(i64 x_halves, i64 y_halves) { return Point{2, {x_halves, y_halves, 0}}; }

    static Point integer1(i64 x) { return make1(2 * x); }
    static Point integer2(i64 x, i64 y) { return make2(2 * x, 2 * y); }

    bool operator==(const Point& o) const { return dim == o.dim && h == o.h; }
    bool operator!=(const Point& o) const { return !(*this == o); }

    bool is_integer() const {
        for (int i = 0; i < dim; ++i)
            if (h[i] % 2 != 0) return false;
        return true;
    }

    double coord(int i) const { return static_cast<double>(h[i]) / 2.0; }

    std::string str() const;
};

// Deterministic total order: by coordinates lexicographically.
inline bool lex_less(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim; ++i) {
        if (a.h[i] != b.h[i]) return a.h[i] < b.h[i];
    }
    return false;
}

// Squared distance in quarter units (i.e. 4*d^2).
inline i64 sq_dist(const Point& a, const Point& b) {
    i64 s = 0;
    for (int i = 0; i < a.dim; ++i) {
        const i64 d = a.h[i] - b.h[i];
        s += d * d;
    }
    return s;
}

inline i64 sq_norm(const Point& a) {
    i64 s = 0;
    for (int i = 0; i < a.dim; ++i) s += a.h[i] * a.h[i];
    return s;
}

// d <=> t for integer thresholds t: compares 4*d^2 with 4*t^2 exactly.
inline bool sq_lt_units(i64 sq, i64 t_units) {
    if (t_units < 0) return false;
    return static_cast<i128>(sq) < static_cast<i128>(4) * t_units * t_units;
}
inline bool sq_le_units(i64 sq, i64 t_units) {
    if (t_units < 0) return false;
    return static_cast<i128>(sq) <= static_cast<i128>(4) * t_units * t_units;
}
inline bool sq_ge_units(i64 sq, i64 t_units) { return !sq_lt_units(sq, t_units); }
inline bool sq_gt_units(i64 sq, i64 t_units) { return !sq_le_units(sq, t_units); }

// An exact distance value: either finite with known 4*d^2, or infinite
// (the paper's convention for distances involving the empty set).
struct ExactDist {
    i64 sq = -1;  // -1 encodes infinity

    static ExactDist infinite() { return ExactDist{-1}; }
    static ExactDist from_sq(i64 s) { return ExactDist{s}; }
    static ExactDist zero() { return ExactDist{0}; }

    bool is_inf() const { return sq < 0; }
    bool lt_units(i64 t) const { return !is_inf() && sq_lt_units(sq, t); }
    bool le_units(i64 t) const { return !is_inf() && sq_le_units(sq, t); }
    bool gt_units(i64 t) const { return is_inf() || sq_gt_units(sq, t); }
    bool ge_units(i64 t) const { return is_inf() || sq_ge_units(sq, t); }

    bool operator<(const ExactDist& o) const {
        if (is_inf()) return false;
        if (o.is_inf()) return true;
        return sq < o.sq;
    }
    bool operator==(const ExactDist& o) const { return sq == o.sq; }
    bool operator<=(const ExactDist& o) const { return *this < o || *this == o; }

    double value() const {
        if (is_inf()) return std::numeric_limits<double>::infinity();
        return std::sqrt(static_cast<double>(sq)) / 2.0;
    }

    // Smallest integer strictly greater than the distance; used to report
    // a witnessed closeness bound epsilon with d < epsilon.
    i64 strict_int_bound() const {
        if (is_inf()) throw std::logic_error("strict_int_bound of infinite distance");
        i64 t = static_cast<i64>(std::floor(std::sqrt(static_cast<double>(sq)) / 2.0));
        while (t > 0 && sq_lt_units(sq, t)) --t;
        while (!sq_lt_units(sq, t + 1)) ++t;
        return t + 1;
    }

    std::string str() const;
};

// Triangle inequality check, exact: sqrt(a) <= sqrt(b) + sqrt(c).
inline bool sqrt_le_sum(i64 a, i64 b, i64 c) {
    if (a <= b + c) return true;
    const i128 lhs = static_cast<i128>(a - b - c) * (a - b - c);
    const i128 rhs = static_cast<i128>(4) * b * c;
    return lhs <= rhs;
}

std::string format_double(double v);

}  // namespace coarseprox
