#pragma once

// Integer polynomials in up to three variables. These drive the set
// description language (sequences, curves) and the point maps; integer
// coefficients keep every evaluation exact.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarseprox/geometry.hpp"

namespace coarseprox {

struct PolyTerm {
    i64 coef = 0;
    std::array<int, 3> exp{0, 0, 0};
};

class Poly {
public:
    Poly() = default;
    explicit Poly(i64 c) {
        if (c != 0) terms_.push_back({c, {0, 0, 0}});
    }
    static Poly variable(int idx) {
        Poly p;
        PolyTerm t;
        t.coef = 1;
        t.exp[idx] = 1;
        p.terms_.push_back(t);
        return p;
    }

    const std::vector<PolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    i64 constant_value() const;
    int nvars() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly pow(int e) const;

    i64 eval(std::span<const i64> vars) const;
    i64 eval1(i64 n) const { return eval(std::span<const i64>(&n, 1)); }

    // For univariate polynomials: degree and leading coefficient.
    int degree1() const;
    i64 lead1() const;

    // Smallest N >= start such that |p(n)| > r for every n >= N; requires a
    // nonconstant univariate polynomial.
    i64 escape_index(i64 r) const;

    std::string str(const std::array<std::string, 3>& vars) const;
    std::string str1(const std::string& var) const { return str({var, "", ""}); }

private:
    std::vector<PolyTerm> terms_;  // canonical: sorted by exponent, no zeros
    void normalize();
};

}  // namespace coarseprox
