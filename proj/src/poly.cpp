#include "coarseprox/poly.hpp"

#include <algorithm>
#include <cmath>

namespace coarseprox {

namespace {
constexpr i64 kEvalLimit = (i64{1} << 60);

bool exp_less(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return a < b;
}
}  // namespace

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const PolyTerm& a, const PolyTerm& b) { return exp_less(a.exp, b.exp); });
    std::vector<PolyTerm> out;
    for (const auto& t : terms_) {
        if (!out.empty() && out.back().exp == t.exp) {
            out.back().coef += t.coef;
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [](const PolyTerm& t) { return t.coef == 0; });
    terms_ = std::move(out);
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == std::array<int, 3>{0, 0, 0});
}

i64 Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value on nonconstant polynomial");
    return terms_[0].coef;
}

int Poly::nvars() const {
    int n = 0;
    for (const auto& t : terms_)
        for (int i = 0; i < 3; ++i)
            if (t.exp[i] > 0) n = std::max(n, i + 1);
    return n;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (auto t : o.terms_) {
        t.coef = -t.coef;
        r.terms_.push_back(t);
    }
    r.normalize();
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            PolyTerm t;
            const i128 c = static_cast<i128>(a.coef) * b.coef;
            if (c > kEvalLimit || c < -kEvalLimit) throw std::range_error("polynomial coefficient overflow");
            t.coef = static_cast<i64>(c);
            for (int i = 0; i < 3; ++i) t.exp[i] = a.exp[i] + b.exp[i];
            r.terms_.push_back(t);
        }
    }
    r.normalize();
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Poly r(1);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

i64 Poly::eval(std::span<const i64> vars) const {
    i128 total = 0;
    for (const auto& t : terms_) {
        i128 v = t.coef;
        for (int i = 0; i < 3; ++i) {
            for (int e = 0; e < t.exp[i]; ++e) {
                const i64 x = (static_cast<size_t>(i) < vars.size()) ? vars[i] : 0;
                v *= x;
                if (v > (static_cast<i128>(kEvalLimit) << 2) || v < -(static_cast<i128>(kEvalLimit) << 2))
                    throw std::range_error("polynomial evaluation overflow");
            }
        }
        total += v;
        if (total > (static_cast<i128>(kEvalLimit) << 2) || total < -(static_cast<i128>(kEvalLimit) << 2))
            throw std::range_error("polynomial evaluation overflow");
    }
    if (total > kEvalLimit || total < -kEvalLimit) throw std::range_error("polynomial value overflow");
    return static_cast<i64>(total);
}

int Poly::degree1() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[0]);
    return d;
}

i64 Poly::lead1() const {
    const int d = degree1();
    for (const auto& t : terms_)
        if (t.exp[0] == d) return t.coef;
    return 0;
}

i64 Poly::escape_index(i64 r) const {
    if (is_constant()) throw std::logic_error("escape_index of constant polynomial");
    const int d = degree1();
    const i64 lead = std::abs(lead1());
    i64 lower_sum = 0;
    for (const auto& t : terms_)
        if (t.exp[0] < d) lower_sum += std::abs(t.coef);
    return std::max<i64>(1, (lower_sum + std::max<i64>(r, 0)) / lead + 1);
}

std::string Poly::str(const std::array<std::string, 3>& vars) const {
    if (terms_.empty()) return "0";
    std::string s;
    // print highest degree first for readability
    auto sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const PolyTerm& a, const PolyTerm& b) { return exp_less(b.exp, a.exp); });
    bool first = true;
    for (const auto& t : sorted) {
        i64 c = t.coef;
        std::string part;
        bool has_var = false;
        for (int i = 0; i < 3; ++i) {
            if (t.exp[i] > 0) {
                has_var = true;
                part += vars[i];
                if (t.exp[i] > 1) part += "^" + std::to_string(t.exp[i]);
            }
        }
        std::string coefs;
        if (!has_var) {
            coefs = std::to_string(std::abs(c));
        } else if (std::abs(c) != 1) {
            coefs = std::to_string(std::abs(c));
        }
        if (first) {
            s += (c < 0 ? "-" : "");
            first = false;
        } else {
            s += (c < 0 ? "-" : "+");
        }
        s += coefs + part;
    }
    return s;
}

}  // namespace coarseprox
