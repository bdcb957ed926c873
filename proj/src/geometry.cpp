#include "coarseprox/geometry.hpp"

#include <cstdio>

namespace coarseprox {

static std::string half_str(i64 h) {
    if (h % 2 == 0) return std::to_string(h / 2);
    return std::to_string(h) + "/2";
}

std::string Point::str() const {
    if (dim == 1) return half_str(h[0]);
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        if (i) s += ",";
        s += half_str(h[i]);
    }
    s += ")";
    return s;
}

std::string ExactDist::str() const {
    if (is_inf()) return "inf";
    return format_double(value());
}

std::string format_double(double v) {
    if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace coarseprox
