#pragma once

// Distance profiles over truncation radii. An entry is exact when the value
// is certified at the horizon: no closer pair exists within the enumerated
// ball. Saturated entries record "at least this much" at the saturation cap,
// which keeps divergent scans cheap without fabricating values.

#include <string>
#include <vector>

#include "coarseprox/geometry.hpp"

namespace coarseprox {

struct ProfileEntry {
    i64 radius = 0;
    ExactDist value;
    bool exact = false;
    bool saturated = false;
};

struct DistanceProfile {
    std::vector<ProfileEntry> entries;
    Point basepoint;
    i64 horizon = 0;

    bool all_certified() const {
        for (const auto& e : entries)
            if (!e.exact) return false;
        return true;
    }
    bool nondecreasing() const {
        for (size_t i = 1; i < entries.size(); ++i) {
            const auto& a = entries[i - 1].value;
            const auto& b = entries[i].value;
            if (b < a) return false;
        }
        return true;
    }
    std::string to_csv() const;
};

}  // namespace coarseprox
