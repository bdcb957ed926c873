#pragma once

// Line-oriented key=value reports: the machine-readable output format.
// Serialization is deterministic (insertion order preserved) and parses
// back to an equal report.

#include <string>
#include <vector>

#include "coarseprox/geometry.hpp"

namespace coarseprox {

class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, i64 value);
    void add(const std::string& key, double value);
    void add_bool(const std::string& key, bool value);

    const std::string* find(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return kv_; }

    std::string serialize() const;
    static Report parse(const std::string& text);
    bool operator==(const Report& o) const { return kv_ == o.kv_; }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

}  // namespace coarseprox
