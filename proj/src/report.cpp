#include "coarseprox/report.hpp"

#include <sstream>
#include <stdexcept>

namespace coarseprox {

void Report::add(const std::string& key, const std::string& value) {
    if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos)
        throw std::invalid_argument("bad report key");
    if (value.find('\n') != std::string::npos) throw std::invalid_argument("bad report value");
    kv_.push_back({key, value});
}
void Report::add(const std::string& key, i64 value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, double value) { add(key, format_double(value)); }
void Report::add_bool(const std::string& key, bool value) {
    add(key, value ? std::string("true") : std::string("false"));
}

const std::string* Report::find(const std::string& key) const {
    for (const auto& [k, v] : kv_)
        if (k == key) return &v;
    return nullptr;
}

std::string Report::serialize() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv_) os << k << "=" << v << "\n";
    return os.str();
}

Report Report::parse(const std::string& text) {
    Report r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("report line without '='");
        r.kv_.push_back({line.substr(0, eq), line.substr(eq + 1)});
    }
    return r;
}

}  // namespace coarseprox
