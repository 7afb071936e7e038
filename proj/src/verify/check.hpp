#pragma once

#include <string>
#include <vector>

namespace mdf::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // measured value against its tolerance
    double seconds = 0.0;
};

using Battery = std::vector<CheckResult>;

inline bool all_passed(const Battery& b)
{
    for (const auto& c : b)
        if (!c.passed) return false;
    return true;
}

} // namespace mdf::verify
