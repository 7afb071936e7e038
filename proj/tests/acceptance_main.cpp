#include "verify/acceptance.hpp"

#include <fmt/format.h>

#include <cstdio>

int main()
{
    auto results = mdf::verify::run_acceptance();
    int failed = 0;
    for (const auto& c : results) {
        if (!c.passed) ++failed;
        fmt::print("{} criterion {} ({:.2f} s): {}\n", c.passed ? "PASS" : "FAIL", c.name, c.seconds, c.detail);
    }
    fmt::print("{} of {} acceptance criteria passed\n", results.size() - failed, results.size());
    std::fflush(stdout);
    return failed ? 1 : 0;
}
