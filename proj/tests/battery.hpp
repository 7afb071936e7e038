#pragma once

#include "verify/oracles.hpp"

#include <doctest.h>

inline void check_battery(const char* suite, std::uint64_t seed = 20240611)
{
    for (const auto& c : mdf::verify::run_suite(suite, seed)) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
