#pragma once

#include "verify/check.hpp"

#include <cstdint>

namespace mdf::verify {

/// The twelve acceptance criteria, one CheckResult each, in order.
/// Runtime limits are part of the pass condition where one is stated.
Battery run_acceptance(std::uint64_t seed = 20240611);

} // namespace mdf::verify
