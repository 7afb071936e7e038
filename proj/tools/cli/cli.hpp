#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdf::cli {

inline constexpr const char* version = "0.1.0";

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_numeric = 2;
inline constexpr int exit_config = 3;

/// Full command line without the program name.  CSV goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mdf::cli
