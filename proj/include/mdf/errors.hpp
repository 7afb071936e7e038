#pragma once

#include <stdexcept>
#include <string>

namespace mdf {

// Input outside an operation's domain (zero separation, negative coupling, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical engine failed to meet its tolerance, or an internal
// consistency check between two routes disagreed.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration or command line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mdf
