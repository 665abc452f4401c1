#pragma once

#include <stdexcept>
#include <string>

namespace fockpulse {

// Bad user input: config files, CLI values, malformed schedules.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed quantum numbers (|m| > j, parity mismatch, out-of-range j).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Integrator or quadrature failure.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures on output paths.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fockpulse
