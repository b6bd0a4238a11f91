#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace critiq {

// Error hierarchy. The CLI maps these to exit codes:
//   ConfigError -> 2, InfeasibleError -> 3, anything else -> 1.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Raised by the bit allocator when the budget cannot cover the minimum
// bit-width for every layer. Carries the smallest feasible budget in bits.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& msg, int64_t min_feasible_bits)
        : Error(msg), min_feasible_bits(min_feasible_bits) {}
    int64_t min_feasible_bits = 0;
};

} // namespace critiq
