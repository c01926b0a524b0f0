#pragma once

#include <stdexcept>
#include <string>

namespace stratipm {

// Incompatible array/grid dimensions.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant broken (Hermitian symmetry, parity routing, ...).
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Samples do not fit the requested function space.
struct ParityError : std::runtime_error {
    explicit ParityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values (negative time, bad exponent triple, ...).
struct ParameterError : std::runtime_error {
    explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature did not reach the requested truncation tolerance.
struct RefinementError : std::runtime_error {
    RefinementError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_estimate(achieved) {}
    double achieved_estimate;
};

// Config-file problems, annotated with line/key context by the parser.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stratipm
