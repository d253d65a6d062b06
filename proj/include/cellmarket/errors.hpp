#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cellmarket {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric precondition on an argument was violated.
struct InvalidParameterError : Error {
    using Error::Error;
};

/// The requested QoS exceeds the interference-limited coverage bound 1/beta'.
struct InfeasibleQosError : Error {
    using Error::Error;
};

/// Adaptive quadrature could not reach the requested error target.
struct QuadratureError : Error {
    using Error::Error;
};

/// No base stations at all: the union intensity is zero.
struct EmptyFieldError : Error {
    using Error::Error;
};

/// The exact LP oracle only enumerates small instances.
struct InstanceTooLargeError : Error {
    using Error::Error;
};

/// Fixed-point iteration stopped before reaching the residual tolerance.
struct NonConvergenceError : Error {
    NonConvergenceError(const std::string& msg, int iterations_, double residual_,
                        bool oscillating_)
        : Error(msg), iterations(iterations_), residual(residual_), oscillating(oscillating_) {}

    int iterations;
    double residual;
    bool oscillating;
};

/// Scenario file failed validation; carries every violated invariant.
struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> violations_)
        : Error(join(violations_)), violations(std::move(violations_)) {}

    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "scenario validation failed:";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
};

/// Scenario file could not be parsed at all.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace cellmarket
