#pragma once

#include "cellmarket/errors.hpp"

namespace cellmarket {

/// Global physical parameters, strict SI: Watts, meters, linear ratios.
struct RadioEnv {
    double alpha;        // path-loss exponent, must exceed 2
    double noise_power;  // sigma^2 in Watts
    double threshold;    // detection threshold T, linear SINR
    double p_max;        // maximum BS transmit power, Watts
    double p_circuit;    // per-BS circuit power, Watts

    void validate() const {
        if (!(alpha > 2.0))
            throw InvalidParameterError("RadioEnv: path-loss exponent must exceed 2");
        if (!(noise_power >= 0.0))
            throw InvalidParameterError("RadioEnv: noise power must be nonnegative");
        if (!(threshold > 0.0))
            throw InvalidParameterError("RadioEnv: SINR threshold must be positive");
        if (!(p_max > 0.0)) throw InvalidParameterError("RadioEnv: p_max must be positive");
        if (!(p_circuit >= 0.0))
            throw InvalidParameterError("RadioEnv: circuit power must be nonnegative");
    }
};

/// Buyer-owned vs purchased/shared BS intensity, both in BS per m^2.
struct IntensitySplit {
    double lambda0;       // buyer's own intensity
    double lambda_extra;  // aggregate shared intensity from all sellers

    double total() const { return lambda0 + lambda_extra; }

    void validate() const {
        if (!(lambda0 >= 0.0))
            throw InvalidParameterError("IntensitySplit: lambda0 must be nonnegative");
        if (!(lambda_extra >= 0.0))
            throw InvalidParameterError("IntensitySplit: lambda_extra must be nonnegative");
        if (!(total() > 0.0))
            throw InvalidParameterError("IntensitySplit: total intensity must be positive");
    }
};

enum class CoverageMethod { ExactQuadrature, Approximation };

struct CoverageResult {
    double value;                    // coverage probability in [0, 1]
    CoverageMethod method;
    double quadrature_abs_err = 0.0; // only meaningful for ExactQuadrature
    bool clipped = false;            // approximation exceeded 1 and was clipped
};

enum class ArealBranch { Linear, Convex };

struct ArealPowerCurvePoint {
    double lambda_k;  // BS intensity, per m^2
    double s_k;       // areal power consumption, W per m^2
    ArealBranch branch;
};

}  // namespace cellmarket
