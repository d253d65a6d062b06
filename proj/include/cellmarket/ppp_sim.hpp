#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cellmarket/types.hpp"

// Monte Carlo oracle: homogeneous PPP sampling and empirical SINR coverage at
// a typical user under base-station sharing. The buyer's user at the origin
// associates with the nearest station in the union field; only buyer-owned
// stations contribute interference.
namespace cellmarket::ppp {

constexpr int kBuyerOwner = 0;

struct Point {
    double x;
    double y;
    int owner;
};

struct PointField {
    std::vector<Point> points;
    double window_radius;
};

struct SinrSample {
    int serving_owner;
    double serving_distance;
    double direct_gain;
    double interference;  // Watts, buyer-owned stations only
    double sinr;
};

struct SellerShare {
    double intensity;  // seller's full BS intensity, per m^2
    double fraction;   // purchased fraction x_k in [0, 1]
};

struct EmpiricalCoverage {
    double estimate;
    long trials;
    double ci95_halfwidth;  // 1.96 sqrt(p (1-p) / trials)
    std::uint64_t seed;
};

struct SimOptions {
    long trials = 10000;
    std::uint64_t seed = 1;
    double window_radius = 0.0;  // <= 0 selects the automatic window
    int threads = 1;
};

/// Deterministic substream seed for (seed, index); splitmix64 finalizer.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Poisson draw with the given mean. Product method below mean 10, Hormann's
/// PTRS transformed rejection above. Unlike std::poisson_distribution this
/// never touches the signgam global of lgamma, so concurrent trials stay
/// race-free, and results do not depend on the standard library version.
long sample_poisson(std::mt19937_64& rng, double mean);

/// Simulation window: max(500 m, 10 / sqrt(pi lambda_total),
/// 10 / sqrt(pi lambda0)). The union term captures the serving station, the
/// buyer term the dominant interferers, which live on the sparser buyer
/// process when most of the union is shared.
double auto_window_radius(double total_intensity, double buyer_intensity = 0.0);

/// One homogeneous PPP draw on a disc around the origin: Poisson point count
/// with mean intensity * pi * radius^2, positions uniform.
PointField sample_ppp(double intensity, double window_radius, std::mt19937_64& rng,
                      int owner = kBuyerOwner);

/// SINR at the origin for a fixed union field with one fading gain per point.
/// The nearest point serves; interference sums gain * r^{-alpha} * power over
/// buyer-owned points, excluding the serving point only when it is
/// buyer-owned. Throws EmptyFieldError on an empty field.
SinrSample sinr_at_origin(const PointField& field, std::span<const double> gains, double power,
                          const RadioEnv& env);

/// Empirical coverage over independent trials. Each trial draws the buyer PPP
/// and each seller PPP thinned by its purchased fraction, then tests
/// SINR > T. Trials run on counter-based substreams keyed by (seed, trial),
/// so any thread count produces bit-identical estimates. Trials with an empty
/// window count as outage.
EmpiricalCoverage simulate_coverage(double lambda0, std::span<const SellerShare> sellers,
                                    double power, const RadioEnv& env, const SimOptions& opts);

/// Aggregate-split convenience: lambda_extra enters as one fully purchased
/// seller, which is the same point process by superposition.
EmpiricalCoverage simulate_coverage(const IntensitySplit& split, double power,
                                    const RadioEnv& env, const SimOptions& opts);

}  // namespace cellmarket::ppp
