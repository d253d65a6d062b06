#pragma once

#include "cellmarket/types.hpp"

// Analytic coverage, power/density trade-off, and areal power consumption for
// a buyer network that may associate with purchased base stations while the
// interference still comes only from its own stations.
namespace cellmarket::stogeo {

/// Interference geometry factor rho(T, alpha) for Rayleigh-faded interferers:
/// T^{2/alpha} * integral_{T^{-2/alpha}}^inf (1 + u^{alpha/2})^{-1} du,
/// evaluated by adaptive quadrature after mapping to a finite interval.
/// Absolute error <= 1e-10.
double rho(double threshold, double alpha);

/// beta = 1 + rho(T, alpha); always > 1 for positive thresholds.
double beta_rayleigh(double threshold, double alpha);

/// Sharing-adjusted beta' = 1 - lambda0 (1 - beta) / lambda.
/// Falls in [1, beta]: equals beta with no sharing, tends to 1 as the shared
/// intensity dominates.
double beta_prime(const IntensitySplit& split, double beta);

/// Noise-geometry term (alpha/2) B^{2/alpha} / Gamma(2/alpha) with
/// B = T sigma^2 / p. This is pi * gamma in the feasibility bound.
double noise_term(const RadioEnv& env, double power);

/// gamma = (alpha / 2 pi) B^{2/alpha} / Gamma(2/alpha).
double gamma_factor(const RadioEnv& env, double power);

/// Coverage probability of the baseline single-operator network of intensity
/// lambda: pi lambda Int_0^inf exp(-(A z + B z^{alpha/2})) dz, A = pi lambda beta.
CoverageResult coverage_baseline(double lambda, double power, const RadioEnv& env);

/// Coverage probability under sharing:
/// pi lambda Int_0^inf exp(-(A' z + B z^{alpha/2})) dz with
/// A' = pi (lambda - lambda0 (1 - beta)). Reduces to the baseline when
/// lambda_extra = 0. Throws QuadratureError if the error estimate on the
/// returned probability exceeds 1e-8.
CoverageResult coverage_exact(const IntensitySplit& split, double power, const RadioEnv& env);

/// Closed-form approximation pi lambda [A' + noise_term]^{-1}, clipped to
/// [0, 1] with the clip recorded.
CoverageResult coverage_approx(const IntensitySplit& split, double power, const RadioEnv& env);

/// Interference-limited ceiling 1/beta' (equals 1/beta with no sharing).
double saturation_bound(const IntensitySplit& split, const RadioEnv& env);

/// Minimum per-BS transmit power so that the approximate coverage meets
/// 1 - epsilon: p = c lambda^{-alpha/2}. Requires 1 - epsilon < 1/beta',
/// otherwise throws InfeasibleQosError (power alone cannot reach the QoS and
/// the buyer must purchase infrastructure). Requires positive noise.
double min_power(const IntensitySplit& split, const RadioEnv& env, double epsilon);

/// The power-law constant c of the no-sharing minimum-power relation
/// p = c lambda^{-alpha/2}, using env.threshold as the operator's own T.
/// Used to derive a seller's QoS constant c_k.
double power_law_constant(const RadioEnv& env, double epsilon);

/// Cell radius at which the edge SNR is -3 dB for the minimum-power,
/// no-sharing network: R = (2 p / sigma^2)^{1/alpha} = c' / sqrt(lambda0).
double cell_radius(double lambda0, const RadioEnv& env, double epsilon);

/// Branch boundary lambda_th = (c_k / p_max)^{2/alpha} of the areal power
/// curve: below it the minimum-power law would exceed p_max.
double areal_power_threshold(const RadioEnv& env, double c_k);

/// Areal power consumption S_k(lambda_k): lambda_k (p_max + p_c) on the
/// capped branch, lambda_k (c_k lambda_k^{-alpha/2} + p_c) past lambda_th.
ArealPowerCurvePoint areal_power(double lambda_k, const RadioEnv& env, double c_k);

/// Intensity minimizing S_k over the convex region:
/// max(lambda_th, [c_k/p_c (alpha/2 - 1)]^{2/alpha}). Requires p_circuit > 0.
double areal_power_minimizer(const RadioEnv& env, double c_k);

/// Net BS intensity required for the approximate coverage to reach
/// 1 - epsilon: (1-eps)/eps * (gamma - lambda0 (1 - beta)). Nonpositive
/// results mean the QoS already holds and are returned as-is.
double qos_intensity_threshold(double lambda0, const RadioEnv& env, double power,
                               double epsilon);

}  // namespace cellmarket::stogeo
