#include "cellmarket/stogeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cellmarket/quadrature.hpp"

namespace cellmarket::stogeo {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-kTailLog) = 1e-13: truncation point for the coverage integrand tail.
const double kTailLog = -std::log(1e-13);

double gamma_fn(double x) { return std::tgamma(x); }

}  // namespace

double rho(double threshold, double alpha) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("rho: path-loss exponent must exceed 2, integral diverges");
    if (!(threshold > 0.0)) throw InvalidParameterError("rho: threshold must be positive");

    // Substituting v = 1/u maps the semi-infinite integral onto (0, T^{2/alpha}]:
    //   rho = T^{2/alpha} Int_0^{T^{2/alpha}} v^{alpha/2 - 2} / (1 + v^{alpha/2}) dv.
    // A second substitution v = t^{2/(alpha-2)} absorbs the endpoint
    // singularity exactly, leaving the bounded integrand
    //   rho = T^{2/alpha} * m * Int_0^{T^{(alpha-2)/alpha}} (1 + t^q)^{-1} dt,
    // with m = 2/(alpha-2) and q = alpha/(alpha-2).
    const double prefactor = std::pow(threshold, 2.0 / alpha);
    const double m = 2.0 / (alpha - 2.0);
    const double q = alpha / (alpha - 2.0);
    const double upper = std::pow(threshold, (alpha - 2.0) / alpha);
    const double scale = prefactor * m;
    const double tol = 1e-11 / std::max(1.0, scale);
    auto res = quad::integrate([&](double t) { return 1.0 / (1.0 + std::pow(t, q)); }, 0.0,
                               upper, tol);
    if (res.abs_error * scale > 1e-10)
        throw QuadratureError("rho: quadrature error " +
                              std::to_string(res.abs_error * scale) + " exceeds 1e-10");
    return scale * res.value;
}

double beta_rayleigh(double threshold, double alpha) { return 1.0 + rho(threshold, alpha); }

double beta_prime(const IntensitySplit& split, double beta) {
    split.validate();
    if (!(beta >= 1.0)) throw InvalidParameterError("beta_prime: beta must be at least 1");
    return 1.0 - split.lambda0 * (1.0 - beta) / split.total();
}

double noise_term(const RadioEnv& env, double power) {
    env.validate();
    if (!(power > 0.0)) throw InvalidParameterError("noise_term: power must be positive");
    const double b = env.threshold * env.noise_power / power;
    return 0.5 * env.alpha * std::pow(b, 2.0 / env.alpha) / gamma_fn(2.0 / env.alpha);
}

double gamma_factor(const RadioEnv& env, double power) { return noise_term(env, power) / kPi; }

namespace {

// Shared evaluator for the coverage integral
//   pi lambda Int_0^inf exp(-(a_lin z + B z^{alpha/2})) dz
// in the normalized variable t = a_lin z, so the quadrature tolerance applies
// directly to the returned probability whatever the SI magnitude of lambda:
//   P = (pi lambda / a_lin) Int_0^Z exp(-t - b t^{alpha/2}) dt,
//   b = B / a_lin^{alpha/2},  Z = max(ln 1e13, (ln 1e13 / b)^{2/alpha}).
CoverageResult coverage_integral(double lambda, double a_lin, double power,
                                 const RadioEnv& env) {
    const double scale = kPi * lambda / a_lin;  // = 1/beta' <= 1
    const double b_cap = env.threshold * env.noise_power / power;
    const double b_norm = b_cap > 0.0 ? b_cap / std::pow(a_lin, 0.5 * env.alpha) : 0.0;

    double z_max = kTailLog;
    if (b_norm > 0.0) z_max = std::max(z_max, std::pow(kTailLog / b_norm, 2.0 / env.alpha));

    // Geometric panels past the e^{-t} decay scale, so the adaptive rule
    // never straddles the whole mass with one panel when z_max is huge.
    std::vector<double> breakpoints{0.0};
    for (double edge = kTailLog; edge < z_max; edge *= 2.0) breakpoints.push_back(edge);
    breakpoints.push_back(z_max);

    const double half_alpha = 0.5 * env.alpha;
    auto res = quad::integrate_panels(
        [&](double t) { return std::exp(-t - b_norm * std::pow(t, half_alpha)); }, breakpoints,
        1e-11);
    const double err = scale * res.abs_error + 1e-13;
    if (err > 1e-8)
        throw QuadratureError("coverage integral: error estimate " + std::to_string(err) +
                              " exceeds 1e-8");
    const double value = std::clamp(scale * res.value, 0.0, 1.0);
    return {value, CoverageMethod::ExactQuadrature, err, false};
}

}  // namespace

CoverageResult coverage_baseline(double lambda, double power, const RadioEnv& env) {
    env.validate();
    if (!(lambda > 0.0))
        throw InvalidParameterError("coverage_baseline: intensity must be positive");
    if (!(power > 0.0))
        throw InvalidParameterError("coverage_baseline: power must be positive");
    const double beta = beta_rayleigh(env.threshold, env.alpha);
    return coverage_integral(lambda, kPi * lambda * beta, power, env);
}

CoverageResult coverage_exact(const IntensitySplit& split, double power, const RadioEnv& env) {
    env.validate();
    split.validate();
    if (!(power > 0.0)) throw InvalidParameterError("coverage_exact: power must be positive");
    const double beta = beta_rayleigh(env.threshold, env.alpha);
    const double lambda = split.total();
    const double a_mod = kPi * (lambda - split.lambda0 * (1.0 - beta));
    return coverage_integral(lambda, a_mod, power, env);
}

CoverageResult coverage_approx(const IntensitySplit& split, double power, const RadioEnv& env) {
    env.validate();
    split.validate();
    if (!(power > 0.0)) throw InvalidParameterError("coverage_approx: power must be positive");
    const double beta = beta_rayleigh(env.threshold, env.alpha);
    const double lambda = split.total();
    const double a_mod = kPi * (lambda - split.lambda0 * (1.0 - beta));
    const double raw = kPi * lambda / (a_mod + noise_term(env, power));
    CoverageResult out{raw, CoverageMethod::Approximation, 0.0, false};
    if (raw > 1.0) {
        out.value = 1.0;
        out.clipped = true;
    }
    return out;
}

double saturation_bound(const IntensitySplit& split, const RadioEnv& env) {
    env.validate();
    return 1.0 / beta_prime(split, beta_rayleigh(env.threshold, env.alpha));
}

namespace {

// c = [2 pi (1 - (1-eps) beta_eff) Gamma(2/alpha) / (alpha (1-eps) (T sigma^2)^{2/alpha})]^{-alpha/2}
double power_constant(double beta_eff, const RadioEnv& env, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameterError("epsilon must lie in (0, 1)");
    if (!(env.noise_power > 0.0))
        throw InvalidParameterError(
            "minimum power is undefined with zero noise: coverage no longer depends on power");
    const double target = 1.0 - epsilon;
    if (target >= 1.0 / beta_eff)
        throw InfeasibleQosError(
            "QoS 1 - epsilon >= 1/beta': unreachable by transmit power alone, the buyer must "
            "purchase infrastructure");
    const double num = 2.0 * kPi * (1.0 - target * beta_eff) * gamma_fn(2.0 / env.alpha);
    const double den = env.alpha * target *
                       std::pow(env.threshold * env.noise_power, 2.0 / env.alpha);
    return std::pow(num / den, -0.5 * env.alpha);
}

}  // namespace

double min_power(const IntensitySplit& split, const RadioEnv& env, double epsilon) {
    env.validate();
    split.validate();
    const double beta = beta_rayleigh(env.threshold, env.alpha);
    const double c = power_constant(beta_prime(split, beta), env, epsilon);
    return c * std::pow(split.total(), -0.5 * env.alpha);
}

double power_law_constant(const RadioEnv& env, double epsilon) {
    env.validate();
    return power_constant(beta_rayleigh(env.threshold, env.alpha), env, epsilon);
}

double cell_radius(double lambda0, const RadioEnv& env, double epsilon) {
    env.validate();
    if (!(lambda0 > 0.0)) throw InvalidParameterError("cell_radius: lambda0 must be positive");
    if (!(env.noise_power > 0.0))
        throw InvalidParameterError("cell_radius: undefined with zero noise");
    const double p = min_power({lambda0, 0.0}, env, epsilon);
    return std::pow(2.0 * p / env.noise_power, 1.0 / env.alpha);
}

double areal_power_threshold(const RadioEnv& env, double c_k) {
    env.validate();
    if (!(c_k > 0.0)) throw InvalidParameterError("areal power: c_k must be positive");
    return std::pow(c_k / env.p_max, 2.0 / env.alpha);
}

ArealPowerCurvePoint areal_power(double lambda_k, const RadioEnv& env, double c_k) {
    const double lambda_th = areal_power_threshold(env, c_k);
    if (!(lambda_k >= 0.0))
        throw InvalidParameterError("areal power: intensity must be nonnegative");
    if (lambda_k <= lambda_th)
        return {lambda_k, lambda_k * (env.p_max + env.p_circuit), ArealBranch::Linear};
    return {lambda_k, lambda_k * (c_k * std::pow(lambda_k, -0.5 * env.alpha) + env.p_circuit),
            ArealBranch::Convex};
}

double areal_power_minimizer(const RadioEnv& env, double c_k) {
    const double lambda_th = areal_power_threshold(env, c_k);
    if (!(env.p_circuit > 0.0))
        throw InvalidParameterError(
            "areal_power_minimizer: stationary point diverges with zero circuit power");
    const double interior =
        std::pow(c_k / env.p_circuit * (0.5 * env.alpha - 1.0), 2.0 / env.alpha);
    return std::max(lambda_th, interior);
}

double qos_intensity_threshold(double lambda0, const RadioEnv& env, double power,
                               double epsilon) {
    env.validate();
    if (!(lambda0 >= 0.0))
        throw InvalidParameterError("qos_intensity_threshold: lambda0 must be nonnegative");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidParameterError("qos_intensity_threshold: epsilon must lie in (0, 1)");
    const double beta = beta_rayleigh(env.threshold, env.alpha);
    const double gamma = gamma_factor(env, power);
    return (1.0 - epsilon) / epsilon * (gamma - lambda0 * (1.0 - beta));
}

}  // namespace cellmarket::stogeo
