#include "cellmarket/ppp_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace cellmarket::ppp {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0xA24BAED4963EE407ull + 1));
}

namespace {

double log_factorial(long k) {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        double acc = 0.0;
        for (int i = 1; i < 256; ++i) {
            acc += std::log(static_cast<double>(i));
            t[static_cast<std::size_t>(i)] = acc;
        }
        return t;
    }();
    if (k < 256) return table[static_cast<std::size_t>(k)];
    // Stirling series; below 1e-15 relative for k >= 256.
    const double x = static_cast<double>(k) + 1.0;
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + 1.0 / (12.0 * x) -
           1.0 / (360.0 * x * x * x);
}

}  // namespace

long sample_poisson(std::mt19937_64& rng, double mean) {
    if (!(mean >= 0.0)) throw InvalidParameterError("sample_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    if (mean < 10.0) {
        // Knuth's product method.
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = unif(rng);
        while (prod > limit) {
            ++k;
            prod *= unif(rng);
        }
        return k;
    }

    // PTRS transformed rejection (Hormann 1993), valid for mean >= 10.
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = unif(rng) - 0.5;
        const double v = unif(rng);
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const long k = static_cast<long>(kf);
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + kf * loglam - log_factorial(k))
            return k;
    }
}

double auto_window_radius(double total_intensity, double buyer_intensity) {
    double radius = 500.0;
    if (total_intensity > 0.0)
        radius = std::max(radius, 10.0 / std::sqrt(kPi * total_intensity));
    if (buyer_intensity > 0.0)
        radius = std::max(radius, 10.0 / std::sqrt(kPi * buyer_intensity));
    return radius;
}

PointField sample_ppp(double intensity, double window_radius, std::mt19937_64& rng, int owner) {
    if (!(intensity >= 0.0))
        throw InvalidParameterError("sample_ppp: intensity must be nonnegative");
    if (!(window_radius > 0.0))
        throw InvalidParameterError("sample_ppp: window radius must be positive");

    PointField field;
    field.window_radius = window_radius;
    const double mean = intensity * kPi * window_radius * window_radius;
    if (mean == 0.0) return field;

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const long n = sample_poisson(rng, mean);
    field.points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double r = window_radius * std::sqrt(unif(rng));
        const double phi = 2.0 * kPi * unif(rng);
        field.points.push_back({r * std::cos(phi), r * std::sin(phi), owner});
    }
    return field;
}

SinrSample sinr_at_origin(const PointField& field, std::span<const double> gains, double power,
                          const RadioEnv& env) {
    if (field.points.empty()) throw EmptyFieldError("sinr_at_origin: no base stations");
    if (gains.size() != field.points.size())
        throw InvalidParameterError("sinr_at_origin: one fading gain per point required");

    std::size_t serving = 0;
    double best_r2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        const auto& p = field.points[i];
        const double r2 = p.x * p.x + p.y * p.y;
        if (r2 < best_r2) {
            best_r2 = r2;
            serving = i;
        }
    }

    const double half_alpha = 0.5 * env.alpha;
    double interference = 0.0;
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        const auto& p = field.points[i];
        if (p.owner != kBuyerOwner) continue;
        if (i == serving) continue;  // only reachable when the serving point is buyer-owned
        const double r2 = p.x * p.x + p.y * p.y;
        interference += gains[i] * std::pow(r2, -half_alpha) * power;
    }

    const auto& s = field.points[serving];
    const double signal = gains[serving] * std::pow(best_r2, -half_alpha) * power;
    SinrSample out;
    out.serving_owner = s.owner;
    out.serving_distance = std::sqrt(best_r2);
    out.direct_gain = gains[serving];
    out.interference = interference;
    out.sinr = signal / (interference + env.noise_power);
    return out;
}

namespace {

// One coverage trial on its own substream. Draw order is fixed: buyer count,
// then per buyer point (position, gain); then per seller its count and per
// point (position, keep flag, gain). The keep flag is drawn even when the
// fraction is 0 or 1 so that runs with different fractions stay coupled.
bool coverage_trial(std::uint64_t trial_seed, double lambda0,
                    std::span<const SellerShare> sellers, double power, const RadioEnv& env,
                    double window_radius) {
    std::mt19937_64 rng(trial_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> exp_gain(1.0);
    const double area = kPi * window_radius * window_radius;
    const double half_alpha = 0.5 * env.alpha;

    double best_r2 = std::numeric_limits<double>::infinity();
    double serving_gain = 0.0;
    bool serving_is_buyer = false;
    double serving_buyer_term = 0.0;  // the serving point's own interference term
    double buyer_sum = 0.0;           // gain * r^{-alpha} over all buyer points

    auto add_point = [&](double r2, double gain, bool buyer) {
        double term = 0.0;
        if (buyer) {
            term = gain * std::pow(r2, -half_alpha);
            buyer_sum += term;
        }
        if (r2 < best_r2) {
            best_r2 = r2;
            serving_gain = gain;
            serving_is_buyer = buyer;
            serving_buyer_term = term;
        }
    };

    auto draw_disc_r2 = [&]() {
        const double r = window_radius * std::sqrt(unif(rng));
        const double phi = 2.0 * kPi * unif(rng);
        const double x = r * std::cos(phi);
        const double y = r * std::sin(phi);
        return x * x + y * y;
    };

    if (lambda0 > 0.0) {
        const long n = sample_poisson(rng, lambda0 * area);
        for (long i = 0; i < n; ++i) {
            const double r2 = draw_disc_r2();
            add_point(r2, exp_gain(rng), true);
        }
    }
    for (const auto& seller : sellers) {
        if (seller.intensity <= 0.0) continue;
        const long n = sample_poisson(rng, seller.intensity * area);
        for (long i = 0; i < n; ++i) {
            const double r2 = draw_disc_r2();
            const bool keep = unif(rng) < seller.fraction;
            const double gain = exp_gain(rng);
            if (keep) add_point(r2, gain, false);
        }
    }

    if (!std::isfinite(best_r2)) return false;  // empty window counts as outage

    const double interference =
        (buyer_sum - (serving_is_buyer ? serving_buyer_term : 0.0)) * power;
    const double signal = serving_gain * std::pow(best_r2, -half_alpha) * power;
    return signal > env.threshold * (interference + env.noise_power);
}

}  // namespace

EmpiricalCoverage simulate_coverage(double lambda0, std::span<const SellerShare> sellers,
                                    double power, const RadioEnv& env, const SimOptions& opts) {
    env.validate();
    if (!(lambda0 >= 0.0))
        throw InvalidParameterError("simulate_coverage: lambda0 must be nonnegative");
    if (!(power > 0.0)) throw InvalidParameterError("simulate_coverage: power must be positive");
    if (opts.trials < 1) throw InvalidParameterError("simulate_coverage: trials must be >= 1");

    double effective_total = lambda0;
    for (const auto& s : sellers) {
        if (!(s.intensity >= 0.0))
            throw InvalidParameterError("simulate_coverage: seller intensity must be nonnegative");
        if (!(s.fraction >= 0.0 && s.fraction <= 1.0))
            throw InvalidParameterError("simulate_coverage: fractions must lie in [0, 1]");
        effective_total += s.intensity * s.fraction;
    }
    if (!(effective_total > 0.0))
        throw EmptyFieldError("simulate_coverage: buyer and purchased intensities are all zero");

    const double window = opts.window_radius > 0.0
                              ? opts.window_radius
                              : auto_window_radius(effective_total, lambda0);

    const int threads = std::max(1, opts.threads);
    long successes = 0;
    if (threads == 1) {
        for (long t = 0; t < opts.trials; ++t) {
            if (coverage_trial(substream_seed(opts.seed, static_cast<std::uint64_t>(t)), lambda0,
                               sellers, power, env, window))
                ++successes;
        }
    } else {
        std::vector<long> counts(static_cast<std::size_t>(threads), 0);
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            workers.emplace_back([&, w]() {
                long local = 0;
                for (long t = w; t < opts.trials; t += threads) {
                    if (coverage_trial(substream_seed(opts.seed, static_cast<std::uint64_t>(t)),
                                       lambda0, sellers, power, env, window))
                        ++local;
                }
                counts[static_cast<std::size_t>(w)] = local;
            });
        }
        for (auto& th : workers) th.join();
        for (long c : counts) successes += c;
    }

    EmpiricalCoverage out;
    out.trials = opts.trials;
    out.seed = opts.seed;
    out.estimate = static_cast<double>(successes) / static_cast<double>(opts.trials);
    out.ci95_halfwidth =
        1.96 * std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(opts.trials));
    return out;
}

EmpiricalCoverage simulate_coverage(const IntensitySplit& split, double power,
                                    const RadioEnv& env, const SimOptions& opts) {
    split.validate();
    const SellerShare aggregate{split.lambda_extra, 1.0};
    return simulate_coverage(split.lambda0, std::span<const SellerShare>(&aggregate, 1), power,
                             env, opts);
}

}  // namespace cellmarket::ppp
