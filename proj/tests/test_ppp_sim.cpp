#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cellmarket/ppp_sim.hpp"
#include "cellmarket/stogeo.hpp"

using namespace cellmarket;
namespace sim = cellmarket::ppp;

namespace {

constexpr double kPi = std::numbers::pi;
const RadioEnv kEnv{4.0, 1e-15, 31.622776601683793, 0.01, 0.001};

}  // namespace

TEST_CASE("sample_ppp: void process") {
    std::mt19937_64 rng(1);
    const auto field = sim::sample_ppp(0.0, 500.0, rng);
    CHECK(field.points.empty());
}

TEST_CASE("sample_ppp: Poisson count statistics") {
    const double intensity = 1e-5;
    const double radius = 500.0;
    const double mean = intensity * kPi * radius * radius;  // about 7.854

    std::mt19937_64 rng(42);
    const int draws = 10000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto field = sim::sample_ppp(intensity, radius, rng);
        const double n = static_cast<double>(field.points.size());
        sum += n;
        sum_sq += n * n;
        for (const auto& p : field.points)
            CHECK(p.x * p.x + p.y * p.y <= radius * radius * (1.0 + 1e-12));
    }
    const double emp_mean = sum / draws;
    const double emp_var = sum_sq / draws - emp_mean * emp_mean;
    const double se = std::sqrt(mean / draws);
    CHECK(std::abs(emp_mean - mean) < 3.0 * se);
    CHECK(std::abs(emp_var / mean - 1.0) < 0.05);
}

TEST_CASE("poisson sampler statistics on both branches") {
    std::mt19937_64 rng(2718);
    CHECK(sim::sample_poisson(rng, 0.0) == 0);
    for (double mean : {3.5, 78.5, 2400.0}) {  // product method and PTRS
        const int draws = 20000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double n = static_cast<double>(sim::sample_poisson(rng, mean));
            sum += n;
            sum_sq += n * n;
        }
        const double emp_mean = sum / draws;
        const double emp_var = sum_sq / draws - emp_mean * emp_mean;
        CHECK(std::abs(emp_mean - mean) < 4.0 * std::sqrt(mean / draws));
        CHECK(std::abs(emp_var / mean - 1.0) < 0.06);
    }
}

TEST_CASE("superposition: union of independent draws has the summed intensity") {
    const double l1 = 2e-5, l2 = 3e-5;
    const double radius = 500.0;
    const double mean = (l1 + l2) * kPi * radius * radius;
    std::mt19937_64 rng(77);
    const int draws = 4000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += static_cast<double>(sim::sample_ppp(l1, radius, rng, 0).points.size() +
                                   sim::sample_ppp(l2, radius, rng, 1).points.size());
    }
    const double se = std::sqrt(mean / draws);
    CHECK(std::abs(sum / draws - mean) < 3.0 * se);
}

TEST_CASE("trials with an empty window count as outage") {
    RadioEnv env = kEnv;
    env.threshold = 1e-12;
    env.noise_power = 0.0;
    sim::SimOptions opts;
    opts.trials = 4000;
    opts.seed = 9;
    opts.window_radius = 500.0;
    // Mean point count ~ 8e-4: nearly every trial is empty, so the estimate
    // collapses to the non-empty fraction even though coverage is otherwise
    // certain at this threshold.
    const auto r = sim::simulate_coverage({1e-9, 0.0}, 0.01, env, opts);
    CHECK(r.estimate < 0.01);
}

TEST_CASE("sinr_at_origin bookkeeping on a hand-built field") {
    const double p = 0.01;
    sim::PointField field;
    field.window_radius = 500.0;
    field.points = {{100.0, 0.0, 0}, {-200.0, 0.0, 0}, {50.0, 0.0, 1}};
    const std::vector<double> gains = {0.5, 2.0, 1.0};

    // Seller at 50 m serves: every buyer point interferes.
    const auto s = sim::sinr_at_origin(field, gains, p, kEnv);
    CHECK(s.serving_owner == 1);
    CHECK(s.serving_distance == 50.0);
    CHECK(s.direct_gain == 1.0);
    const double expected_i = 0.5 * std::pow(100.0, -4.0) * p + 2.0 * std::pow(200.0, -4.0) * p;
    CHECK(std::abs(s.interference / expected_i - 1.0) < 1e-12);
    const double expected_sinr =
        1.0 * std::pow(50.0, -4.0) * p / (expected_i + kEnv.noise_power);
    CHECK(std::abs(s.sinr / expected_sinr - 1.0) < 1e-12);

    // Remove the seller: the nearest buyer serves and drops out of the sum.
    field.points.pop_back();
    const std::vector<double> gains2 = {0.5, 2.0};
    const auto s2 = sim::sinr_at_origin(field, gains2, p, kEnv);
    CHECK(s2.serving_owner == 0);
    CHECK(s2.serving_distance == 100.0);
    const double expected_i2 = 2.0 * std::pow(200.0, -4.0) * p;
    CHECK(std::abs(s2.interference / expected_i2 - 1.0) < 1e-12);
}

TEST_CASE("interference bookkeeping under coupled seller additions") {
    // Seller points never enter the interference sum. Adding them leaves the
    // buyer terms fixed; the sum can only change by re-including the buyer
    // point that stops serving when a seller takes over.
    const double p = 0.01;
    std::mt19937_64 rng(99);
    int switches = 0;
    for (int rep = 0; rep < 200; ++rep) {
        auto buyers = sim::sample_ppp(2e-5, 800.0, rng, 0);
        if (buyers.points.empty()) continue;
        std::exponential_distribution<double> exp_gain(1.0);
        std::vector<double> gains;
        for (std::size_t i = 0; i < buyers.points.size(); ++i) gains.push_back(exp_gain(rng));

        const auto base = sim::sinr_at_origin(buyers, gains, p, kEnv);

        auto with_sellers = buyers;
        auto gains2 = gains;
        auto sellers = sim::sample_ppp(4e-5, 800.0, rng, 1);
        for (const auto& sp : sellers.points) {
            with_sellers.points.push_back(sp);
            gains2.push_back(exp_gain(rng));
        }
        const auto shared = sim::sinr_at_origin(with_sellers, gains2, p, kEnv);

        if (shared.serving_owner == 0) {
            // Same serving buyer point, identical interference.
            CHECK(shared.interference == base.interference);
        } else {
            ++switches;
            CHECK(shared.serving_distance <= base.serving_distance);
            // The previously serving buyer point re-enters the sum.
            const double reinstated =
                base.direct_gain * std::pow(base.serving_distance, -kEnv.alpha) * p;
            CHECK(std::abs(shared.interference - (base.interference + reinstated)) <
                  1e-9 * (base.interference + reinstated) + 1e-300);
        }
    }
    CHECK(switches > 20);  // both cases exercised
}

TEST_CASE("coverage certain when the threshold vanishes and noise is zero") {
    RadioEnv env = kEnv;
    env.threshold = 1e-12;
    env.noise_power = 0.0;
    sim::SimOptions opts;
    opts.trials = 2000;
    opts.seed = 7;
    const auto r = sim::simulate_coverage({2e-5, 0.0}, 0.01, env, opts);
    CHECK(r.estimate == 1.0);
}

TEST_CASE("all-shared network has zero interference and matches the closed form") {
    // Zero interference is structural: no buyer-owned point ever enters the sum.
    std::mt19937_64 rng(31);
    auto field = sim::sample_ppp(1e-4, 600.0, rng, /*owner=*/3);
    REQUIRE_FALSE(field.points.empty());
    std::vector<double> gains(field.points.size(), 1.0);
    CHECK(sim::sinr_at_origin(field, gains, 0.01, kEnv).interference == 0.0);

    sim::SimOptions opts;
    opts.trials = 30000;
    opts.seed = 12;
    const std::vector<sim::SellerShare> sellers = {{5e-4, 0.6}};
    const auto r = sim::simulate_coverage(0.0, sellers, 0.01, kEnv, opts);
    const double formula = stogeo::coverage_approx({0.0, 0.6 * 5e-4}, 0.01, kEnv).value;
    const double exact = stogeo::coverage_exact({0.0, 0.6 * 5e-4}, 0.01, kEnv).value;
    CHECK(std::abs(r.estimate - formula) <= 0.015);
    CHECK(std::abs(r.estimate - exact) <= std::max(0.015, 3.0 * r.ci95_halfwidth));
}

TEST_CASE("empirical coverage agrees with the analytic integral across regimes") {
    struct Case {
        double lambda0, lambda_extra, power;
        RadioEnv env;
    };
    RadioEnv zero_db = kEnv;
    zero_db.threshold = 1.0;
    RadioEnv ten_db = kEnv;
    ten_db.threshold = 10.0;
    const Case cases[] = {
        {2e-5, 0.0, 0.01, kEnv},      // interference-limited, no sharing
        {2e-5, 2e-5, 0.01, kEnv},     // moderate sharing
        {2e-5, 8e-5, 0.01, kEnv},     // heavy sharing
        {0.0, 5e-5, 0.01, kEnv},      // all shared, zero interference
        {5e-6, 0.0, 1e-5, zero_db},   // noise-limited, low power
        {1e-5, 1e-5, 1e-3, ten_db},   // mixed regime
    };
    sim::SimOptions opts;
    opts.trials = 20000;
    int idx = 0;
    for (const auto& c : cases) {
        opts.seed = 1000 + idx++;
        const IntensitySplit split{c.lambda0, c.lambda_extra};
        const auto emp = sim::simulate_coverage(split, c.power, c.env, opts);
        const double exact = stogeo::coverage_exact(split, c.power, c.env).value;
        CHECK(std::abs(emp.estimate - exact) <= std::max(0.015, 3.0 * emp.ci95_halfwidth));
    }
}

TEST_CASE("thinning by a fraction matches the thinned-intensity process") {
    sim::SimOptions opts;
    opts.trials = 30000;
    opts.seed = 5;
    const std::vector<sim::SellerShare> fractional = {{8e-5, 0.25}};
    const std::vector<sim::SellerShare> collapsed = {{2e-5, 1.0}};
    const auto a = sim::simulate_coverage(1e-5, fractional, 0.01, kEnv, opts);
    opts.seed = 6;
    const auto b = sim::simulate_coverage(1e-5, collapsed, 0.01, kEnv, opts);
    CHECK(std::abs(a.estimate - b.estimate) <=
          3.0 * (a.ci95_halfwidth + b.ci95_halfwidth));
}

TEST_CASE("determinism: identical seeds, any thread count") {
    sim::SimOptions opts;
    opts.trials = 5000;
    opts.seed = 2024;
    const std::vector<sim::SellerShare> sellers = {{3e-5, 0.5}, {2e-5, 1.0}};
    const auto a = sim::simulate_coverage(2e-5, sellers, 0.01, kEnv, opts);
    const auto b = sim::simulate_coverage(2e-5, sellers, 0.01, kEnv, opts);
    CHECK(a.estimate == b.estimate);

    opts.threads = 4;
    const auto c = sim::simulate_coverage(2e-5, sellers, 0.01, kEnv, opts);
    CHECK(a.estimate == c.estimate);

    opts.threads = 3;
    const auto d = sim::simulate_coverage(2e-5, sellers, 0.01, kEnv, opts);
    CHECK(a.estimate == d.estimate);

    CHECK(a.seed == 2024);
    CHECK(a.trials == 5000);
    CHECK(std::abs(a.ci95_halfwidth -
                   1.96 * std::sqrt(a.estimate * (1.0 - a.estimate) / 5000.0)) < 1e-15);
}

TEST_CASE("empty union field is an error") {
    sim::SimOptions opts;
    opts.trials = 10;
    const std::vector<sim::SellerShare> zero_fraction = {{5e-5, 0.0}};
    CHECK_THROWS_AS(sim::simulate_coverage(0.0, zero_fraction, 0.01, kEnv, opts),
                    EmptyFieldError);
    CHECK_THROWS_AS(
        sim::simulate_coverage(0.0, std::span<const sim::SellerShare>{}, 0.01, kEnv, opts),
        EmptyFieldError);
}

TEST_CASE("precondition violations are rejected") {
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(sim::sample_ppp(1e-5, 0.0, rng), InvalidParameterError);
    CHECK_THROWS_AS(sim::sample_ppp(-1e-5, 100.0, rng), InvalidParameterError);

    sim::SimOptions opts;
    opts.trials = 0;
    CHECK_THROWS_AS(sim::simulate_coverage({1e-5, 0.0}, 0.01, kEnv, opts),
                    InvalidParameterError);
    opts.trials = 10;
    const std::vector<sim::SellerShare> bad_fraction = {{1e-5, 1.5}};
    CHECK_THROWS_AS(sim::simulate_coverage(1e-5, bad_fraction, 0.01, kEnv, opts),
                    InvalidParameterError);
    CHECK_THROWS_AS(sim::simulate_coverage({1e-5, 0.0}, 0.0, kEnv, opts),
                    InvalidParameterError);
}

TEST_CASE("automatic window radius") {
    CHECK(sim::auto_window_radius(1e-2) == 500.0);  // floor
    const double lam = 2e-5;
    CHECK(std::abs(sim::auto_window_radius(lam) - 10.0 / std::sqrt(kPi * lam)) < 1e-9);
}
