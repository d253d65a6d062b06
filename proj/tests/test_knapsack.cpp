#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cellmarket/knapsack.hpp"
#include "cellmarket/stogeo.hpp"

using namespace cellmarket;
namespace kp = cellmarket::buyer;

namespace {

const RadioEnv kEnv{4.0, 1e-15, 31.622776601683793, 0.01, 0.001};
const double kLambda0 = 2e-5;

kp::KnapsackInstance instance_of(std::vector<kp::SellerOffer> offers, double capacity) {
    kp::KnapsackInstance inst;
    inst.offers = std::move(offers);
    inst.capacity = capacity;
    return inst;
}

}  // namespace

TEST_CASE("build_instance clamps and inverts the QoS bound") {
    std::vector<kp::SellerOffer> offers = {{1, 2e-5, 1.0}};

    // Loose QoS: own intensity already suffices, capacity clamps to zero.
    const auto loose = kp::build_instance(kLambda0, kEnv, 0.01, 0.9999, offers);
    CHECK(loose.capacity == 0.0);

    // Tight QoS: at the capacity boundary the approximate coverage meets it.
    const auto tight = kp::build_instance(kLambda0, kEnv, 0.01, 0.5, offers);
    REQUIRE(tight.capacity > 0.0);
    const auto cov = stogeo::coverage_approx({kLambda0, tight.capacity}, 0.01, kEnv);
    CHECK(std::abs(cov.value / 0.5 - 1.0) < 1e-9);

    // Capacity shrinks as the outage tolerance grows.
    double prev = tight.capacity;
    for (double eps : {0.6, 0.7, 0.8, 0.9}) {
        const double cap = kp::build_instance(kLambda0, kEnv, 0.01, eps, offers).capacity;
        CHECK(cap < prev);
        prev = cap;
    }
}

TEST_CASE("greedy on degenerate instances") {
    const auto empty = kp::greedy_solve(instance_of({{1, 2.0, 4.0}, {2, 1.0, 1.0}}, 0.0));
    CHECK(empty.feasible);
    CHECK(empty.total_cost == 0.0);
    CHECK(std::all_of(empty.fractions.begin(), empty.fractions.end(),
                      [](double x) { return x == 0.0; }));

    // Single seller larger than the capacity: one fractional purchase.
    const auto single = kp::greedy_solve(instance_of({{1, 5.0, 3.0}}, 2.0));
    CHECK(single.feasible);
    CHECK(std::abs(single.fractions[0] - 0.4) < 1e-15);
    CHECK(std::abs(single.total_cost - 1.2) < 1e-15);
}

TEST_CASE("worked three-seller instance, confirmed by the exact oracle") {
    const auto inst = instance_of({{1, 2.0, 4.0}, {2, 1.0, 1.0}, {3, 3.0, 9.0}}, 4.0);
    const auto greedy = kp::greedy_solve(inst);
    CHECK(greedy.feasible);
    CHECK(greedy.fractions[0] == 1.0);
    CHECK(greedy.fractions[1] == 1.0);
    CHECK(std::abs(greedy.fractions[2] - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(greedy.total_cost - 8.0) < 1e-12);
    CHECK(std::abs(greedy.filled_weight - 4.0) < 1e-12);

    const auto exact = kp::lp_oracle(inst);
    CHECK(std::abs(exact.total_cost - greedy.total_cost) < 1e-12);
}

TEST_CASE("infeasible demand returns a flagged all-ones best effort") {
    const auto inst = instance_of({{1, 1.0, 2.0}, {2, 2.0, 1.0}}, 5.0);
    const auto greedy = kp::greedy_solve(inst);
    CHECK_FALSE(greedy.feasible);
    CHECK(greedy.fractions == std::vector<double>{1.0, 1.0});
    CHECK(greedy.total_cost == 3.0);
    CHECK(greedy.filled_weight == 3.0);

    const auto exact = kp::lp_oracle(inst);
    CHECK_FALSE(exact.feasible);
    CHECK(exact.total_cost == greedy.total_cost);
}

TEST_CASE("greedy equals the LP oracle on random instances") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> lam(0.5, 5.0);
    std::uniform_real_distribution<double> price(0.0, 10.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> n_offers(1, 6);

    for (int it = 0; it < 1000; ++it) {
        std::vector<kp::SellerOffer> offers;
        const int n = n_offers(rng);
        double supply = 0.0;
        for (int i = 0; i < n; ++i) {
            offers.push_back({i + 1, lam(rng), price(rng)});
            supply += offers.back().intensity;
        }
        const auto inst = instance_of(offers, 1.2 * supply * u(rng));
        const auto greedy = kp::greedy_solve(inst);
        const auto exact = kp::lp_oracle(inst);
        CHECK(greedy.feasible == exact.feasible);
        CHECK(std::abs(greedy.total_cost - exact.total_cost) <= 1e-9);

        // Structure: at most one strictly fractional purchase; a feasible fill
        // covers the capacity without overshooting past one whole seller.
        int fractional = 0;
        for (double x : greedy.fractions)
            if (x > 0.0 && x < 1.0) ++fractional;
        CHECK(fractional <= 1);
        double max_lambda = 0.0;
        for (const auto& o : offers) max_lambda = std::max(max_lambda, o.intensity);
        CHECK(greedy.filled_weight <= inst.capacity + max_lambda);
        if (greedy.feasible) CHECK(greedy.filled_weight >= inst.capacity - 1e-12 * supply);

        // Ratio ordering: cheaper-per-intensity sellers are exhausted before
        // pricier ones are touched.
        if (greedy.feasible) {
            for (std::size_t i = 0; i < offers.size(); ++i) {
                for (std::size_t j = 0; j < offers.size(); ++j) {
                    const double ri = offers[i].ask_price / offers[i].intensity;
                    const double rj = offers[j].ask_price / offers[j].intensity;
                    if (ri < rj && greedy.fractions[j] > 0.0) CHECK(greedy.fractions[i] == 1.0);
                }
            }
        }
    }
}

TEST_CASE("equal price-per-intensity ties cost the same in any completion") {
    const auto inst =
        instance_of({{1, 1.0, 2.0}, {2, 2.0, 4.0}, {3, 4.0, 8.0}}, 3.5);
    const auto greedy = kp::greedy_solve(inst);
    const auto exact = kp::lp_oracle(inst);
    CHECK(std::abs(greedy.total_cost - 7.0) < 1e-12);  // 2 per unit, 3.5 units
    CHECK(std::abs(greedy.total_cost - exact.total_cost) < 1e-12);
}

TEST_CASE("total purchased fraction shrinks as the tolerance grows") {
    const std::vector<kp::SellerOffer> offers = {
        {1, 2e-5, 1.0}, {2, 2e-5, 1.0}, {3, 2e-5, 1.0}, {4, 2e-5, 1.0}, {5, 2e-5, 1.0}};
    double prev = 1e300;
    for (double eps = 0.40; eps <= 0.99; eps += 0.01) {
        const auto inst = kp::build_instance(kLambda0, kEnv, 0.01, eps, offers);
        const auto sol = kp::greedy_solve(inst);
        double total = 0.0;
        for (double x : sol.fractions) total += x;
        CHECK(total <= prev + 1e-12);
        prev = total;
    }
}

TEST_CASE("oracle rejects oversized instances") {
    std::vector<kp::SellerOffer> offers;
    for (int i = 0; i < 13; ++i) offers.push_back({i + 1, 1.0, 1.0});
    CHECK_THROWS_AS(kp::lp_oracle(instance_of(offers, 5.0)), InstanceTooLargeError);
}
