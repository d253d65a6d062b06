#include "cellmarket/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cellmarket/stogeo.hpp"

namespace cellmarket::buyer {

namespace {

void validate_offers(const std::vector<SellerOffer>& offers) {
    for (const auto& o : offers) {
        if (!(o.intensity > 0.0))
            throw InvalidParameterError("knapsack: offer intensity must be positive");
        if (!(o.ask_price >= 0.0))
            throw InvalidParameterError("knapsack: ask price must be nonnegative");
    }
}

KnapsackSolution all_ones_best_effort(const KnapsackInstance& instance) {
    KnapsackSolution sol;
    sol.fractions.assign(instance.offers.size(), 1.0);
    sol.total_cost = 0.0;
    sol.filled_weight = 0.0;
    for (const auto& o : instance.offers) {
        sol.total_cost += o.ask_price;
        sol.filled_weight += o.intensity;
    }
    sol.feasible = false;
    return sol;
}

}  // namespace

KnapsackInstance build_instance(double lambda0, const RadioEnv& env, double power,
                                double epsilon, std::vector<SellerOffer> offers) {
    validate_offers(offers);
    const double required = stogeo::qos_intensity_threshold(lambda0, env, power, epsilon);
    KnapsackInstance instance;
    instance.offers = std::move(offers);
    instance.capacity = std::max(0.0, required - lambda0);
    return instance;
}

KnapsackSolution greedy_solve(const KnapsackInstance& instance) {
    validate_offers(instance.offers);
    const std::size_t n = instance.offers.size();
    KnapsackSolution sol;
    sol.fractions.assign(n, 0.0);
    sol.total_cost = 0.0;
    sol.filled_weight = 0.0;
    sol.feasible = true;
    if (instance.capacity <= 0.0) return sol;

    double supply = 0.0;
    for (const auto& o : instance.offers) supply += o.intensity;
    if (supply < instance.capacity) return all_ones_best_effort(instance);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& oa = instance.offers[a];
        const auto& ob = instance.offers[b];
        const double ra = oa.ask_price / oa.intensity;
        const double rb = ob.ask_price / ob.intensity;
        if (ra != rb) return ra < rb;
        return oa.seller_id < ob.seller_id;
    });

    double residual = instance.capacity;
    for (std::size_t idx : order) {
        const auto& o = instance.offers[idx];
        if (o.intensity <= residual) {
            sol.fractions[idx] = 1.0;
            sol.total_cost += o.ask_price;
            sol.filled_weight += o.intensity;
            residual -= o.intensity;
            if (residual <= 0.0) break;
        } else {
            const double x = residual / o.intensity;
            sol.fractions[idx] = x;
            sol.total_cost += o.ask_price * x;
            sol.filled_weight += o.intensity * x;
            break;
        }
    }
    return sol;
}

KnapsackSolution lp_oracle(const KnapsackInstance& instance) {
    validate_offers(instance.offers);
    const std::size_t n = instance.offers.size();
    if (n > 12) throw InstanceTooLargeError("lp_oracle: enumeration limited to 12 offers");

    KnapsackSolution best;
    best.fractions.assign(n, 0.0);
    best.total_cost = 0.0;
    best.filled_weight = 0.0;
    best.feasible = true;
    if (instance.capacity <= 0.0) return best;

    double supply = 0.0;
    for (const auto& o : instance.offers) supply += o.intensity;
    if (supply < instance.capacity) return all_ones_best_effort(instance);

    // Every vertex of {0 <= x <= 1, sum lambda x >= w} has at most one
    // fractional coordinate: a subset bought whole, possibly one partial
    // seller that meets the capacity exactly.
    double best_cost = std::numeric_limits<double>::infinity();
    const unsigned subsets = 1u << n;
    for (unsigned mask = 0; mask < subsets; ++mask) {
        double w = 0.0;
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                w += instance.offers[i].intensity;
                cost += instance.offers[i].ask_price;
            }
        }
        if (w >= instance.capacity) {
            if (cost < best_cost) {
                best_cost = cost;
                best.fractions.assign(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) best.fractions[i] = 1.0;
                best.total_cost = cost;
                best.filled_weight = w;
            }
            continue;
        }
        const double gap = instance.capacity - w;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) continue;
            const auto& o = instance.offers[j];
            if (o.intensity < gap) continue;  // cannot close the gap alone
            const double xj = gap / o.intensity;
            const double c = cost + o.ask_price * xj;
            if (c < best_cost) {
                best_cost = c;
                best.fractions.assign(n, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) best.fractions[i] = 1.0;
                best.fractions[j] = xj;
                best.total_cost = c;
                best.filled_weight = w + o.intensity * xj;
            }
        }
    }
    return best;
}

}  // namespace cellmarket::buyer
