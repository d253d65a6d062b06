#pragma once

#include <vector>

#include "cellmarket/types.hpp"

// Buyer-side purchase optimizer: minimize the cost of bought BS intensity
// subject to the QoS feasibility bound, as a fractional knapsack.
namespace cellmarket::buyer {

struct SellerOffer {
    int seller_id;
    double intensity;   // lambda_k, per m^2
    double ask_price;   // q_k for the whole of seller k's infrastructure
};

struct KnapsackInstance {
    std::vector<SellerOffer> offers;
    double capacity;  // extra intensity the buyer must acquire, per m^2
};

struct KnapsackSolution {
    std::vector<double> fractions;  // x_k, parallel to instance.offers
    double total_cost;
    double filled_weight;
    bool feasible;
};

/// Capacity from the QoS bound: max(0, (1-eps)/eps (gamma - lambda0(1-beta)) - lambda0).
KnapsackInstance build_instance(double lambda0, const RadioEnv& env, double power,
                                double epsilon, std::vector<SellerOffer> offers);

/// Greedy fractional knapsack: sort by price per intensity ascending (ties by
/// seller id), buy whole sellers while they fit, finish with one fractional
/// purchase. When even buying everything cannot fill the capacity the result
/// is flagged infeasible and carries the all-ones best effort.
KnapsackSolution greedy_solve(const KnapsackInstance& instance);

/// Exact LP optimum by enumerating all vertices with at most one fractional
/// variable. Test oracle; limited to 12 offers.
KnapsackSolution lp_oracle(const KnapsackInstance& instance);

}  // namespace cellmarket::buyer
