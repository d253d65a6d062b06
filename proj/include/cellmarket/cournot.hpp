#pragma once

#include <span>
#include <vector>

#include "cellmarket/types.hpp"

// Seller-side Cournot oligopoly: each seller chooses how much of its BS
// intensity to offer; the market price rises linearly with total supply.
namespace cellmarket::seller {

struct SellerEconomics {
    int seller_id;
    double intensity_cap;  // lambda_k, per m^2; quantities live in [0, cap]
    double power_price;    // a_k, currency per (W per m^2)
    double fixed_cost;     // d_k, currency
    double qos_constant;   // c_k from the seller's own threshold and epsilon

    void validate() const {
        if (!(intensity_cap > 0.0))
            throw InvalidParameterError("SellerEconomics: intensity cap must be positive");
        if (!(power_price > 0.0))
            throw InvalidParameterError("SellerEconomics: power price must be positive");
        if (!(qos_constant > 0.0))
            throw InvalidParameterError("SellerEconomics: qos constant must be positive");
    }
};

struct MarketParams {
    double base_price;      // theta
    double marginal_price;  // eta, must be positive

    void validate() const {
        if (!(marginal_price > 0.0))
            throw InvalidParameterError("MarketParams: marginal price must be positive");
    }
};

struct BestResponse {
    double quantity;
    bool stationary;      // true: first-order-condition solution on its branch;
                          // false: no in-region stationary point, best boundary used
    bool soc_satisfied;   // second derivative 2 eta - C_k'' negative at the returned point
    double profit;
    bool boundary_better; // some boundary point yields strictly higher profit
};

struct SolverOptions {
    double damping = 0.5;
    double tolerance = 1e-10;  // infinity-norm residual of y - BR(y)
    int max_iterations = 10000;
};

struct CournotEquilibrium {
    std::vector<double> quantities;  // y_k*, parallel to the seller list
    double total;                    // y*
    double price;                    // q* = theta + eta y*
    double residual;
    int iterations;
    std::vector<bool> soc_satisfied;
};

/// Operating cost a_k S_k(y_k) + d_k. Throws when y_k exceeds the cap.
double seller_cost(double y_k, const SellerEconomics& seller, const RadioEnv& env);

/// dC_k/dy_k: constant a_k (p_max + p_c) while the power cap binds, then
/// a_k (1 - alpha/2) c_k y^{-alpha/2} + a_k p_c. The branch point itself
/// belongs to the convex branch.
double marginal_cost(double y_k, const SellerEconomics& seller, const RadioEnv& env);

/// Q(y) = theta + eta y.
double market_price(double total_quantity, const MarketParams& market);

/// F_k = y_k Q(y_k + y_others) - C_k(y_k).
double seller_profit(double y_k, double y_others_total, const SellerEconomics& seller,
                     const MarketParams& market, const RadioEnv& env);

/// Quantity solving the first-order condition on its branch: the capped
/// branch in closed form, the convex branch by bracketed root-finding.
/// In-region stationary candidates are compared by profit; when none exists
/// the boundary points {0, lambda_th, cap} are compared instead. Diagnostics
/// report whether the returned point is stationary, whether the second-order
/// condition holds there, and whether a boundary would beat it.
BestResponse best_response(double y_others_total, const SellerEconomics& seller,
                           const MarketParams& market, const RadioEnv& env);

/// Damped sequential best-response iteration from y_k = cap/2 until the
/// residual drops below tolerance. Throws NonConvergenceError (with the last
/// residual and an oscillation flag) when the iteration stalls.
CournotEquilibrium cournot_equilibrium(std::span<const SellerEconomics> sellers,
                                       const MarketParams& market, const RadioEnv& env,
                                       const SolverOptions& opts = {});

}  // namespace cellmarket::seller
