#include "cellmarket/cournot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cellmarket/stogeo.hpp"

namespace cellmarket::seller {

namespace {

double branch_threshold(const SellerEconomics& seller, const RadioEnv& env) {
    return stogeo::areal_power_threshold(env, seller.qos_constant);
}

// C_k'' on the branch containing y (lambda_th belongs to the convex branch).
double cost_second_derivative(double y, const SellerEconomics& seller, const RadioEnv& env) {
    const double lambda_th = branch_threshold(seller, env);
    if (y < lambda_th || y <= 0.0) return 0.0;
    const double a = env.alpha;
    return seller.power_price * seller.qos_constant * a * (a - 2.0) / 4.0 *
           std::pow(y, -0.5 * a - 1.0);
}

// Stationarity deficit on the convex branch. Roots of
//   h(y) = 2 y + y_others - V y^{-alpha/2} - W
// solve the implicit best-response equation; h = -F_k' / eta.
double convex_deficit(double y, double y_others, double v_k, double w_k, double half_alpha) {
    return 2.0 * y + y_others - v_k * std::pow(y, -half_alpha) - w_k;
}

double bisect_root(double lo, double hi, double f_lo, const auto& f) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double seller_cost(double y_k, const SellerEconomics& seller, const RadioEnv& env) {
    seller.validate();
    if (!(y_k >= 0.0)) throw InvalidParameterError("seller_cost: quantity must be nonnegative");
    if (y_k > seller.intensity_cap)
        throw InvalidParameterError("seller_cost: quantity exceeds the seller's intensity cap");
    const double s_k = stogeo::areal_power(y_k, env, seller.qos_constant).s_k;
    return seller.power_price * s_k + seller.fixed_cost;
}

double marginal_cost(double y_k, const SellerEconomics& seller, const RadioEnv& env) {
    seller.validate();
    if (!(y_k > 0.0)) throw InvalidParameterError("marginal_cost: quantity must be positive");
    const double lambda_th = branch_threshold(seller, env);
    if (y_k < lambda_th) return seller.power_price * (env.p_max + env.p_circuit);
    return seller.power_price * (1.0 - 0.5 * env.alpha) * seller.qos_constant *
               std::pow(y_k, -0.5 * env.alpha) +
           seller.power_price * env.p_circuit;
}

double market_price(double total_quantity, const MarketParams& market) {
    market.validate();
    if (!(total_quantity >= 0.0))
        throw InvalidParameterError("market_price: quantity must be nonnegative");
    return market.base_price + market.marginal_price * total_quantity;
}

double seller_profit(double y_k, double y_others_total, const SellerEconomics& seller,
                     const MarketParams& market, const RadioEnv& env) {
    if (!(y_others_total >= 0.0))
        throw InvalidParameterError("seller_profit: quantities must be nonnegative");
    return y_k * market_price(y_k + y_others_total, market) - seller_cost(y_k, seller, env);
}

BestResponse best_response(double y_others_total, const SellerEconomics& seller,
                           const MarketParams& market, const RadioEnv& env) {
    seller.validate();
    market.validate();
    env.validate();
    if (!(y_others_total >= 0.0))
        throw InvalidParameterError("best_response: rival quantity must be nonnegative");

    const double cap = seller.intensity_cap;
    const double lambda_th = branch_threshold(seller, env);
    const double eta = market.marginal_price;
    const double theta = market.base_price;
    const double a_k = seller.power_price;
    const double half_alpha = 0.5 * env.alpha;

    auto profit_at = [&](double y) {
        return seller_profit(y, y_others_total, seller, market, env);
    };

    std::vector<double> candidates;

    // Capped (linear-cost) branch: y = (U - y_others)/2 in closed form.
    const double u_k = (a_k * (env.p_max + env.p_circuit) - theta) / eta;
    const double y_linear = 0.5 * (u_k - y_others_total);
    if (y_linear >= 0.0 && y_linear <= std::min(lambda_th, cap)) candidates.push_back(y_linear);

    // Convex branch: bracketed root-finding on [lambda_th, cap]. A geometric
    // scan catches every sign change, so both roots of the concave-convex
    // profit are found when they exist.
    if (lambda_th < cap) {
        const double v_k = a_k * (1.0 - half_alpha) * seller.qos_constant / eta;
        const double w_k = (a_k * env.p_circuit - theta) / eta;
        auto h = [&](double y) {
            return convex_deficit(y, y_others_total, v_k, w_k, half_alpha);
        };
        const int segments = 64;
        const double ratio = cap / lambda_th;
        double prev_y = lambda_th;
        double prev_h = h(prev_y);
        for (int i = 1; i <= segments; ++i) {
            const double y =
                lambda_th * std::pow(ratio, static_cast<double>(i) / segments);
            const double h_y = h(y);
            if (prev_h == 0.0) {
                candidates.push_back(prev_y);
            } else if ((prev_h < 0.0) != (h_y < 0.0)) {
                candidates.push_back(bisect_root(prev_y, y, prev_h, h));
            }
            prev_y = y;
            prev_h = h_y;
        }
        if (prev_h == 0.0) candidates.push_back(prev_y);
    }

    BestResponse out{};
    if (!candidates.empty()) {
        double best_y = candidates.front();
        double best_profit = profit_at(best_y);
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            const double p = profit_at(candidates[i]);
            if (p > best_profit) {
                best_profit = p;
                best_y = candidates[i];
            }
        }
        out.quantity = best_y;
        out.stationary = true;
        out.profit = best_profit;
    } else {
        // No stationary point in range: compare the boundaries by profit.
        const double boundary[3] = {0.0, std::min(lambda_th, cap), cap};
        double best_y = boundary[0];
        double best_profit = profit_at(best_y);
        for (double y : {boundary[1], boundary[2]}) {
            const double p = profit_at(y);
            if (p > best_profit) {
                best_profit = p;
                best_y = y;
            }
        }
        out.quantity = best_y;
        out.stationary = false;
        out.profit = best_profit;
    }

    out.soc_satisfied =
        2.0 * eta - cost_second_derivative(out.quantity, seller, env) < 0.0;
    out.boundary_better = false;
    for (double y : {0.0, std::min(lambda_th, cap), cap}) {
        if (profit_at(y) > out.profit + 1e-15 * std::abs(out.profit)) {
            out.boundary_better = true;
            break;
        }
    }
    return out;
}

CournotEquilibrium cournot_equilibrium(std::span<const SellerEconomics> sellers,
                                       const MarketParams& market, const RadioEnv& env,
                                       const SolverOptions& opts) {
    if (sellers.empty())
        throw InvalidParameterError("cournot_equilibrium: at least one seller required");
    market.validate();
    env.validate();
    for (const auto& s : sellers) s.validate();

    const std::size_t n = sellers.size();
    std::vector<double> y(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = 0.5 * sellers[k].intensity_cap;
        total += y[k];
    }

    std::vector<double> prev(y), prev2(y);
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    bool oscillating = false;

    for (iter = 1; iter <= opts.max_iterations; ++iter) {
        prev2 = prev;
        prev = y;
        for (std::size_t k = 0; k < n; ++k) {
            const double others = total - y[k];
            const double br = best_response(others, sellers[k], market, env).quantity;
            const double updated = std::clamp(
                y[k] + opts.damping * (br - y[k]), 0.0, sellers[k].intensity_cap);
            total += updated - y[k];
            y[k] = updated;
        }
        total = 0.0;  // refresh against accumulation drift
        for (double v : y) total += v;

        residual = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double others = total - y[k];
            const double br = best_response(others, sellers[k], market, env).quantity;
            residual = std::max(residual, std::abs(y[k] - br));
        }
        if (residual < opts.tolerance) break;

        if (iter >= 4) {
            double cycle = 0.0, step = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                cycle = std::max(cycle, std::abs(y[k] - prev2[k]));
                step = std::max(step, std::abs(y[k] - prev[k]));
            }
            if (cycle < 1e-15 && step > opts.tolerance) {
                oscillating = true;
                break;
            }
        }
    }

    if (residual >= opts.tolerance) {
        throw NonConvergenceError(
            "cournot_equilibrium: residual " + std::to_string(residual) + " after " +
                std::to_string(iter) + " iterations" + (oscillating ? " (period-2 oscillation)" : ""),
            iter, residual, oscillating);
    }

    CournotEquilibrium eq;
    eq.quantities = y;
    eq.total = total;
    eq.price = market_price(total, market);
    eq.residual = residual;
    eq.iterations = iter;
    eq.soc_satisfied.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double others = total - y[k];
        eq.soc_satisfied[k] = best_response(others, sellers[k], market, env).soc_satisfied;
    }
    return eq;
}

}  // namespace cellmarket::seller
