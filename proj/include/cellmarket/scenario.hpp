#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellmarket/cournot.hpp"
#include "cellmarket/knapsack.hpp"
#include "cellmarket/types.hpp"

// Declarative scenario files. User units: dBm for powers, dB for SINR
// thresholds, BS per km^2 for intensities; conversions to SI happen here and
// nowhere else.
namespace cellmarket::io {

struct SellerConfig {
    double lambda_per_km2;  // full BS intensity
    double ask_price;       // q_k, price of the whole infrastructure
    double power_price;     // a_k, currency per (W per km^2)
    double fixed_cost;      // d_k
    double threshold_db;    // seller's own SINR threshold T_k
};

struct ScenarioConfig {
    // environment
    double alpha = 0.0;
    double noise_dbm = 0.0;
    double threshold_db = 0.0;
    double p_max_dbm = 0.0;
    double p_circuit_dbm = 0.0;
    // buyer
    double lambda0_per_km2 = 0.0;
    double epsilon = 0.0;
    // sellers
    std::vector<SellerConfig> sellers;
    // market
    double theta = 0.0;
    double eta_per_km2 = 0.0;  // marginal price per (BS per km^2)
    // simulation
    long trials = 0;
    std::uint64_t seed = 0;
    double window_radius_m = 0.0;  // 0 selects the automatic window
};

/// Load and validate a scenario. Throws ParseError for malformed JSON (with
/// position context) and ValidationError listing every violated invariant.
ScenarioConfig load_scenario(const std::string& path);

/// Parse from a JSON string (same validation as load_scenario).
ScenarioConfig parse_scenario(const std::string& json_text);

/// Serialize with full round-trip precision; parse(serialize(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// FNV-1a hash of the canonical serialization; stamped on every output row.
std::uint64_t scenario_hash(const ScenarioConfig& config);
std::string scenario_hash_hex(const ScenarioConfig& config);

// SI views ---------------------------------------------------------------

RadioEnv radio_env(const ScenarioConfig& config);
double lambda0_si(const ScenarioConfig& config);

/// Knapsack offers in SI units, seller ids = position in the file (1-based).
std::vector<buyer::SellerOffer> seller_offers_si(const ScenarioConfig& config);

/// Seller economics in SI units; qos_constant derived from the seller's own
/// threshold and the scenario epsilon. Throws InfeasibleQosError when that
/// QoS is unreachable.
std::vector<seller::SellerEconomics> seller_economics_si(const ScenarioConfig& config);

seller::MarketParams market_params_si(const ScenarioConfig& config);

}  // namespace cellmarket::io
