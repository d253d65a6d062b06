#include "cellmarket/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cellmarket/stogeo.hpp"
#include "cellmarket/units.hpp"

namespace cellmarket::io {

using nlohmann::json;

namespace {

// Pulls a numeric field, recording a violation instead of throwing so a
// single pass reports everything wrong with the file.
double require_number(const json& obj, const std::string& context, const std::string& key,
                      std::vector<std::string>& violations) {
    if (!obj.contains(key)) {
        violations.push_back("missing field " + context + "." + key);
        return 0.0;
    }
    if (!obj[key].is_number()) {
        violations.push_back("field " + context + "." + key + " must be a number");
        return 0.0;
    }
    return obj[key].get<double>();
}

void check(bool ok, const std::string& message, std::vector<std::string>& violations) {
    if (!ok) violations.push_back(message);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }

    std::vector<std::string> violations;
    ScenarioConfig c;

    if (!root.is_object()) {
        throw ValidationError({"scenario root must be a JSON object"});
    }
    for (const char* section : {"env", "buyer", "market", "sim"}) {
        if (!root.contains(section) || !root[section].is_object())
            violations.push_back(std::string("missing section ") + section);
    }
    if (!root.contains("sellers") || !root["sellers"].is_array() || root["sellers"].empty())
        violations.push_back("missing section sellers (nonempty array required)");
    if (!violations.empty()) throw ValidationError(violations);

    const json& env = root["env"];
    c.alpha = require_number(env, "env", "alpha", violations);
    c.noise_dbm = require_number(env, "env", "noise_dbm", violations);
    c.threshold_db = require_number(env, "env", "threshold_db", violations);
    c.p_max_dbm = require_number(env, "env", "p_max_dbm", violations);
    c.p_circuit_dbm = require_number(env, "env", "p_circuit_dbm", violations);

    const json& buyer = root["buyer"];
    c.lambda0_per_km2 = require_number(buyer, "buyer", "lambda0_per_km2", violations);
    c.epsilon = require_number(buyer, "buyer", "epsilon", violations);

    int i = 0;
    for (const auto& s : root["sellers"]) {
        const std::string ctx = "sellers[" + std::to_string(i) + "]";
        SellerConfig sc;
        sc.lambda_per_km2 = require_number(s, ctx, "lambda_per_km2", violations);
        sc.ask_price = require_number(s, ctx, "ask_price", violations);
        sc.power_price = require_number(s, ctx, "power_price", violations);
        sc.fixed_cost = require_number(s, ctx, "fixed_cost", violations);
        sc.threshold_db = require_number(s, ctx, "threshold_db", violations);
        c.sellers.push_back(sc);
        ++i;
    }

    const json& market = root["market"];
    c.theta = require_number(market, "market", "theta", violations);
    c.eta_per_km2 = require_number(market, "market", "eta_per_km2", violations);

    const json& sim = root["sim"];
    const double trials = require_number(sim, "sim", "trials", violations);
    c.trials = static_cast<long>(trials);
    const double seed = require_number(sim, "sim", "seed", violations);
    c.seed = static_cast<std::uint64_t>(seed);
    c.window_radius_m = require_number(sim, "sim", "window_radius_m", violations);

    // Range invariants, all reported at once.
    check(c.alpha > 2.0, "env.alpha must exceed 2", violations);
    check(c.lambda0_per_km2 >= 0.0, "buyer.lambda0_per_km2 must be nonnegative", violations);
    check(c.epsilon > 0.0 && c.epsilon < 1.0, "buyer.epsilon must lie in (0, 1)", violations);
    i = 0;
    for (const auto& s : c.sellers) {
        const std::string ctx = "sellers[" + std::to_string(i) + "]";
        check(s.lambda_per_km2 > 0.0, ctx + ".lambda_per_km2 must be positive", violations);
        check(s.ask_price >= 0.0, ctx + ".ask_price must be nonnegative", violations);
        check(s.power_price > 0.0, ctx + ".power_price must be positive", violations);
        ++i;
    }
    check(c.eta_per_km2 > 0.0, "market.eta_per_km2 must be positive", violations);
    check(c.trials >= 1, "sim.trials must be at least 1", violations);
    check(c.window_radius_m >= 0.0, "sim.window_radius_m must be nonnegative", violations);

    if (!violations.empty()) throw ValidationError(violations);
    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioConfig& c) {
    json sellers = json::array();
    for (const auto& s : c.sellers) {
        sellers.push_back({{"lambda_per_km2", s.lambda_per_km2},
                           {"ask_price", s.ask_price},
                           {"power_price", s.power_price},
                           {"fixed_cost", s.fixed_cost},
                           {"threshold_db", s.threshold_db}});
    }
    const json root = {
        {"env",
         {{"alpha", c.alpha},
          {"noise_dbm", c.noise_dbm},
          {"threshold_db", c.threshold_db},
          {"p_max_dbm", c.p_max_dbm},
          {"p_circuit_dbm", c.p_circuit_dbm}}},
        {"buyer", {{"lambda0_per_km2", c.lambda0_per_km2}, {"epsilon", c.epsilon}}},
        {"sellers", sellers},
        {"market", {{"theta", c.theta}, {"eta_per_km2", c.eta_per_km2}}},
        {"sim",
         {{"trials", c.trials},
          {"seed", c.seed},
          {"window_radius_m", c.window_radius_m}}}};
    return root.dump(2);
}

std::uint64_t scenario_hash(const ScenarioConfig& config) {
    const std::string canonical = serialize_scenario(config);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string scenario_hash_hex(const ScenarioConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(scenario_hash(config)));
    return buf;
}

RadioEnv radio_env(const ScenarioConfig& c) {
    RadioEnv env{c.alpha, units::dbm_to_watts(c.noise_dbm), units::db_to_linear(c.threshold_db),
                 units::dbm_to_watts(c.p_max_dbm), units::dbm_to_watts(c.p_circuit_dbm)};
    env.validate();
    return env;
}

double lambda0_si(const ScenarioConfig& c) { return units::per_km2_to_per_m2(c.lambda0_per_km2); }

std::vector<buyer::SellerOffer> seller_offers_si(const ScenarioConfig& c) {
    std::vector<buyer::SellerOffer> offers;
    offers.reserve(c.sellers.size());
    int id = 1;
    for (const auto& s : c.sellers) {
        offers.push_back({id++, units::per_km2_to_per_m2(s.lambda_per_km2), s.ask_price});
    }
    return offers;
}

std::vector<seller::SellerEconomics> seller_economics_si(const ScenarioConfig& c) {
    const RadioEnv env = radio_env(c);
    std::vector<seller::SellerEconomics> out;
    out.reserve(c.sellers.size());
    int id = 1;
    for (const auto& s : c.sellers) {
        RadioEnv seller_env = env;
        seller_env.threshold = units::db_to_linear(s.threshold_db);
        seller::SellerEconomics econ;
        econ.seller_id = id++;
        econ.intensity_cap = units::per_km2_to_per_m2(s.lambda_per_km2);
        econ.power_price = s.power_price * 1e6;  // per (W/km^2) -> per (W/m^2)
        econ.fixed_cost = s.fixed_cost;
        econ.qos_constant = stogeo::power_law_constant(seller_env, c.epsilon);
        out.push_back(econ);
    }
    return out;
}

seller::MarketParams market_params_si(const ScenarioConfig& c) {
    return {c.theta, c.eta_per_km2 * 1e6};  // per (BS/km^2) -> per (BS/m^2)
}

}  // namespace cellmarket::io
