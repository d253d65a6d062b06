#include "cellmarket/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "cellmarket/ppp_sim.hpp"
#include "cellmarket/stogeo.hpp"
#include "cellmarket/units.hpp"
#include "cellmarket/version.hpp"

namespace cellmarket::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double total_seller_intensity_si(const ScenarioConfig& c) {
    double sum = 0.0;
    for (const auto& s : c.sellers) sum += units::per_km2_to_per_m2(s.lambda_per_km2);
    return sum;
}

struct SweepBuilder {
    SweepResult result;
    std::size_t point_count = 0;

    SweepBuilder(std::string command, const AxisSpec& axis,
                 const std::vector<std::string>& names) {
        result.command = std::move(command);
        result.axis_name = axis.name;
        result.axis = axis.values();
        result.series_names = names;
        point_count = result.axis.size();
        result.series.assign(names.size(), std::vector<double>(point_count, kNaN));
        result.errors.assign(point_count, "");
    }

    void set(std::size_t series, std::size_t point, double value) {
        result.series[series][point] = value;
    }
};

// Evaluates `fn(point)` for every axis point, recording thrown module errors
// inline so a sweep never aborts halfway.
template <class Fn>
void for_each_point(SweepBuilder& b, const Fn& fn) {
    for (std::size_t i = 0; i < b.point_count; ++i) {
        try {
            fn(i);
        } catch (const Error& e) {
            b.result.errors[i] = e.what();
        }
    }
}

SweepResult sweep_coverage(const ScenarioConfig& c, const AxisSpec& axis,
                           const SweepOptions&) {
    const RadioEnv env = radio_env(c);
    const double p = env.p_max;
    const double extra = total_seller_intensity_si(c);
    SweepBuilder b("coverage", axis,
                   {"pc_exact_own", "pc_approx_own", "pc_exact_shared", "pc_approx_shared",
                    "bound_own", "bound_shared"});
    for_each_point(b, [&](std::size_t i) {
        const double lambda0 = units::per_km2_to_per_m2(b.result.axis[i]);
        const IntensitySplit own{lambda0, 0.0};
        const IntensitySplit shared{lambda0, extra};
        b.set(0, i, stogeo::coverage_exact(own, p, env).value);
        b.set(1, i, stogeo::coverage_approx(own, p, env).value);
        b.set(2, i, stogeo::coverage_exact(shared, p, env).value);
        b.set(3, i, stogeo::coverage_approx(shared, p, env).value);
        b.set(4, i, stogeo::saturation_bound(own, env));
        b.set(5, i, stogeo::saturation_bound(shared, env));
    });
    b.result.metadata["lambda_extra_per_km2"] = units::per_m2_to_per_km2(extra);
    b.result.metadata["power_dbm"] = c.p_max_dbm;
    return b.result;
}

SweepResult sweep_tradeoff(const ScenarioConfig& c, const AxisSpec& axis, const SweepOptions&) {
    const RadioEnv env = radio_env(c);
    SweepBuilder b("tradeoff", axis, {"min_power_w", "min_power_dbm", "cell_radius_m"});
    for_each_point(b, [&](std::size_t i) {
        const double lambda0 = units::per_km2_to_per_m2(b.result.axis[i]);
        const double p = stogeo::min_power({lambda0, 0.0}, env, c.epsilon);
        b.set(0, i, p);
        b.set(1, i, units::watts_to_dbm(p));
        b.set(2, i, stogeo::cell_radius(lambda0, env, c.epsilon));
    });
    b.result.metadata["epsilon"] = c.epsilon;
    return b.result;
}

SweepResult sweep_areal_power(const ScenarioConfig& c, const AxisSpec& axis,
                              const SweepOptions&) {
    const RadioEnv env = radio_env(c);
    RadioEnv seller_env = env;
    seller_env.threshold = units::db_to_linear(c.sellers.front().threshold_db);
    const double c_k = stogeo::power_law_constant(seller_env, c.epsilon);
    SweepBuilder b("areal-power", axis, {"s_w_per_km2", "branch_convex"});
    for_each_point(b, [&](std::size_t i) {
        const double lambda = units::per_km2_to_per_m2(b.result.axis[i]);
        const auto pt = stogeo::areal_power(lambda, env, c_k);
        b.set(0, i, pt.s_k * 1e6);  // W/m^2 -> W/km^2
        b.set(1, i, pt.branch == ArealBranch::Convex ? 1.0 : 0.0);
    });
    b.result.metadata["seller_index"] = 1;
    b.result.metadata["qos_constant"] = c_k;
    b.result.metadata["lambda_th_per_km2"] =
        units::per_m2_to_per_km2(stogeo::areal_power_threshold(env, c_k));
    b.result.metadata["minimizer_per_km2"] =
        units::per_m2_to_per_km2(stogeo::areal_power_minimizer(env, c_k));
    return b.result;
}

SweepResult sweep_knapsack(const ScenarioConfig& c, const AxisSpec& axis, const SweepOptions&) {
    const RadioEnv env = radio_env(c);
    const double lambda0 = lambda0_si(c);
    const auto offers = seller_offers_si(c);
    std::vector<std::string> names = {"capacity_per_km2"};
    for (const auto& o : offers) names.push_back("x_" + std::to_string(o.seller_id));
    names.push_back("x_total");
    names.push_back("cost");
    names.push_back("feasible");
    SweepBuilder b("knapsack", axis, names);
    for_each_point(b, [&](std::size_t i) {
        const auto instance =
            buyer::build_instance(lambda0, env, env.p_max, b.result.axis[i], offers);
        const auto sol = buyer::greedy_solve(instance);
        b.set(0, i, units::per_m2_to_per_km2(instance.capacity));
        double total_x = 0.0;
        for (std::size_t k = 0; k < offers.size(); ++k) {
            b.set(1 + k, i, sol.fractions[k]);
            total_x += sol.fractions[k];
        }
        b.set(1 + offers.size(), i, total_x);
        b.set(2 + offers.size(), i, sol.total_cost);
        b.set(3 + offers.size(), i, sol.feasible ? 1.0 : 0.0);
    });
    b.result.metadata["power_dbm"] = c.p_max_dbm;
    return b.result;
}

SweepResult sweep_cournot(const ScenarioConfig& c, const AxisSpec& axis,
                          const SweepOptions& opts) {
    const RadioEnv env = radio_env(c);
    const auto sellers = seller_economics_si(c);
    const auto market0 = market_params_si(c);
    std::vector<std::string> names;
    for (const auto& s : sellers) names.push_back("y_" + std::to_string(s.seller_id) + "_per_km2");
    names.push_back("y_total_per_km2");
    names.push_back("price");
    names.push_back("residual");
    names.push_back("iterations");
    names.push_back("soc_all");
    SweepBuilder b("cournot", axis, names);
    seller::SolverOptions solver;
    solver.tolerance = opts.tol;
    for_each_point(b, [&](std::size_t i) {
        seller::MarketParams market = market0;
        if (b.result.axis_name == "theta")
            market.base_price = b.result.axis[i];
        else
            market.marginal_price = b.result.axis[i] * 1e6;  // axis in per-km2 units
        const auto eq = seller::cournot_equilibrium(sellers, market, env, solver);
        for (std::size_t k = 0; k < sellers.size(); ++k)
            b.set(k, i, units::per_m2_to_per_km2(eq.quantities[k]));
        b.set(sellers.size(), i, units::per_m2_to_per_km2(eq.total));
        b.set(sellers.size() + 1, i, eq.price);
        b.set(sellers.size() + 2, i, eq.residual);
        b.set(sellers.size() + 3, i, eq.iterations);
        const bool all_soc = std::all_of(eq.soc_satisfied.begin(), eq.soc_satisfied.end(),
                                         [](bool v) { return v; });
        b.set(sellers.size() + 4, i, all_soc ? 1.0 : 0.0);
    });
    b.result.metadata["tolerance"] = opts.tol;
    return b.result;
}

SweepResult sweep_simulate(const ScenarioConfig& c, const AxisSpec& axis,
                           const SweepOptions& opts) {
    const RadioEnv env = radio_env(c);
    const double p = env.p_max;
    std::vector<ppp::SellerShare> shares;
    for (const auto& s : c.sellers)
        shares.push_back({units::per_km2_to_per_m2(s.lambda_per_km2), 1.0});
    const double extra = total_seller_intensity_si(c);
    SweepBuilder b("simulate", axis,
                   {"pc_emp_own", "ci95_own", "pc_emp_shared", "ci95_shared", "pc_exact_own",
                    "pc_exact_shared"});
    for_each_point(b, [&](std::size_t i) {
        const double lambda0 = units::per_km2_to_per_m2(b.result.axis[i]);
        ppp::SimOptions sim;
        sim.trials = opts.trials;
        sim.threads = opts.threads;
        sim.window_radius = c.window_radius_m;
        sim.seed = ppp::substream_seed(opts.seed, 2 * i);
        const auto own = ppp::simulate_coverage(lambda0, {}, p, env, sim);
        sim.seed = ppp::substream_seed(opts.seed, 2 * i + 1);
        const auto shared = ppp::simulate_coverage(
            lambda0, std::span<const ppp::SellerShare>(shares), p, env, sim);
        b.set(0, i, own.estimate);
        b.set(1, i, own.ci95_halfwidth);
        b.set(2, i, shared.estimate);
        b.set(3, i, shared.ci95_halfwidth);
        b.set(4, i, stogeo::coverage_exact({lambda0, 0.0}, p, env).value);
        b.set(5, i, stogeo::coverage_exact({lambda0, extra}, p, env).value);
    });
    b.result.metadata["trials"] = opts.trials;
    b.result.metadata["window_radius_m"] = c.window_radius_m;
    return b.result;
}

AxisSpec default_axis(const ScenarioConfig& c, const std::string& command) {
    if (command == "coverage" || command == "tradeoff") return {"lambda0", 1.0, 200.0, 100};
    if (command == "simulate") return {"lambda0", 5.0, 100.0, 20};
    if (command == "areal-power") {
        const RadioEnv env = radio_env(c);
        RadioEnv seller_env = env;
        seller_env.threshold = units::db_to_linear(c.sellers.front().threshold_db);
        const double c_k = stogeo::power_law_constant(seller_env, c.epsilon);
        const double lo = units::per_m2_to_per_km2(stogeo::areal_power_threshold(env, c_k)) / 10.0;
        const double hi = units::per_m2_to_per_km2(stogeo::areal_power_minimizer(env, c_k)) * 10.0;
        return {"lambda_k", lo, hi, 200};
    }
    if (command == "knapsack") return {"epsilon", 0.30, 0.99, 139};
    if (command == "cournot")
        return {"eta", 0.5 * c.eta_per_km2, 3.0 * c.eta_per_km2, 26};
    throw InvalidParameterError("unknown sweep command: " + command);
}

void validate_axis(const std::string& command, const AxisSpec& axis) {
    auto expect = [&](std::initializer_list<const char*> names) {
        for (const char* n : names)
            if (axis.name == n) return;
        std::string allowed;
        for (const char* n : names) allowed += std::string(" ") + n;
        throw InvalidParameterError("command " + command + " supports axes:" + allowed +
                                    " (got " + axis.name + ")");
    };
    if (command == "coverage" || command == "tradeoff" || command == "simulate")
        expect({"lambda0"});
    else if (command == "areal-power")
        expect({"lambda_k"});
    else if (command == "knapsack")
        expect({"epsilon"});
    else if (command == "cournot")
        expect({"theta", "eta"});
    else
        throw InvalidParameterError("unknown sweep command: " + command);
}

}  // namespace

std::vector<double> AxisSpec::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 1)));
    if (steps <= 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < steps; ++i)
        out.push_back(start + (stop - start) * static_cast<double>(i) /
                                  static_cast<double>(steps - 1));
    return out;
}

AxisSpec parse_axis_spec(const std::string& text) {
    const auto eq = text.find('=');
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos ||
        eq > c1)
        throw InvalidParameterError("axis spec must be name=start:stop:steps, got: " + text);
    AxisSpec spec;
    spec.name = text.substr(0, eq);
    try {
        spec.start = std::stod(text.substr(eq + 1, c1 - eq - 1));
        spec.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        spec.steps = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw InvalidParameterError("axis spec must be name=start:stop:steps, got: " + text);
    }
    if (spec.steps < 1) throw InvalidParameterError("axis steps must be at least 1");
    return spec;
}

SweepResult run_sweep(const ScenarioConfig& config, const std::string& command,
                      const std::optional<AxisSpec>& axis, const SweepOptions& opts) {
    const AxisSpec spec = axis ? *axis : default_axis(config, command);
    validate_axis(command, spec);

    SweepResult result;
    if (command == "coverage")
        result = sweep_coverage(config, spec, opts);
    else if (command == "tradeoff")
        result = sweep_tradeoff(config, spec, opts);
    else if (command == "areal-power")
        result = sweep_areal_power(config, spec, opts);
    else if (command == "knapsack")
        result = sweep_knapsack(config, spec, opts);
    else if (command == "cournot")
        result = sweep_cournot(config, spec, opts);
    else if (command == "simulate")
        result = sweep_simulate(config, spec, opts);
    else
        throw InvalidParameterError("unknown sweep command: " + command);

    result.metadata["tool_version"] = kVersion;
    result.metadata["scenario_hash"] = scenario_hash_hex(config);
    result.metadata["command"] = command;
    result.metadata["axis"] = {{"name", spec.name},
                               {"start", spec.start},
                               {"stop", spec.stop},
                               {"steps", spec.steps},
                               {"default", !axis.has_value()}};
    result.metadata["seed"] = opts.seed;
    result.metadata["trials"] = opts.trials;
    result.metadata["tol"] = opts.tol;
    result.metadata["threads"] = opts.threads;
    return result;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        out += ch;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string to_csv(const SweepResult& r) {
    const std::string hash = r.metadata.at("scenario_hash").get<std::string>();
    std::string out = csv_escape(r.axis_name);
    for (const auto& name : r.series_names) out += "," + csv_escape(name);
    out += ",error,scenario_hash\n";
    for (std::size_t i = 0; i < r.axis.size(); ++i) {
        out += format_double(r.axis[i]);
        for (const auto& s : r.series) out += "," + format_double(s[i]);
        out += "," + csv_escape(r.errors[i]) + "," + hash + "\n";
    }
    return out;
}

nlohmann::json to_json(const SweepResult& r) {
    nlohmann::json series = nlohmann::json::object();
    for (std::size_t s = 0; s < r.series_names.size(); ++s) {
        nlohmann::json column = nlohmann::json::array();
        for (double v : r.series[s]) {
            if (std::isnan(v))
                column.push_back(nullptr);  // JSON has no NaN
            else
                column.push_back(v);
        }
        series[r.series_names[s]] = column;
    }
    return {{"command", r.command},
            {"axis", {{"name", r.axis_name}, {"values", r.axis}}},
            {"series", series},
            {"errors", r.errors},
            {"metadata", r.metadata}};
}

std::vector<std::string> write_outputs(const SweepResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string base = (std::filesystem::path(out_dir) / result.command).string();
    const std::string csv_path = base + ".csv";
    const std::string json_path = base + ".json";
    {
        std::ofstream csv(csv_path, std::ios::binary);
        csv << to_csv(result);
    }
    {
        std::ofstream js(json_path, std::ios::binary);
        js << to_json(result).dump(2) << "\n";
    }
    return {csv_path, json_path};
}

}  // namespace cellmarket::io
