#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellmarket/scenario.hpp"

// Parameter sweeps over the analytic and simulation modules, with
// deterministic CSV/JSON serialization suitable for golden-file comparison.
namespace cellmarket::io {

struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;  // number of points

    std::vector<double> values() const;
};

/// Parse "name=start:stop:steps".
AxisSpec parse_axis_spec(const std::string& text);

struct SweepOptions {
    std::uint64_t seed = 1;
    long trials = 10000;
    double tol = 1e-10;
    int threads = 1;
};

struct SweepResult {
    std::string command;
    std::string axis_name;
    std::vector<double> axis;
    std::vector<std::string> series_names;
    std::vector<std::vector<double>> series;  // [series][point]
    std::vector<std::string> errors;          // per point, empty when none
    nlohmann::json metadata;
};

inline const std::vector<std::string> kSweepCommands = {
    "coverage", "tradeoff", "areal-power", "knapsack", "cournot", "simulate"};

/// Evaluate one command over an axis. Per-point module errors are recorded
/// inline (value columns become NaN) rather than aborting the sweep.
SweepResult run_sweep(const ScenarioConfig& config, const std::string& command,
                      const std::optional<AxisSpec>& axis, const SweepOptions& opts);

/// %.17g, C locale; round-trips doubles exactly.
std::string format_double(double v);

std::string to_csv(const SweepResult& result);
nlohmann::json to_json(const SweepResult& result);

/// Write <out_dir>/<command>.csv and .json; returns the two paths.
std::vector<std::string> write_outputs(const SweepResult& result, const std::string& out_dir);

}  // namespace cellmarket::io
