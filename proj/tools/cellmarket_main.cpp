#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cellmarket/sweep.hpp"
#include "cellmarket/version.hpp"

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::string axis_text;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;
    bool trials_set = false;
    double tol = 1e-10;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--axis", args.axis_text, "Sweep axis, name=start:stop:steps");
    cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", args.seed, "RNG seed (default: scenario sim.seed)")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--trials", args.trials, "Monte Carlo trials (default: scenario sim.trials)")
        ->each([&](const std::string&) { args.trials_set = true; });
    cmd->add_option("--tol", args.tol, "Equilibrium residual tolerance")
        ->capture_default_str();
    cmd->add_option("--threads", args.threads, "Worker threads for simulation trials")
        ->capture_default_str();
}

int run(const std::string& command, const CommonArgs& args) {
    using namespace cellmarket;
    try {
        const io::ScenarioConfig config = io::load_scenario(args.scenario_path);
        io::SweepOptions opts;
        opts.seed = args.seed_set ? args.seed : config.seed;
        opts.trials = args.trials_set ? args.trials : config.trials;
        opts.tol = args.tol;
        opts.threads = args.threads;

        std::optional<io::AxisSpec> axis;
        if (!args.axis_text.empty()) axis = io::parse_axis_spec(args.axis_text);

        const io::SweepResult result = io::run_sweep(config, command, axis, opts);
        const auto paths = io::write_outputs(result, args.out_dir);

        std::size_t failed = 0;
        for (const auto& e : result.errors)
            if (!e.empty()) ++failed;
        std::cout << command << ": " << result.axis.size() << " points ("
                  << result.axis.size() - failed << " ok, " << failed << " failed), wrote "
                  << paths[0] << " and " << paths[1] << "\n";
        return 0;
    } catch (const NonConvergenceError& e) {
        std::cerr << "error (nonconvergence): " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        std::cerr << "error (quadrature): " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infrastructure-sharing market analysis: coverage, power trade-offs, "
                 "purchase optimization, and seller competition over scenario files"};
    app.set_version_flag("--version", cellmarket::kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    const char* commands[] = {"coverage", "tradeoff", "areal-power",
                              "knapsack", "cournot",  "simulate"};
    const char* descriptions[] = {
        "Coverage probability vs buyer intensity, with and without sharing",
        "Minimum transmit power and cell radius vs buyer intensity",
        "Areal power consumption vs BS intensity (first seller's QoS constant)",
        "Optimal purchase fractions vs outage tolerance",
        "Cournot equilibrium quantities and price vs a market parameter",
        "Monte Carlo coverage vs buyer intensity, with analytic reference"};
    for (int i = 0; i < 6; ++i) add_common(app.add_subcommand(commands[i], descriptions[i]), args);

    CLI11_PARSE(app, argc, argv);

    for (const char* name : commands)
        if (app.got_subcommand(name)) return run(name, args);
    return 1;
}
