#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftoc/ftoc.hpp"

namespace {

using namespace ftoc;

constexpr int kExitRuntimeFailure = 1;
constexpr int kExitConfigError = 2;

// xorshift-free deterministic doubles from mt19937_64 bits; avoids
// distribution implementations that differ across standard libraries.
struct DeterministicUniform {
    std::uint64_t state;

    explicit DeterministicUniform(std::uint64_t seed) : state(seed) {}

    double next01() {
        // splitmix64 step
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    double in_range(double lo, double hi) { return lo + (hi - lo) * next01(); }
};

int run_fuzzy_command(const std::string& config_path, std::optional<int> nodes_override,
                      std::optional<double> alpha_step_override, int threads,
                      bool interior_grid_upper, bool verbose) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
        if (nodes_override) cfg.problem.nodes_per_edge = *nodes_override;
        if (alpha_step_override) cfg.problem.alpha_levels = alpha_levels_from_step(*alpha_step_override);
        validate(cfg.problem);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    FuzzyTimeOptions options;
    options.threads = threads;
    options.interior_grid_upper = interior_grid_upper;
    options.solver = cfg.solver;

    try {
        const auto t0 = std::chrono::steady_clock::now();
        const FuzzyTimeResult result = fuzzy_optimal_time(cfg.problem, options);
        const auto t1 = std::chrono::steady_clock::now();

        std::ostringstream csv;
        write_membership_csv(csv, result);
        write_file(cfg.outputs.membership_csv, csv.str());
        write_file(cfg.outputs.summary, render_summary(cfg.problem, result));

        for (const std::string& warning : result.warnings) {
            std::cerr << "warning: " << warning << "\n";
        }
        if (verbose) {
            std::cout << render_summary(cfg.problem, result);
            const double seconds =
                std::chrono::duration<double>(t1 - t0).count();
            std::cout << "elapsed: " << format_fixed(seconds) << " s\n";
        }
        std::cout << "wrote " << cfg.outputs.membership_csv << " and " << cfg.outputs.summary
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitRuntimeFailure;
    }
}

int run_point_command(double sx, double sy, double tx, double ty,
                      const std::string& trajectory_path, bool oracle_check,
                      double sample_step, bool verbose) {
    const Vec2 start{sx, sy};
    const Vec2 target{tx, ty};
    try {
        const OptimalResult result = solve_point_to_point(start, target);
        std::cout << "time " << format_fixed(result.time) << "\n";
        std::cout << "start_sign " << value(result.plan.start_sign) << "\n";
        std::cout << "switches " << result.plan.num_switches << "\n";
        for (const Vec2& sp : result.plan.switch_points) {
            std::cout << "switch " << format_fixed(sp.x) << ' ' << format_fixed(sp.y) << "\n";
        }
        if (verbose) {
            std::cout << "plan " << plan_description(result.plan) << "\n";
            std::cout << "endpoint_error " << format_exact(result.endpoint_error) << "\n";
        }
        if (!trajectory_path.empty()) {
            const SimulationResult sim = simulate_plan(start, result.plan, sample_step);
            write_file(trajectory_path, render_trajectory(start, result.plan, sim));
            std::cout << "wrote " << trajectory_path << "\n";
        }
        if (oracle_check) {
            const OracleConfig cfg;
            const double oracle_time = brute_force_min_time(start, target, cfg);
            std::cout << "oracle " << format_fixed(oracle_time) << " diff "
                      << format_fixed(std::abs(oracle_time - result.time)) << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeFailure;
    }
}

int run_validate_command(int pairs, std::uint64_t seed, double box, OracleConfig cfg,
                         double agreement_tolerance, bool verbose) {
    DeterministicUniform rng(seed);
    double max_diff = 0.0;
    int failures = 0;
    try {
        for (int i = 0; i < pairs; ++i) {
            const Vec2 s{rng.in_range(-box, box), rng.in_range(-box, box)};
            const Vec2 t{rng.in_range(-box, box), rng.in_range(-box, box)};
            const OptimalResult solved = solve_point_to_point(s, t);
            const double oracle_time = brute_force_min_time(s, t, cfg);
            const double diff = std::abs(solved.time - oracle_time);
            max_diff = std::max(max_diff, diff);
            const bool ok = diff <= agreement_tolerance;
            if (!ok) ++failures;
            if (verbose || !ok) {
                std::cout << "pair " << i << " s=(" << format_fixed(s.x) << ", "
                          << format_fixed(s.y) << ") t=(" << format_fixed(t.x) << ", "
                          << format_fixed(t.y) << ") solver " << format_fixed(solved.time)
                          << " oracle " << format_fixed(oracle_time) << " diff "
                          << format_fixed(diff) << (ok ? "" : " MISMATCH") << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeFailure;
    }
    std::cout << "validated " << pairs << " pairs, max |solver - oracle| = "
              << format_fixed(max_diff) << "\n";
    if (failures > 0) {
        std::cout << "FAIL (" << failures << " pairs beyond " << format_fixed(agreement_tolerance)
                  << ")\n";
        return kExitRuntimeFailure;
    }
    std::cout << "PASS\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-time bang-bang control of the controlled pendulum with "
                 "fuzzy start and target states"};
    app.require_subcommand(1);

    // fuzzy
    auto* fuzzy = app.add_subcommand("fuzzy", "Compute the fuzzy optimal transfer time");
    std::string config_path;
    std::optional<int> nodes_override;
    std::optional<double> alpha_step_override;
    int threads = 0;
    bool interior_grid_upper = false;
    bool fuzzy_verbose = false;
    fuzzy->add_option("-c,--config", config_path, "JSON config file")->required();
    fuzzy->add_option("--nodes-per-edge", nodes_override, "Override discretization.nodes_per_edge");
    fuzzy->add_option("--alpha-step", alpha_step_override, "Override the alpha level step");
    fuzzy->add_option("--threads", threads, "Worker threads (0 = hardware)");
    fuzzy->add_flag("--upper-interior-grid", interior_grid_upper,
                    "Evaluate the worst case over a full lattice instead of the boundary");
    fuzzy->add_flag("-v,--verbose", fuzzy_verbose, "Print the summary to stdout");

    // point
    auto* point = app.add_subcommand("point", "Solve a single crisp start/target pair");
    std::vector<double> start_coords, target_coords;
    std::string trajectory_path;
    bool oracle_check = false;
    double sample_step = 0.01;
    bool point_verbose = false;
    point->add_option("-s,--start", start_coords, "Start state x1 x2")
        ->expected(2)
        ->required();
    point->add_option("-t,--target", target_coords, "Target state x1 x2")
        ->expected(2)
        ->required();
    point->add_option("--trajectory", trajectory_path, "Write the sampled trajectory here");
    point->add_option("--sample-step", sample_step, "Trajectory sampling step in radians");
    point->add_flag("--oracle", oracle_check, "Cross-check against the brute-force search");
    point->add_flag("-v,--verbose", point_verbose, "Print plan details");

    // validate
    auto* validate_cmd =
        app.add_subcommand("validate", "Compare the solver against the brute-force search "
                                       "on random pairs");
    int pairs = 50;
    std::uint64_t seed = 20110317;
    double box = 8.0;
    double agreement_tolerance = 0.02;
    OracleConfig oracle_cfg;
    bool validate_verbose = false;
    validate_cmd->add_option("--pairs", pairs, "Number of random pairs");
    validate_cmd->add_option("--seed", seed, "RNG seed");
    validate_cmd->add_option("--box", box, "Pairs drawn uniformly from [-box, box]^2");
    validate_cmd->add_option("--tolerance", agreement_tolerance, "Max allowed |solver - oracle|");
    validate_cmd->add_option("--tau-steps", oracle_cfg.tau_steps, "Oracle grid steps over the first arc");
    validate_cmd->add_option("--sigma-steps", oracle_cfg.sigma_steps, "Oracle grid steps over the last arc");
    validate_cmd->add_option("--k-max", oracle_cfg.k_max_search, "Oracle max switch count");
    validate_cmd->add_option("--accept-radius", oracle_cfg.accept_radius, "Oracle acceptance radius");
    validate_cmd->add_option("--refine-iters", oracle_cfg.refine_iters, "Oracle refinement rounds");
    validate_cmd->add_flag("-v,--verbose", validate_verbose, "Print one line per pair");

    CLI11_PARSE(app, argc, argv);

    if (fuzzy->parsed()) {
        return run_fuzzy_command(config_path, nodes_override, alpha_step_override, threads,
                                 interior_grid_upper, fuzzy_verbose);
    }
    if (point->parsed()) {
        return run_point_command(start_coords[0], start_coords[1], target_coords[0],
                                 target_coords[1], trajectory_path, oracle_check, sample_step,
                                 point_verbose);
    }
    if (validate_cmd->parsed()) {
        return run_validate_command(pairs, seed, box, oracle_cfg, agreement_tolerance,
                                    validate_verbose);
    }
    return 0;
}
