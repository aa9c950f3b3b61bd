#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftoc/fuzzy.hpp"
#include "ftoc/fuzzy_time.hpp"
#include "ftoc/oracle.hpp"
#include "ftoc/solver.hpp"

namespace ftoc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputPaths {
    std::string membership_csv = "membership.csv";
    std::string summary = "run_summary.txt";
};

struct RunConfig {
    FuzzyProblem problem;
    SolverOptions solver;
    std::optional<OracleConfig> oracle;
    OutputPaths outputs;
};

namespace config_detail {

using nlohmann::json;

inline const json& require(const json& node, const std::string& path, const char* key) {
    auto it = node.find(key);
    if (it == node.end()) {
        throw ConfigError(path + ": missing required field '" + key + "'");
    }
    return *it;
}

inline double number_at(const json& node, const std::string& path) {
    if (!node.is_number()) throw ConfigError(path + ": expected a number");
    return node.get<double>();
}

inline int int_at(const json& node, const std::string& path) {
    if (!node.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return node.get<int>();
}

inline TriangularFuzzyNumber triangular_at(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 3) {
        throw ConfigError(path + ": expected [left, peak, right]");
    }
    const double l = number_at(node[0], path + "[0]");
    const double p = number_at(node[1], path + "[1]");
    const double r = number_at(node[2], path + "[2]");
    try {
        return {l, p, r};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline FuzzyState state_at(const json& node, const std::string& path) {
    if (!node.is_object()) throw ConfigError(path + ": expected an object");
    return {triangular_at(require(node, path, "x1"), path + ".x1"),
            triangular_at(require(node, path, "x2"), path + ".x2")};
}

}  // namespace config_detail

inline RunConfig parse_run_config(const std::string& text,
                                  const std::string& origin = "<config>") {
    using namespace config_detail;
    json root;
    try {
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");

    RunConfig cfg;

    const json& problem = require(root, origin, "problem");
    cfg.problem.start = state_at(require(problem, "problem", "start"), "problem.start");
    cfg.problem.target = state_at(require(problem, "problem", "target"), "problem.target");

    const json& disc = require(root, origin, "discretization");
    if (disc.contains("alpha_levels") && disc.contains("alpha_step")) {
        throw ConfigError("discretization: give either alpha_levels or alpha_step, not both");
    }
    if (disc.contains("alpha_levels")) {
        const json& levels = disc["alpha_levels"];
        if (!levels.is_array() || levels.empty()) {
            throw ConfigError("discretization.alpha_levels: expected a nonempty array");
        }
        for (std::size_t i = 0; i < levels.size(); ++i) {
            cfg.problem.alpha_levels.push_back(
                number_at(levels[i], "discretization.alpha_levels[" + std::to_string(i) + "]"));
        }
    } else if (disc.contains("alpha_step")) {
        const double step = number_at(disc["alpha_step"], "discretization.alpha_step");
        try {
            cfg.problem.alpha_levels = alpha_levels_from_step(step);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("discretization.alpha_step: ") + e.what());
        }
    } else {
        throw ConfigError("discretization: missing alpha_levels or alpha_step");
    }
    cfg.problem.nodes_per_edge =
        int_at(require(disc, "discretization", "nodes_per_edge"), "discretization.nodes_per_edge");

    if (root.contains("tolerances")) {
        const json& tol = root["tolerances"];
        if (!tol.is_object()) throw ConfigError("tolerances: expected an object");
        if (tol.contains("verify")) {
            cfg.solver.verify_tolerance = number_at(tol["verify"], "tolerances.verify");
        }
        if (tol.contains("radius_match")) {
            cfg.solver.radius_match_tolerance =
                number_at(tol["radius_match"], "tolerances.radius_match");
        }
        if (!(cfg.solver.verify_tolerance > 0.0) || !(cfg.solver.radius_match_tolerance > 0.0)) {
            throw ConfigError("tolerances: values must be positive");
        }
    }

    if (root.contains("oracle")) {
        const json& ora = root["oracle"];
        if (!ora.is_object()) throw ConfigError("oracle: expected an object");
        OracleConfig oracle_cfg;
        if (ora.contains("tau_steps")) oracle_cfg.tau_steps = int_at(ora["tau_steps"], "oracle.tau_steps");
        if (ora.contains("sigma_steps")) oracle_cfg.sigma_steps = int_at(ora["sigma_steps"], "oracle.sigma_steps");
        if (ora.contains("k_max_search")) oracle_cfg.k_max_search = int_at(ora["k_max_search"], "oracle.k_max_search");
        if (ora.contains("accept_radius")) oracle_cfg.accept_radius = number_at(ora["accept_radius"], "oracle.accept_radius");
        if (ora.contains("refine_iters")) oracle_cfg.refine_iters = int_at(ora["refine_iters"], "oracle.refine_iters");
        try {
            validate(oracle_cfg);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("oracle: ") + e.what());
        }
        cfg.oracle = oracle_cfg;
    }

    if (root.contains("outputs")) {
        const json& out = root["outputs"];
        if (!out.is_object()) throw ConfigError("outputs: expected an object");
        if (out.contains("membership_csv")) {
            if (!out["membership_csv"].is_string()) {
                throw ConfigError("outputs.membership_csv: expected a string path");
            }
            cfg.outputs.membership_csv = out["membership_csv"].get<std::string>();
        }
        if (out.contains("summary")) {
            if (!out["summary"].is_string()) {
                throw ConfigError("outputs.summary: expected a string path");
            }
            cfg.outputs.summary = out["summary"].get<std::string>();
        }
    }

    try {
        validate(cfg.problem);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("problem/discretization: ") + e.what());
    }
    return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path);
}

}  // namespace ftoc
