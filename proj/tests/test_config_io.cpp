#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "ftoc/emit.hpp"
#include "ftoc/run_config.hpp"
#include "ftoc/solver.hpp"

using namespace ftoc;

namespace {

const char* kReferenceConfig = R"json({
  "problem": {
    "start":  { "x1": [-6, -5, -4], "x2": [2, 3, 4] },
    "target": { "x1": [-0.5, 0, 0.5], "x2": [-0.5, 0, 0.5] }
  },
  "discretization": { "alpha_step": 0.05, "nodes_per_edge": 64 },
  "tolerances": { "verify": 1e-6, "radius_match": 1e-9 },
  "oracle": { "tau_steps": 512, "sigma_steps": 512, "k_max_search": 8,
              "accept_radius": 0.02, "refine_iters": 30 },
  "outputs": { "membership_csv": "out/m.csv", "summary": "out/s.txt" }
})json";

}  // namespace

TEST_CASE("reference config parses into the expected run") {
    const RunConfig cfg = parse_run_config(kReferenceConfig);
    CHECK(cfg.problem.start.x1.left() == -6.0);
    CHECK(cfg.problem.start.x2.peak() == 3.0);
    CHECK(cfg.problem.target.x1.right() == 0.5);
    CHECK(cfg.problem.alpha_levels.size() == 21);
    CHECK(cfg.problem.nodes_per_edge == 64);
    CHECK(cfg.solver.verify_tolerance == 1e-6);
    REQUIRE(cfg.oracle.has_value());
    CHECK(cfg.oracle->tau_steps == 512);
    CHECK(cfg.outputs.membership_csv == "out/m.csv");
}

TEST_CASE("explicit alpha level lists are honored") {
    const std::string text = R"({
      "problem": {
        "start":  { "x1": [0, 1, 2], "x2": [0, 0, 0] },
        "target": { "x1": [0, 0, 0], "x2": [0, 0, 0] }
      },
      "discretization": { "alpha_levels": [0, 0.5, 1], "nodes_per_edge": 4 }
    })";
    const RunConfig cfg = parse_run_config(text);
    REQUIRE(cfg.problem.alpha_levels.size() == 3);
    CHECK(cfg.problem.alpha_levels[1] == 0.5);
}

TEST_CASE("config errors name the offending field") {
    const std::string missing_target = R"({
      "problem": { "start": { "x1": [0, 1, 2], "x2": [0, 0, 0] } },
      "discretization": { "alpha_step": 0.5, "nodes_per_edge": 4 }
    })";
    CHECK_THROWS_WITH(parse_run_config(missing_target),
                      Catch::Matchers::ContainsSubstring("target"));

    const std::string bad_triple = R"({
      "problem": {
        "start":  { "x1": [2, 1, 0], "x2": [0, 0, 0] },
        "target": { "x1": [0, 0, 0], "x2": [0, 0, 0] }
      },
      "discretization": { "alpha_step": 0.5, "nodes_per_edge": 4 }
    })";
    CHECK_THROWS_WITH(parse_run_config(bad_triple),
                      Catch::Matchers::ContainsSubstring("problem.start.x1"));

    const std::string short_triple = R"({
      "problem": {
        "start":  { "x1": [0, 1], "x2": [0, 0, 0] },
        "target": { "x1": [0, 0, 0], "x2": [0, 0, 0] }
      },
      "discretization": { "alpha_step": 0.5, "nodes_per_edge": 4 }
    })";
    CHECK_THROWS_WITH(parse_run_config(short_triple),
                      Catch::Matchers::ContainsSubstring("[left, peak, right]"));
}

TEST_CASE("alpha level lists missing the core level are rejected") {
    const std::string text = R"({
      "problem": {
        "start":  { "x1": [0, 1, 2], "x2": [0, 0, 0] },
        "target": { "x1": [0, 0, 0], "x2": [0, 0, 0] }
      },
      "discretization": { "alpha_levels": [0, 0.5], "nodes_per_edge": 4 }
    })";
    CHECK_THROWS_AS(parse_run_config(text), ConfigError);
    CHECK_THROWS_WITH(parse_run_config(text), Catch::Matchers::ContainsSubstring("alpha_levels"));
}

TEST_CASE("parse errors carry position diagnostics") {
    try {
        (void)parse_run_config("{ \"problem\": \n !oops", "broken.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string message = e.what();
        CHECK(message.find("broken.json") != std::string::npos);
        CHECK(message.find("line") != std::string::npos);
    }
}

TEST_CASE("fixed formatting is plain six decimals") {
    CHECK(format_fixed(8.781276851976095) == "8.781277");
    CHECK(format_fixed(0.0) == "0.000000");
    CHECK(format_fixed(-0.5) == "-0.500000");
    CHECK(format_fixed(11.759) == "11.759000");
}

TEST_CASE("membership csv layout is stable") {
    FuzzyTimeResult result;
    result.levels.push_back({0.0, 5.968826, 11.758678, {-4, 2}, {-0.5, 0.5}, {-6, 4}, {0.5, 0.5}});
    result.levels.push_back({1.0, 8.781277, 8.781277, {-5, 3}, {0, 0}, {-5, 3}, {0, 0}});
    result.curve.levels.push_back({0.0, 5.968826, 11.758678});
    result.curve.levels.push_back({1.0, 8.781277, 8.781277});

    std::ostringstream out;
    write_membership_csv(out, result);
    const std::string expected =
        "alpha,t_lower,t_upper,p_min_x1,p_min_x2,q_min_x1,q_min_x2,"
        "p_max_x1,p_max_x2,q_max_x1,q_max_x2\n"
        "0.000000,5.968826,11.758678,-4.000000,2.000000,-0.500000,0.500000,"
        "-6.000000,4.000000,0.500000,0.500000\n"
        "1.000000,8.781277,8.781277,-5.000000,3.000000,0.000000,0.000000,"
        "-5.000000,3.000000,0.000000,0.000000\n";
    CHECK(out.str() == expected);
}

TEST_CASE("trajectory files round-trip to the recorded endpoint") {
    const Vec2 start{-5, 3};
    const OptimalResult solved = solve_point_to_point(start, {0, 0});
    const SimulationResult sim = simulate_plan(start, solved.plan);
    const std::string text = render_trajectory(start, solved.plan, sim);

    std::istringstream in(text);
    const TrajectoryFile file = read_trajectory(in);
    CHECK(file.plan.num_switches == solved.plan.num_switches);
    CHECK(file.plan.start_sign == solved.plan.start_sign);
    REQUIRE_FALSE(file.samples.empty());

    // Re-simulating the recorded plan from the recorded start reaches the
    // recorded final sample within the 6-decimal rounding of the file.
    const Vec2 replayed = plan_endpoint(file.start, file.plan);
    CHECK(distance(replayed, file.samples.back().state) <= 1e-6);
    CHECK(std::abs(file.samples.back().t - file.plan.total_time) <= 1e-6);
}

TEST_CASE("summaries include support and core lines") {
    FuzzyProblem problem{{{-6, -5, -4}, {2, 3, 4}},
                         {{-0.5, 0, 0.5}, {-0.5, 0, 0.5}},
                         {0.0, 1.0},
                         4};
    FuzzyTimeResult result;
    result.levels.push_back({0.0, 5.97, 11.76, {-4, 2}, {-0.5, 0.5}, {-6, 4}, {0.5, 0.5}});
    result.levels.push_back({1.0, 8.78, 8.78, {-5, 3}, {0, 0}, {-5, 3}, {0, 0}});
    const std::string summary = render_summary(problem, result);
    CHECK(summary.find("support: [5.970000, 11.760000]") != std::string::npos);
    CHECK(summary.find("core time: 8.780000") != std::string::npos);
}
