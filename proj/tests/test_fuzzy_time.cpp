#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ftoc/fuzzy_time.hpp"
#include "ftoc/solver.hpp"

using namespace ftoc;

namespace {

FuzzyProblem reference_problem(int nodes_per_edge, double alpha_step = 0.25) {
    FuzzyProblem problem{{{-6, -5, -4}, {2, 3, 4}},
                         {{-0.5, 0, 0.5}, {-0.5, 0, 0.5}},
                         alpha_levels_from_step(alpha_step),
                         nodes_per_edge};
    return problem;
}

FuzzyProblem singleton_problem() {
    return {{{-5, -5, -5}, {3, 3, 3}},
            {{0, 0, 0}, {0, 0, 0}},
            alpha_levels_from_step(0.5),
            4};
}

}  // namespace

TEST_CASE("alpha_levels_from_step spans 0 to 1 inclusively") {
    const auto levels = alpha_levels_from_step(0.05);
    REQUIRE(levels.size() == 21);
    CHECK(levels.front() == 0.0);
    CHECK(levels.back() == 1.0);
    for (std::size_t i = 1; i < levels.size(); ++i) CHECK(levels[i - 1] < levels[i]);
    CHECK_THROWS_AS(alpha_levels_from_step(0.0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_levels_from_step(1.5), std::invalid_argument);
}

TEST_CASE("fuzzy problem validation catches malformed level lists") {
    FuzzyProblem problem = reference_problem(4);
    CHECK_NOTHROW(validate(problem));

    problem.alpha_levels = {0.0, 0.5};
    CHECK_THROWS_AS(validate(problem), std::invalid_argument);

    problem.alpha_levels = {0.5, 1.0};
    CHECK_THROWS_AS(validate(problem), std::invalid_argument);

    problem.alpha_levels = {0.0, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(validate(problem), std::invalid_argument);

    problem.alpha_levels = {};
    CHECK_THROWS_AS(validate(problem), std::invalid_argument);

    problem = reference_problem(0);
    CHECK_THROWS_AS(validate(problem), std::invalid_argument);
}

TEST_CASE("core level reduces to the crisp solve") {
    const FuzzyProblem problem = reference_problem(8);
    const double crisp = solve_point_to_point({-5, 3}, {0, 0}).time;

    const LevelResult core = evaluate_level(problem, 1.0);
    CHECK(core.t_lo == core.t_hi);
    CHECK(std::abs(core.t_lo - crisp) <= 1e-12);
    CHECK(core.p_min == Vec2{-5, 3});
    CHECK(core.q_min == Vec2{0, 0});
}

TEST_CASE("support level reaches the published extremes at the corners") {
    const FuzzyProblem problem = reference_problem(16);

    const PairOutcome lo = t_lower(problem, 0.0);
    CHECK(lo.time == Catch::Approx(5.97).margin(0.05));
    CHECK(distance(lo.p, {-4, 2}) <= 1e-12);
    CHECK(distance(lo.q, {-0.5, 0.5}) <= 1e-12);

    const PairOutcome hi = t_upper(problem, 0.0);
    CHECK(hi.time == Catch::Approx(11.76).margin(0.05));
    CHECK(distance(hi.p, {-6, 4}) <= 1e-12);
    CHECK(distance(hi.q, {0.5, 0.5}) <= 1e-12);
}

TEST_CASE("singleton problem yields a flat curve") {
    const FuzzyProblem problem = singleton_problem();
    const double crisp = solve_point_to_point({-5, 3}, {0, 0}).time;
    const FuzzyTimeResult result = fuzzy_optimal_time(problem);
    for (const LevelResult& level : result.levels) {
        CHECK(level.t_lo == level.t_hi);
        CHECK(std::abs(level.t_lo - crisp) <= 1e-12);
    }
    CHECK(result.warnings.empty());
}

TEST_CASE("point-to-same-point problem needs no time at all") {
    const FuzzyProblem problem{{{1, 1, 1}, {-2, -2, -2}},
                               {{1, 1, 1}, {-2, -2, -2}},
                               alpha_levels_from_step(0.5),
                               2};
    const FuzzyTimeResult result = fuzzy_optimal_time(problem);
    for (const LevelResult& level : result.levels) {
        CHECK(level.t_lo == 0.0);
        CHECK(level.t_hi == 0.0);
    }
}

TEST_CASE("level times sandwich the crisp time") {
    const FuzzyProblem problem = reference_problem(12, 0.2);
    const double crisp = solve_point_to_point({-5, 3}, {0, 0}).time;
    for (double alpha : problem.alpha_levels) {
        const LevelResult level = evaluate_level(problem, alpha);
        CHECK(level.t_lo <= crisp + 1e-12);
        CHECK(level.t_hi >= crisp - 1e-12);
        CHECK(level.t_lo <= level.t_hi);
    }
}

TEST_CASE("power-of-two node refinement only widens the level interval") {
    const FuzzyProblem coarse = reference_problem(8);
    const FuzzyProblem fine = reference_problem(16);
    for (double alpha : {0.0, 0.5}) {
        const LevelResult c = evaluate_level(coarse, alpha);
        const LevelResult f = evaluate_level(fine, alpha);
        // Nested node sets: the finer minimum cannot exceed the coarser one
        // and the finer maximum cannot fall below it.
        CHECK(f.t_lo <= c.t_lo);
        CHECK(f.t_hi >= c.t_hi);
    }
}

TEST_CASE("doubling the discretization moves the support endpoints by little") {
    const LevelResult coarse = evaluate_level(reference_problem(24), 0.0);
    const LevelResult fine = evaluate_level(reference_problem(48), 0.0);
    CHECK(std::abs(coarse.t_lo - fine.t_lo) <= 0.05);
    CHECK(std::abs(coarse.t_hi - fine.t_hi) <= 0.05);
}

TEST_CASE("fuzzy_optimal_time assembles a valid curve") {
    const FuzzyProblem problem = reference_problem(12, 0.2);
    const FuzzyTimeResult result = fuzzy_optimal_time(problem);
    REQUIRE(result.levels.size() == problem.alpha_levels.size());
    CHECK_NOTHROW(validate(result.curve));
    CHECK(result.curve.levels.front().t_lo == Catch::Approx(5.97).margin(0.08));
    CHECK(result.curve.levels.front().t_hi == Catch::Approx(11.76).margin(0.08));
    CHECK(result.curve.levels.back().t_lo == Catch::Approx(8.7813).margin(1e-4));
}

TEST_CASE("thread count does not change the outcome") {
    const FuzzyProblem problem = reference_problem(12, 0.5);
    FuzzyTimeOptions serial;
    serial.threads = 1;
    FuzzyTimeOptions parallel;
    parallel.threads = 4;
    for (double alpha : problem.alpha_levels) {
        const LevelResult a = evaluate_level(problem, alpha, serial);
        const LevelResult b = evaluate_level(problem, alpha, parallel);
        CHECK(a.t_lo == b.t_lo);
        CHECK(a.t_hi == b.t_hi);
        CHECK(a.p_min == b.p_min);
        CHECK(a.q_min == b.q_min);
        CHECK(a.p_max == b.p_max);
        CHECK(a.q_max == b.q_max);
    }
}

TEST_CASE("interior lattice mode agrees with boundary sampling on the example") {
    // Probes whether the worst case is attained on the cut boundaries; on
    // this problem the interior adds nothing beyond discretization noise.
    const FuzzyProblem problem = reference_problem(10);
    FuzzyTimeOptions boundary_only;
    FuzzyTimeOptions with_interior;
    with_interior.interior_grid_upper = true;
    const LevelResult b = evaluate_level(problem, 0.0, boundary_only);
    const LevelResult g = evaluate_level(problem, 0.0, with_interior);
    CHECK(g.t_hi <= b.t_hi + 0.1);
    CHECK(g.t_hi >= b.t_hi - 0.1);
    CHECK(b.t_lo == g.t_lo);
}

TEST_CASE("grid_nodes covers the lattice including corners") {
    const Rect r{{0, 1}, {0, 2}};
    const auto nodes = grid_nodes(r, 2);
    REQUIRE(nodes.size() == 9);
    bool has_center = false;
    for (const Vec2& p : nodes) {
        if (p == Vec2{0.5, 1.0}) has_center = true;
    }
    CHECK(has_center);

    const Rect point{{3, 3}, {4, 4}};
    CHECK(grid_nodes(point, 5).size() == 1);
}
