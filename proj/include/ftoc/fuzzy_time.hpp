#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ftoc/fuzzy.hpp"
#include "ftoc/geometry.hpp"
#include "ftoc/solver.hpp"

namespace ftoc {

struct FuzzyProblem {
    FuzzyState start;
    FuzzyState target;
    std::vector<double> alpha_levels;
    int nodes_per_edge = 64;
};

inline void validate(const FuzzyProblem& problem) {
    if (problem.alpha_levels.empty()) {
        throw std::invalid_argument("FuzzyProblem: alpha_levels must be nonempty");
    }
    if (problem.alpha_levels.front() != 0.0) {
        throw std::invalid_argument("FuzzyProblem: alpha_levels must contain 0 as the first level");
    }
    if (problem.alpha_levels.back() != 1.0) {
        throw std::invalid_argument("FuzzyProblem: alpha_levels must contain 1 as the last level");
    }
    for (std::size_t i = 1; i < problem.alpha_levels.size(); ++i) {
        if (!(problem.alpha_levels[i - 1] < problem.alpha_levels[i])) {
            throw std::invalid_argument("FuzzyProblem: alpha_levels must be strictly increasing");
        }
    }
    if (problem.nodes_per_edge < 1) {
        throw std::invalid_argument("FuzzyProblem: nodes_per_edge must be >= 1");
    }
}

// Uniform levels 0, 1/n, ..., 1 with n = round(1/step).
inline std::vector<double> alpha_levels_from_step(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
        throw std::invalid_argument("alpha_levels_from_step: step must lie in (0, 1]");
    }
    const auto n = static_cast<long long>(std::llround(1.0 / step));
    std::vector<double> levels;
    levels.reserve(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        levels.push_back(static_cast<double>(i) / static_cast<double>(n));
    }
    return levels;
}

struct FuzzyTimeOptions {
    int threads = 1;  // 0 = hardware concurrency
    // Validation mode: evaluate the worst-case time over a full lattice of
    // the alpha-cut rectangles instead of their boundaries only.
    bool interior_grid_upper = false;
    SolverOptions solver;
};

struct PairOutcome {
    double time = 0.0;
    Vec2 p;
    Vec2 q;
};

struct LevelResult {
    double alpha = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    Vec2 p_min, q_min;  // endpoint pair achieving t_lo
    Vec2 p_max, q_max;  // endpoint pair achieving t_hi
};

// Lattice covering the rectangle, (n+1) x (n+1) for a non-degenerate one.
inline std::vector<Vec2> grid_nodes(const Rect& r, int nodes_per_edge) {
    if (nodes_per_edge < 1) {
        throw std::invalid_argument("grid_nodes: nodes_per_edge must be >= 1");
    }
    const int nx = r.x1.is_point() ? 0 : nodes_per_edge;
    const int ny = r.x2.is_point() ? 0 : nodes_per_edge;
    std::vector<Vec2> nodes;
    nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int i = 0; i <= nx; ++i) {
        const double tx = nx == 0 ? 0.0 : static_cast<double>(i) / nx;
        const double x = r.x1.lo + tx * (r.x1.hi - r.x1.lo);
        for (int j = 0; j <= ny; ++j) {
            const double ty = ny == 0 ? 0.0 : static_cast<double>(j) / ny;
            nodes.push_back({x, r.x2.lo + ty * (r.x2.hi - r.x2.lo)});
        }
    }
    return nodes;
}

namespace fuzzy_detail {

struct Extremum {
    bool valid = false;
    double time = 0.0;
    CandidateKey key;
    std::size_t p_index = 0;
    std::size_t q_index = 0;
};

// Candidate total order extended with the node-pair index as the final
// tie-break, so reductions are independent of evaluation order.
inline std::tuple<double, int, int, int, std::size_t, std::size_t> order_tuple(
    const Extremum& e) {
    return {e.time,
            e.key.num_switches,
            value(e.key.start_sign),
            e.key.y_branch == YBranch::minus ? 1 : 0,
            e.p_index,
            e.q_index};
}

inline void merge_min(Extremum& best, const Extremum& candidate) {
    if (!candidate.valid) return;
    if (!best.valid || order_tuple(candidate) < order_tuple(best)) best = candidate;
}

inline void merge_max(Extremum& best, const Extremum& candidate) {
    if (!candidate.valid) return;
    if (!best.valid) {
        best = candidate;
        return;
    }
    if (candidate.time > best.time) {
        best = candidate;
    } else if (candidate.time == best.time && order_tuple(candidate) < order_tuple(best)) {
        best = candidate;
    }
}

struct PairScanResult {
    Extremum min;
    Extremum max;
};

// Scans all (p, q) node pairs, reducing to the extremal solves. Rows of p are
// partitioned across threads; per-thread results merge in row order with the
// index-extended total order, so the outcome does not depend on the thread
// count.
inline PairScanResult scan_pairs(const std::vector<Vec2>& ps, const std::vector<Vec2>& qs,
                                 const SolverOptions& solver, double alpha, int threads,
                                 bool track_min, bool track_max) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min<int>(threads, static_cast<int>(ps.size()));
    threads = std::max(threads, 1);

    std::vector<PairScanResult> partial(static_cast<std::size_t>(threads));
    std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(threads));

    auto worker = [&](int slot, std::size_t row_begin, std::size_t row_end) {
        PairScanResult local;
        for (std::size_t i = row_begin; i < row_end; ++i) {
            for (std::size_t j = 0; j < qs.size(); ++j) {
                try {
                    const OptimalResult r = solve_point_to_point(ps[i], qs[j], solver);
                    const Extremum e{true, r.time, r.key, i, j};
                    if (track_min) merge_min(local.min, e);
                    if (track_max) merge_max(local.max, e);
                } catch (const UnreachableError& e) {
                    if (!failures[slot]) {
                        failures[slot] = std::string(e.what()) + " [p=(" +
                                         std::to_string(ps[i].x) + ", " +
                                         std::to_string(ps[i].y) + "), q=(" +
                                         std::to_string(qs[j].x) + ", " +
                                         std::to_string(qs[j].y) +
                                         "), alpha=" + std::to_string(alpha) + "]";
                    }
                    return;
                }
            }
        }
        partial[slot] = local;
    };

    if (threads == 1) {
        worker(0, 0, ps.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const std::size_t rows = ps.size();
        for (int t = 0; t < threads; ++t) {
            const std::size_t begin = rows * static_cast<std::size_t>(t) / threads;
            const std::size_t end = rows * static_cast<std::size_t>(t + 1) / threads;
            pool.emplace_back(worker, t, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    for (const auto& failure : failures) {
        if (failure) throw UnreachableError(*failure);
    }
    PairScanResult best;
    for (const PairScanResult& e : partial) {
        merge_min(best.min, e.min);
        merge_max(best.max, e.max);
    }
    return best;
}

}  // namespace fuzzy_detail

// Best- and worst-case minimum transfer time over the alpha-cut node sets,
// with the achieving node pairs.
inline LevelResult evaluate_level(const FuzzyProblem& problem, double alpha,
                                  const FuzzyTimeOptions& options = {}) {
    using namespace fuzzy_detail;
    const Rect start_rect = state_alpha_cut(problem.start, alpha);
    const Rect target_rect = state_alpha_cut(problem.target, alpha);
    const std::vector<Vec2> ps = boundary_nodes(start_rect, problem.nodes_per_edge);
    const std::vector<Vec2> qs = boundary_nodes(target_rect, problem.nodes_per_edge);

    LevelResult level;
    level.alpha = alpha;
    if (options.interior_grid_upper) {
        const auto lo =
            scan_pairs(ps, qs, options.solver, alpha, options.threads, true, false).min;
        const std::vector<Vec2> ps_hi = grid_nodes(start_rect, problem.nodes_per_edge);
        const std::vector<Vec2> qs_hi = grid_nodes(target_rect, problem.nodes_per_edge);
        const auto hi =
            scan_pairs(ps_hi, qs_hi, options.solver, alpha, options.threads, false, true).max;
        level.t_lo = lo.time;
        level.t_hi = hi.time;
        level.p_min = ps[lo.p_index];
        level.q_min = qs[lo.q_index];
        level.p_max = ps_hi[hi.p_index];
        level.q_max = qs_hi[hi.q_index];
    } else {
        const PairScanResult scan =
            scan_pairs(ps, qs, options.solver, alpha, options.threads, true, true);
        level.t_lo = scan.min.time;
        level.t_hi = scan.max.time;
        level.p_min = ps[scan.min.p_index];
        level.q_min = qs[scan.min.q_index];
        level.p_max = ps[scan.max.p_index];
        level.q_max = qs[scan.max.q_index];
    }
    return level;
}

inline PairOutcome t_lower(const FuzzyProblem& problem, double alpha,
                           const FuzzyTimeOptions& options = {}) {
    const LevelResult level = evaluate_level(problem, alpha, options);
    return {level.t_lo, level.p_min, level.q_min};
}

inline PairOutcome t_upper(const FuzzyProblem& problem, double alpha,
                           const FuzzyTimeOptions& options = {}) {
    const LevelResult level = evaluate_level(problem, alpha, options);
    return {level.t_hi, level.p_max, level.q_max};
}

struct FuzzyTimeResult {
    MembershipCurve curve;
    std::vector<LevelResult> levels;
    // Non-nesting between consecutive levels, possible under coarse
    // discretization. Computed values are reported as-is, never adjusted.
    std::vector<std::string> warnings;
};

inline FuzzyTimeResult fuzzy_optimal_time(const FuzzyProblem& problem,
                                          const FuzzyTimeOptions& options = {}) {
    validate(problem);
    FuzzyTimeResult result;
    result.levels.reserve(problem.alpha_levels.size());
    for (double alpha : problem.alpha_levels) {
        result.levels.push_back(evaluate_level(problem, alpha, options));
        result.curve.levels.push_back({alpha, result.levels.back().t_lo,
                                       result.levels.back().t_hi});
    }
    constexpr double kSlack = 1e-12;
    for (std::size_t i = 1; i < result.levels.size(); ++i) {
        const LevelResult& prev = result.levels[i - 1];
        const LevelResult& cur = result.levels[i];
        if (cur.t_lo < prev.t_lo - kSlack) {
            result.warnings.push_back(
                "t_lower decreases from alpha=" + std::to_string(prev.alpha) + " to alpha=" +
                std::to_string(cur.alpha) + "; alpha-cut nesting violated by discretization");
        }
        if (cur.t_hi > prev.t_hi + kSlack) {
            result.warnings.push_back(
                "t_upper increases from alpha=" + std::to_string(prev.alpha) + " to alpha=" +
                std::to_string(cur.alpha) + "; alpha-cut nesting violated by discretization");
        }
    }
    return result;
}

}  // namespace ftoc
