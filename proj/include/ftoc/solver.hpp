#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ftoc/dynamics.hpp"
#include "ftoc/geometry.hpp"

namespace ftoc {

// Sign of the square-root branch when solving for the first switch point.
enum class YBranch { plus, minus };

enum class Parity { odd, even };

inline Parity parity_of(int k) { return (k % 2 != 0) ? Parity::odd : Parity::even; }

struct CandidateKey {
    ControlSign start_sign = ControlSign::minus;
    int num_switches = 0;
    YBranch y_branch = YBranch::plus;  // unused when num_switches == 0
};

struct Radii {
    double r1 = 0.0;  // distance from the start point to the first-arc center
    double r2 = 0.0;  // distance from the target point to the last-arc center
};

struct KBounds {
    int k_min = 0;
    int k_hat = 0;
    int k_max = 0;
};

struct SolverOptions {
    // Euclidean endpoint tolerance a candidate must meet under simulation.
    double verify_tolerance = 1e-6;
    // |r1 - r2| tolerance for the switchless (same circle) candidate.
    double radius_match_tolerance = 1e-9;
};

struct OptimalResult {
    BangBangPlan plan;
    double time = 0.0;  // == plan.total_time
    CandidateKey key;
    double endpoint_error = 0.0;
};

struct UnreachableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The control alternates sign at every switch, so after k switches the last
// arc's center is the start center mirrored k times.
inline Radii radii(Vec2 start, Vec2 target, ControlSign start_sign, Parity k_parity) {
    const ControlSign last_sign =
        (k_parity == Parity::odd) ? flip(start_sign) : start_sign;
    return {distance(start, arc_center(start_sign)),
            distance(target, arc_center(last_sign))};
}

// Feasible switch counts satisfy |r1 - r2|/2 <= k <= (r1 + r2)/2; counts more
// than 3 above k_min cannot beat the k_min candidate on time.
inline KBounds k_bounds(double r1, double r2) {
    const int k_min = static_cast<int>(std::ceil(std::abs(r1 - r2) / 2.0));
    const int k_hat = static_cast<int>(std::floor((r1 + r2) / 2.0));
    return {k_min, k_hat, std::min(k_min + 3, k_hat)};
}

// Switch points X_1..X_k starting from X_1 = (x, y). Consecutive points are
// central-symmetric images about the center of the pi-arc joining them, with
// centers alternating from the first-arc center.
inline std::vector<Vec2> switch_chain(double x, double y, ControlSign start_sign, int k) {
    if (k < 1) throw std::invalid_argument("switch_chain: k must be >= 1");
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(k));
    points.push_back({x, y});
    for (int i = 1; i < k; ++i) {
        const Vec2 c = arc_center(sign_after(start_sign, i));
        const Vec2 prev = points.back();
        points.push_back({2.0 * c.x - prev.x, -prev.y});
    }
    return points;
}

// Closed-form candidate with k >= 1 switches. The circle |C1 X1| = r1 and the
// chained condition |C2 Xk| = r2 pin X1's abscissa; the ordinate is the chosen
// square-root branch. Returns nullopt when the circles do not intersect for
// this k (negative radicand beyond the tangency clamp).
inline std::optional<BangBangPlan> candidate_for_k(Vec2 start, Vec2 target,
                                                   const CandidateKey& key) {
    const int k = key.num_switches;
    if (k < 1) throw std::invalid_argument("candidate_for_k: num_switches must be >= 1");
    const double s = static_cast<double>(value(key.start_sign));
    const auto [r1, r2] = radii(start, target, key.start_sign, parity_of(k));

    const double x = -s * ((r1 * r1 - r2 * r2) / (4.0 * k) + k - 1.0);
    double radicand = r1 * r1 - (x - s) * (x - s);
    if (radicand < 0.0) {
        if (radicand < -1e-12) return std::nullopt;
        radicand = 0.0;  // tangency
    }
    const double y = (key.y_branch == YBranch::plus) ? std::sqrt(radicand)
                                                     : -std::sqrt(radicand);

    std::vector<Vec2> switches = switch_chain(x, y, key.start_sign, k);
    const Vec2 first_center = arc_center(key.start_sign);
    const Vec2 last_center = arc_center(sign_after(key.start_sign, k));
    const Vec2 x1 = switches.front();
    const Vec2 xk = switches.back();

    // A zero radius puts the state at an equilibrium: it can sit there for
    // free, so the degenerate arc is assigned zero duration.
    const double first =
        (r1 == 0.0) ? 0.0 : clockwise_angle(first_center, start, x1);
    const double last = (r2 == 0.0) ? 0.0 : clockwise_angle(last_center, xk, target);
    return make_plan(key.start_sign, first, std::move(switches), last);
}

// Switchless candidate: possible only when start and target lie on the same
// circle about the start-sign center.
inline std::optional<BangBangPlan> candidate_no_switch(
    Vec2 start, Vec2 target, ControlSign start_sign,
    double radius_match_tolerance = 1e-9) {
    const Vec2 c = arc_center(start_sign);
    const double r1 = distance(start, c);
    const double r2 = distance(target, c);
    if (std::abs(r1 - r2) > radius_match_tolerance) return std::nullopt;
    const double angle =
        (r1 == 0.0 || r2 == 0.0) ? 0.0 : clockwise_angle(c, start, target);
    return make_plan(start_sign, angle, {}, 0.0);
}

// Deterministic total order on candidates: time, then fewer switches, then
// start sign -1 before +1, then the + branch before the - branch.
inline bool candidate_less(const OptimalResult& a, const OptimalResult& b) {
    return std::make_tuple(a.time, a.key.num_switches, value(a.key.start_sign),
                           a.key.y_branch == YBranch::minus) <
           std::make_tuple(b.time, b.key.num_switches, value(b.key.start_sign),
                           b.key.y_branch == YBranch::minus);
}

namespace detail {

inline std::vector<std::pair<CandidateKey, BangBangPlan>> enumerate_candidates(
    Vec2 start, Vec2 target, const SolverOptions& options) {
    std::vector<std::pair<CandidateKey, BangBangPlan>> candidates;
    for (ControlSign sign : {ControlSign::minus, ControlSign::plus}) {
        if (auto plan = candidate_no_switch(start, target, sign,
                                            options.radius_match_tolerance)) {
            candidates.push_back({{sign, 0, YBranch::plus}, std::move(*plan)});
        }
        for (Parity parity : {Parity::odd, Parity::even}) {
            const auto [r1, r2] = radii(start, target, sign, parity);
            const KBounds bounds = k_bounds(r1, r2);
            for (int k = std::max(bounds.k_min, 1); k <= bounds.k_max; ++k) {
                if (parity_of(k) != parity) continue;
                for (YBranch branch : {YBranch::plus, YBranch::minus}) {
                    CandidateKey key{sign, k, branch};
                    if (auto plan = candidate_for_k(start, target, key)) {
                        candidates.push_back({key, std::move(*plan)});
                    }
                }
            }
        }
    }
    return candidates;
}

inline void sort_candidates(std::vector<std::pair<CandidateKey, BangBangPlan>>& candidates) {
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) {
                  OptimalResult ra{{}, a.second.total_time, a.first, 0.0};
                  OptimalResult rb{{}, b.second.total_time, b.first, 0.0};
                  return candidate_less(ra, rb);
              });
}

}  // namespace detail

// All maximum-principle candidates that pass endpoint verification, sorted by
// the deterministic total order.
inline std::vector<OptimalResult> verified_candidates(Vec2 start, Vec2 target,
                                                      const SolverOptions& options = {}) {
    auto candidates = detail::enumerate_candidates(start, target, options);
    detail::sort_candidates(candidates);
    std::vector<OptimalResult> verified;
    for (auto& [key, plan] : candidates) {
        const double err = distance(plan_endpoint(start, plan), target);
        if (err <= options.verify_tolerance) {
            verified.push_back({std::move(plan), 0.0, key, err});
            verified.back().time = verified.back().plan.total_time;
        }
    }
    return verified;
}

// Minimum-time transfer from `start` to `target`: enumerates switchless and
// k-switch candidates over both start signs and both square-root branches,
// keeps those whose simulated endpoint reaches the target, and returns the
// first in the candidate total order.
inline OptimalResult solve_point_to_point(Vec2 start, Vec2 target,
                                          const SolverOptions& options = {}) {
    auto candidates = detail::enumerate_candidates(start, target, options);
    detail::sort_candidates(candidates);
    for (auto& [key, plan] : candidates) {
        const double err = distance(plan_endpoint(start, plan), target);
        if (err <= options.verify_tolerance) {
            OptimalResult result{std::move(plan), 0.0, key, err};
            result.time = result.plan.total_time;
            return result;
        }
    }
    throw UnreachableError("solve_point_to_point: no verified candidate for start=(" +
                           std::to_string(start.x) + ", " + std::to_string(start.y) +
                           "), target=(" + std::to_string(target.x) + ", " +
                           std::to_string(target.y) + ")");
}

}  // namespace ftoc
