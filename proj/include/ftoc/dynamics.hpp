#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftoc/geometry.hpp"

namespace ftoc {

// Bang-bang control value. Under u = -1 the state moves on clockwise circles
// about K(-1, 0); under u = +1 about L(1, 0). Angular speed is 1, so arc
// angle equals elapsed time and a full turn takes 2*pi.
enum class ControlSign : int {
    minus = -1,
    plus = +1,
};

inline int value(ControlSign s) { return static_cast<int>(s); }

inline ControlSign flip(ControlSign s) {
    return s == ControlSign::minus ? ControlSign::plus : ControlSign::minus;
}

// Sign in effect after `switches` control switches from `start`.
inline ControlSign sign_after(ControlSign start, int switches) {
    return (switches % 2 == 0) ? start : flip(start);
}

inline Vec2 arc_center(ControlSign s) { return {static_cast<double>(value(s)), 0.0}; }

// Wraps into [0, 2*pi); values within 1e-12 of a full turn collapse to 0 so
// floating-point noise cannot manufacture a spurious extra revolution.
inline double canonical_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (kTwoPi - a < 1e-12) a = 0.0;
    return a;
}

// State after moving for `duration` time units under the given control:
// clockwise rotation by `duration` about the control's center.
inline Vec2 arc_end(Vec2 p, ControlSign sign, double duration) {
    const Vec2 c = arc_center(sign);
    const double vx = p.x - c.x;
    const double vy = p.y - c.y;
    const double co = std::cos(duration);
    const double si = std::sin(duration);
    return {c.x + vx * co + vy * si, c.y - vx * si + vy * co};
}

// Angle swept moving clockwise from ray center->a to ray center->b, in
// [0, 2*pi). Zero when the rays coincide.
inline double clockwise_angle(Vec2 center, Vec2 a, Vec2 b) {
    const Vec2 va = a - center;
    const Vec2 vb = b - center;
    if ((va.x == 0.0 && va.y == 0.0) || (vb.x == 0.0 && vb.y == 0.0)) {
        throw std::invalid_argument("clockwise_angle: point coincides with the center");
    }
    return canonical_angle(std::atan2(va.y, va.x) - std::atan2(vb.y, vb.x));
}

// One circular arc of a bang-bang trajectory.
struct Arc {
    Vec2 center;
    Vec2 start;
    double duration = 0.0;
};

// Bang-bang candidate control: the first arc lasts first_duration, every
// interior arc between consecutive switches lasts exactly pi, the final arc
// lasts last_duration. switch_points holds the states where the control
// flips sign.
struct BangBangPlan {
    ControlSign start_sign = ControlSign::minus;
    double first_duration = 0.0;
    int num_switches = 0;
    double last_duration = 0.0;
    std::vector<Vec2> switch_points;
    double total_time = 0.0;
};

inline double plan_total_time(double first, int num_switches, double last) {
    if (num_switches == 0) return first;
    return first + (num_switches - 1) * kPi + last;
}

inline BangBangPlan make_plan(ControlSign start_sign, double first,
                              std::vector<Vec2> switch_points, double last) {
    BangBangPlan plan;
    plan.start_sign = start_sign;
    plan.first_duration = first;
    plan.num_switches = static_cast<int>(switch_points.size());
    plan.last_duration = last;
    plan.switch_points = std::move(switch_points);
    plan.total_time = plan_total_time(first, plan.num_switches, last);
    return plan;
}

inline void validate(const BangBangPlan& plan) {
    if (plan.num_switches < 0) throw std::invalid_argument("BangBangPlan: negative switch count");
    if (static_cast<int>(plan.switch_points.size()) != plan.num_switches) {
        throw std::invalid_argument("BangBangPlan: switch_points size does not match num_switches");
    }
    if (!(plan.first_duration >= 0.0 && plan.first_duration < kTwoPi)) {
        throw std::invalid_argument("BangBangPlan: first_duration outside [0, 2*pi)");
    }
    if (!(plan.last_duration >= 0.0 && plan.last_duration < kTwoPi)) {
        throw std::invalid_argument("BangBangPlan: last_duration outside [0, 2*pi)");
    }
    if (plan.num_switches == 0 && plan.last_duration != 0.0) {
        throw std::invalid_argument("BangBangPlan: switchless plan must have last_duration 0");
    }
    const double expected =
        plan_total_time(plan.first_duration, plan.num_switches, plan.last_duration);
    if (std::abs(plan.total_time - expected) > 1e-9) {
        throw std::invalid_argument("BangBangPlan: total_time inconsistent with durations");
    }
}

// (sign, duration) sequence of the plan's arcs, in travel order.
inline std::vector<std::pair<ControlSign, double>> plan_segments(const BangBangPlan& plan) {
    std::vector<std::pair<ControlSign, double>> segments;
    segments.reserve(static_cast<std::size_t>(plan.num_switches) + 1);
    segments.emplace_back(plan.start_sign, plan.first_duration);
    for (int i = 1; i < plan.num_switches; ++i) {
        segments.emplace_back(sign_after(plan.start_sign, i), kPi);
    }
    if (plan.num_switches >= 1) {
        segments.emplace_back(sign_after(plan.start_sign, plan.num_switches),
                              plan.last_duration);
    }
    return segments;
}

inline std::vector<Arc> plan_arcs(Vec2 start, const BangBangPlan& plan) {
    std::vector<Arc> arcs;
    Vec2 p = start;
    for (auto [sign, duration] : plan_segments(plan)) {
        arcs.push_back({arc_center(sign), p, duration});
        p = arc_end(p, sign, duration);
    }
    return arcs;
}

// Endpoint of the plan started at `start`: exact composition of arc_end over
// the plan's arcs. This is the value feasibility checks compare against the
// target.
inline Vec2 plan_endpoint(Vec2 start, const BangBangPlan& plan) {
    Vec2 p = start;
    for (auto [sign, duration] : plan_segments(plan)) {
        if (duration == 0.0) continue;
        p = arc_end(p, sign, duration);
    }
    return p;
}

struct TrajectorySample {
    double t = 0.0;
    Vec2 state;
};

struct SimulationResult {
    Vec2 endpoint;
    std::vector<TrajectorySample> polyline;
};

// Composes the plan's arcs from `start` and samples each arc at most
// `sample_step` radians apart for export. The last sample's time equals
// plan.total_time and its state equals plan_endpoint(start, plan).
inline SimulationResult simulate_plan(Vec2 start, const BangBangPlan& plan,
                                      double sample_step = 0.01) {
    validate(plan);
    if (!(sample_step > 0.0)) {
        throw std::invalid_argument("simulate_plan: sample_step must be positive");
    }
    SimulationResult out;
    out.polyline.push_back({0.0, start});
    Vec2 p = start;
    double t0 = 0.0;
    for (auto [sign, duration] : plan_segments(plan)) {
        if (duration == 0.0) continue;
        const auto steps = static_cast<long long>(std::floor(duration / sample_step));
        for (long long j = 1; j <= steps; ++j) {
            const double local = j * sample_step;
            if (local >= duration) break;
            out.polyline.push_back({t0 + local, arc_end(p, sign, local)});
        }
        p = arc_end(p, sign, duration);
        t0 += duration;
        out.polyline.push_back({t0, p});
    }
    // Composed arc times can drift from total_time by rounding only; pin the
    // final sample to the plan's own total.
    out.polyline.back().t = plan.total_time;
    out.endpoint = p;
    return out;
}

}  // namespace ftoc
