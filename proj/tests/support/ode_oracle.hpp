#pragma once

// Test-only reference integrator for the controlled pendulum
//   x1' = x2, x2' = -x1 + u
// used to cross-check the closed-form arc geometry. Classic RK4 with a fixed
// step; global error well below 1e-10 for the step sizes used here.

#include <algorithm>
#include <cmath>

#include "ftoc/dynamics.hpp"
#include "ftoc/geometry.hpp"

namespace ftoc::testing {

inline Vec2 pendulum_rhs(Vec2 s, double u) { return {s.y, -s.x + u}; }

inline Vec2 integrate_arc(Vec2 state, double u, double duration, double max_step = 1e-4) {
    if (duration == 0.0) return state;
    const auto steps = static_cast<long long>(std::ceil(duration / max_step));
    const double h = duration / static_cast<double>(steps);
    for (long long i = 0; i < steps; ++i) {
        const Vec2 k1 = pendulum_rhs(state, u);
        const Vec2 k2 = pendulum_rhs(state + (h / 2.0) * k1, u);
        const Vec2 k3 = pendulum_rhs(state + (h / 2.0) * k2, u);
        const Vec2 k4 = pendulum_rhs(state + h * k3, u);
        state = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return state;
}

inline Vec2 integrate_plan(Vec2 state, const BangBangPlan& plan, double max_step = 1e-4) {
    for (auto [sign, duration] : plan_segments(plan)) {
        state = integrate_arc(state, static_cast<double>(value(sign)), duration, max_step);
    }
    return state;
}

}  // namespace ftoc::testing
