#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ftoc/dynamics.hpp"
#include "ftoc/geometry.hpp"

namespace ftoc {

// Search configuration for the structural brute-force oracle. The reported
// time is accurate to about accept_radius + 2*pi / min(tau_steps, sigma_steps).
struct OracleConfig {
    int tau_steps = 512;       // grid over the first arc duration in [0, 2*pi)
    int sigma_steps = 512;     // grid over the last arc duration in [0, 2*pi)
    int k_max_search = 8;      // switch counts 0..k_max_search
    double accept_radius = 0.02;
    int refine_iters = 30;
};

inline void validate(const OracleConfig& cfg) {
    if (cfg.tau_steps < 1 || cfg.sigma_steps < 1 || cfg.refine_iters < 1 ||
        cfg.k_max_search < 0 || !(cfg.accept_radius > 0.0)) {
        throw std::invalid_argument("OracleConfig: counts must be >= 1 and accept_radius > 0");
    }
}

struct OracleMissError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    double time = 0.0;
    BangBangPlan plan;
    double endpoint_error = 0.0;
};

namespace oracle_detail {

// Point reached after the first arc and the k-1 interior pi-arcs (each a
// central symmetry about the alternating centers), before the last arc.
inline Vec2 chain_point(Vec2 start, ControlSign sign, int k, double tau) {
    Vec2 p = arc_end(start, sign, tau);
    for (int i = 1; i < k; ++i) {
        const Vec2 c = arc_center(sign_after(sign, i));
        p = {2.0 * c.x - p.x, -p.y};
    }
    return p;
}

inline Vec2 endpoint(Vec2 start, ControlSign sign, int k, double tau, double sigma) {
    Vec2 p = chain_point(start, sign, k, tau);
    if (k >= 1) p = arc_end(p, sign_after(sign, k), sigma);
    return p;
}

struct Seed {
    double tau = 0.0;
    double sigma = 0.0;
    double err = 0.0;
};

inline double clamp_duration(double d) {
    if (d < 0.0) return 0.0;
    if (d >= kTwoPi) return std::nextafter(kTwoPi, 0.0);
    return d;
}

// Last-arc duration that brings the chain point as close to the target as a
// rotation about the last center can: the clockwise angle aligning the two
// rays. Degenerate radii leave the duration at zero.
inline double aligned_sigma(Vec2 chain_pt, Vec2 last_center, Vec2 target) {
    const double rho_sq = distance_sq(chain_pt, last_center);
    const double r2_sq = distance_sq(target, last_center);
    if (rho_sq == 0.0 || r2_sq == 0.0) return 0.0;
    return clockwise_angle(last_center, chain_pt, target);
}

// Alternating coordinate minimization from a grid seed: sigma is set to its
// exact conditional minimizer (ray alignment), tau is improved by an
// interval-halving probe per round. Converges onto a nearby exact solution
// when the seed's basin contains one; otherwise the residual stays large and
// the candidate is dropped by the caller.
inline Seed refine_seed(Vec2 start, Vec2 target, ControlSign sign, int k, Seed seed,
                        double tau_halfwidth, int rounds) {
    const Vec2 last_center = arc_center(sign_after(sign, k));
    auto evaluate = [&](double tau) -> Seed {
        Seed out;
        out.tau = tau;
        const Vec2 chain_pt = chain_point(start, sign, k, tau);
        out.sigma = k >= 1 ? aligned_sigma(chain_pt, last_center, target) : 0.0;
        const Vec2 end =
            k >= 1 ? arc_end(chain_pt, sign_after(sign, k), out.sigma) : chain_pt;
        out.err = distance(end, target);
        return out;
    };
    Seed best = evaluate(seed.tau);
    double width = tau_halfwidth;
    for (int round = 0; round < rounds; ++round) {
        for (double delta : {-width, width}) {
            const Seed probe = evaluate(clamp_duration(best.tau + delta));
            if (probe.err < best.err) best = probe;
        }
        width *= 0.5;
    }
    return best;
}

inline BangBangPlan plan_from(Vec2 start, ControlSign sign, int k, double tau, double sigma) {
    std::vector<Vec2> switches;
    if (k >= 1) {
        Vec2 p = arc_end(start, sign, tau);
        switches.push_back(p);
        for (int i = 1; i < k; ++i) {
            const Vec2 c = arc_center(sign_after(sign, i));
            p = {2.0 * c.x - p.x, -p.y};
            switches.push_back(p);
        }
    }
    return make_plan(sign, tau, std::move(switches), k >= 1 ? sigma : 0.0);
}

}  // namespace oracle_detail

// Structural brute force: trusts only that optimal controls are bang-bang
// with pi-spaced interior switches, and searches the first/last arc durations
// on a grid. Plans landing near the target seed a local refinement; the best
// refined plan that still reaches the target within accept_radius wins.
// Independent of the closed-form switch-point algebra by construction.
inline OracleResult brute_force_search(Vec2 start, Vec2 target, const OracleConfig& cfg) {
    using namespace oracle_detail;
    validate(cfg);

    const double tau_step = kTwoPi / cfg.tau_steps;
    const double sigma_step = kTwoPi / cfg.sigma_steps;
    constexpr int kMaxSeedsPerBucket = 32;

    std::optional<OracleResult> best;
    std::vector<double> err_grid;
    std::vector<Vec2> chain_points(static_cast<std::size_t>(cfg.tau_steps));

    // Refined candidates must essentially reach the target: accepting plans
    // that merely enter the coarse acceptance ball would bias the minimum
    // downward (stopping short can save sqrt-of-radius time near tangency).
    // The floor scales with what the halving schedule can resolve.
    auto refined_accept = [&](double r1) {
        const double resolvable =
            4.0 * std::max(r1, 1.0) * tau_step * std::pow(0.5, cfg.refine_iters);
        return std::min(cfg.accept_radius, std::max(1e-6, resolvable));
    };

    auto consider = [&](ControlSign sign, int k, const Seed& refined) {
        const double accept = refined_accept(distance(start, arc_center(sign)));
        if (refined.err > accept) return;
        BangBangPlan plan = plan_from(start, sign, k, refined.tau, refined.sigma);
        const double err = distance(plan_endpoint(start, plan), target);
        if (err > accept) return;
        const double time = plan.total_time;
        if (!best || time < best->time) {
            best = OracleResult{time, std::move(plan), err};
        }
    };

    for (ControlSign sign : {ControlSign::minus, ControlSign::plus}) {
        for (int k = 0; k <= cfg.k_max_search; ++k) {
            if (k == 0) {
                // Single arc: 1-D sweep over tau.
                std::vector<Seed> seeds;
                err_grid.assign(static_cast<std::size_t>(cfg.tau_steps), 0.0);
                const double r1 = distance(start, arc_center(sign));
                for (int i = 0; i < cfg.tau_steps; ++i) {
                    err_grid[i] = distance(endpoint(start, sign, 0, i * tau_step, 0.0), target);
                }
                const double threshold = cfg.accept_radius + r1 * tau_step;
                for (int i = 0; i < cfg.tau_steps; ++i) {
                    const double left = err_grid[(i + cfg.tau_steps - 1) % cfg.tau_steps];
                    const double right = err_grid[(i + 1) % cfg.tau_steps];
                    if (err_grid[i] <= threshold && err_grid[i] <= left && err_grid[i] <= right) {
                        seeds.push_back({i * tau_step, 0.0, err_grid[i]});
                    }
                }
                std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
                    return std::make_pair(a.err, a.tau) < std::make_pair(b.err, b.tau);
                });
                if (seeds.size() > kMaxSeedsPerBucket) seeds.resize(kMaxSeedsPerBucket);
                for (const Seed& seed : seeds) {
                    consider(sign, 0,
                             refine_seed(start, target, sign, 0, seed, tau_step,
                                         cfg.refine_iters));
                }
                continue;
            }

            const Vec2 last_center = arc_center(sign_after(sign, k));
            double max_rho = 0.0;
            for (int i = 0; i < cfg.tau_steps; ++i) {
                chain_points[i] = chain_point(start, sign, k, i * tau_step);
                max_rho = std::max(max_rho, distance(chain_points[i], last_center));
            }
            const double r1 = distance(start, arc_center(sign));
            const double threshold =
                cfg.accept_radius + r1 * tau_step + max_rho * sigma_step;

            err_grid.assign(
                static_cast<std::size_t>(cfg.tau_steps) * cfg.sigma_steps, 0.0);
            for (int j = 0; j < cfg.sigma_steps; ++j) {
                const double co = std::cos(j * sigma_step);
                const double si = std::sin(j * sigma_step);
                for (int i = 0; i < cfg.tau_steps; ++i) {
                    const double vx = chain_points[i].x - last_center.x;
                    const double vy = chain_points[i].y - last_center.y;
                    const double ex = last_center.x + vx * co + vy * si;
                    const double ey = last_center.y - vx * si + vy * co;
                    const double dx = ex - target.x;
                    const double dy = ey - target.y;
                    err_grid[static_cast<std::size_t>(i) * cfg.sigma_steps + j] =
                        std::sqrt(dx * dx + dy * dy);
                }
            }

            std::vector<Seed> seeds;
            auto at = [&](int i, int j) {
                i = (i + cfg.tau_steps) % cfg.tau_steps;
                j = (j + cfg.sigma_steps) % cfg.sigma_steps;
                return err_grid[static_cast<std::size_t>(i) * cfg.sigma_steps + j];
            };
            for (int i = 0; i < cfg.tau_steps; ++i) {
                for (int j = 0; j < cfg.sigma_steps; ++j) {
                    const double e = at(i, j);
                    if (e > threshold) continue;
                    if (e <= at(i - 1, j) && e <= at(i + 1, j) && e <= at(i, j - 1) &&
                        e <= at(i, j + 1)) {
                        seeds.push_back({i * tau_step, j * sigma_step, e});
                    }
                }
            }
            std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
                return std::make_tuple(a.err, a.tau, a.sigma) <
                       std::make_tuple(b.err, b.tau, b.sigma);
            });
            if (seeds.size() > kMaxSeedsPerBucket) seeds.resize(kMaxSeedsPerBucket);
            for (const Seed& seed : seeds) {
                consider(sign, k,
                         refine_seed(start, target, sign, k, seed, tau_step,
                                     cfg.refine_iters));
            }
        }
    }

    if (!best) {
        throw OracleMissError("brute_force_search: no plan reached the target within accept_radius; "
                              "the configured grid is too coarse");
    }
    return *best;
}

inline double brute_force_min_time(Vec2 start, Vec2 target, const OracleConfig& cfg) {
    return brute_force_search(start, target, cfg).time;
}

}  // namespace ftoc
