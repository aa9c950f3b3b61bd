#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftoc/dynamics.hpp"
#include "ftoc/fuzzy_time.hpp"

namespace ftoc {

// Fixed 6-decimal formatting, locale-independent. All emitted artifacts use
// this so reruns are byte-identical.
inline std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return buf + 1;
    return buf;
}

// Full-precision round-trippable formatting, used where a value must be
// reconstructed exactly (trajectory plan headers).
inline std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_membership_csv(std::ostream& out, const FuzzyTimeResult& result) {
    out << "alpha,t_lower,t_upper,p_min_x1,p_min_x2,q_min_x1,q_min_x2,"
           "p_max_x1,p_max_x2,q_max_x1,q_max_x2\n";
    for (const LevelResult& level : result.levels) {
        out << format_fixed(level.alpha) << ',' << format_fixed(level.t_lo) << ','
            << format_fixed(level.t_hi) << ',' << format_fixed(level.p_min.x) << ','
            << format_fixed(level.p_min.y) << ',' << format_fixed(level.q_min.x) << ','
            << format_fixed(level.q_min.y) << ',' << format_fixed(level.p_max.x) << ','
            << format_fixed(level.p_max.y) << ',' << format_fixed(level.q_max.x) << ','
            << format_fixed(level.q_max.y) << '\n';
    }
}

inline void create_parent_dirs(const std::string& path) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

inline void write_file(const std::string& path, const std::string& content) {
    create_parent_dirs(path);
    // Binary mode keeps line endings as written (LF).
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

inline std::string plan_description(const BangBangPlan& plan) {
    std::ostringstream out;
    out << "start_sign=" << value(plan.start_sign) << " switches=" << plan.num_switches
        << " first=" << format_fixed(plan.first_duration)
        << " last=" << format_fixed(plan.last_duration)
        << " total=" << format_fixed(plan.total_time);
    return out.str();
}

inline std::string render_summary(const FuzzyProblem& problem, const FuzzyTimeResult& result) {
    std::ostringstream out;
    auto tri = [](const TriangularFuzzyNumber& n) {
        return "(" + format_fixed(n.left()) + ", " + format_fixed(n.peak()) + ", " +
               format_fixed(n.right()) + ")";
    };
    out << "fuzzy minimum-time transfer summary\n";
    out << "start:  x1=" << tri(problem.start.x1) << " x2=" << tri(problem.start.x2) << "\n";
    out << "target: x1=" << tri(problem.target.x1) << " x2=" << tri(problem.target.x2) << "\n";
    out << "alpha levels: " << problem.alpha_levels.size()
        << ", nodes per edge: " << problem.nodes_per_edge << "\n\n";
    out << "alpha     t_lower     t_upper\n";
    for (const LevelResult& level : result.levels) {
        out << format_fixed(level.alpha) << "  " << format_fixed(level.t_lo) << "  "
            << format_fixed(level.t_hi) << "\n";
    }
    const LevelResult& support = result.levels.front();
    const LevelResult& core = result.levels.back();
    out << "\nsupport: [" << format_fixed(support.t_lo) << ", " << format_fixed(support.t_hi)
        << "]\n";
    out << "core time: " << format_fixed(core.t_lo) << "\n";
    out << "support argmin: p=(" << format_fixed(support.p_min.x) << ", "
        << format_fixed(support.p_min.y) << ") q=(" << format_fixed(support.q_min.x) << ", "
        << format_fixed(support.q_min.y) << ")\n";
    out << "support argmax: p=(" << format_fixed(support.p_max.x) << ", "
        << format_fixed(support.p_max.y) << ") q=(" << format_fixed(support.q_max.x) << ", "
        << format_fixed(support.q_max.y) << ")\n";
    if (!result.warnings.empty()) {
        out << "\nwarnings:\n";
        for (const std::string& w : result.warnings) out << "  " << w << "\n";
    }
    return out.str();
}

// Trajectory file: a comment header carrying the start state and plan at full
// precision (so the motion can be reconstructed exactly), then (t, x1, x2)
// rows in the fixed 6-decimal format.
inline std::string render_trajectory(Vec2 start, const BangBangPlan& plan,
                                     const SimulationResult& sim) {
    std::ostringstream out;
    out << "# start " << format_exact(start.x) << ' ' << format_exact(start.y) << '\n';
    out << "# plan sign=" << value(plan.start_sign) << " switches=" << plan.num_switches
        << " first=" << format_exact(plan.first_duration)
        << " last=" << format_exact(plan.last_duration) << '\n';
    for (const Vec2& sp : plan.switch_points) {
        out << "# switch " << format_exact(sp.x) << ' ' << format_exact(sp.y) << '\n';
    }
    out << "t,x1,x2\n";
    for (const TrajectorySample& sample : sim.polyline) {
        out << format_fixed(sample.t) << ',' << format_fixed(sample.state.x) << ','
            << format_fixed(sample.state.y) << '\n';
    }
    return out.str();
}

struct TrajectoryFile {
    Vec2 start;
    BangBangPlan plan;
    std::vector<TrajectorySample> samples;
};

inline TrajectoryFile read_trajectory(std::istream& in) {
    TrajectoryFile file;
    std::string line;
    ControlSign sign = ControlSign::minus;
    double first = 0.0, last = 0.0;
    int switches = 0;
    std::vector<Vec2> points;
    bool have_start = false, have_plan = false;
    while (std::getline(in, line)) {
        if (line.rfind("# start ", 0) == 0) {
            std::istringstream ss(line.substr(8));
            ss >> file.start.x >> file.start.y;
            have_start = true;
        } else if (line.rfind("# plan ", 0) == 0) {
            int sign_value = 0;
            if (std::sscanf(line.c_str(), "# plan sign=%d switches=%d first=%lf last=%lf",
                            &sign_value, &switches, &first, &last) != 4) {
                throw std::runtime_error("trajectory: malformed plan header");
            }
            sign = sign_value < 0 ? ControlSign::minus : ControlSign::plus;
            have_plan = true;
        } else if (line.rfind("# switch ", 0) == 0) {
            std::istringstream ss(line.substr(9));
            Vec2 p;
            ss >> p.x >> p.y;
            points.push_back(p);
        } else if (!line.empty() && line[0] != '#' && line != "t,x1,x2") {
            TrajectorySample sample;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &sample.t, &sample.state.x,
                            &sample.state.y) == 3) {
                file.samples.push_back(sample);
            }
        }
    }
    if (!have_start || !have_plan || static_cast<int>(points.size()) != switches) {
        throw std::runtime_error("trajectory: incomplete header");
    }
    file.plan = make_plan(sign, first, std::move(points), last);
    return file;
}

}  // namespace ftoc
