#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ftoc/geometry.hpp"

namespace ftoc {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

// Triangular membership function: 0 outside (left, right), 1 at the peak,
// linear on both sides. Degenerate sides (left == peak or peak == right)
// are allowed and represent crisp edges.
class TriangularFuzzyNumber {
  public:
    TriangularFuzzyNumber() = default;  // crisp zero

    TriangularFuzzyNumber(double left, double peak, double right)
        : left_(left), peak_(peak), right_(right) {
        if (!(left <= peak && peak <= right)) {
            throw std::invalid_argument(
                "TriangularFuzzyNumber: requires left <= peak <= right, got (" +
                std::to_string(left) + ", " + std::to_string(peak) + ", " +
                std::to_string(right) + ")");
        }
    }

    double left() const { return left_; }
    double peak() const { return peak_; }
    double right() const { return right_; }

    bool is_crisp() const { return left_ == right_; }

    double membership(double v) const {
        if (v == peak_) return 1.0;
        if (v <= left_ || v >= right_) return 0.0;
        if (v < peak_) return (v - left_) / (peak_ - left_);
        return (right_ - v) / (right_ - peak_);
    }

  private:
    double left_ = 0.0;
    double peak_ = 0.0;
    double right_ = 0.0;
};

// [left + alpha*(peak-left), right - alpha*(right-peak)]. The core cut is
// returned as the exact point [peak, peak] so it collapses bit-exactly.
inline Interval alpha_cut(const TriangularFuzzyNumber& n, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha_cut: alpha must lie in [0, 1], got " +
                                    std::to_string(alpha));
    }
    if (alpha == 1.0) return {n.peak(), n.peak()};
    return {n.left() + alpha * (n.peak() - n.left()),
            n.right() - alpha * (n.right() - n.peak())};
}

struct FuzzyState {
    TriangularFuzzyNumber x1;
    TriangularFuzzyNumber x2;
};

// Axis-aligned rectangle in the phase plane.
struct Rect {
    Interval x1;
    Interval x2;

    bool is_point() const { return x1.is_point() && x2.is_point(); }
    bool is_degenerate() const { return x1.is_point() || x2.is_point(); }
};

inline Rect state_alpha_cut(const FuzzyState& s, double alpha) {
    return {alpha_cut(s.x1, alpha), alpha_cut(s.x2, alpha)};
}

// Equally spaced nodes on the rectangle perimeter: nodes_per_edge per edge,
// walked clockwise from the lower-left corner, each edge including its start
// corner. Zero-area rectangles collapse to their distinct corner points, so a
// point rectangle yields exactly one node.
inline std::vector<Vec2> boundary_nodes(const Rect& r, int nodes_per_edge) {
    if (nodes_per_edge < 1) {
        throw std::invalid_argument("boundary_nodes: nodes_per_edge must be >= 1");
    }
    const Vec2 ll{r.x1.lo, r.x2.lo};
    const Vec2 ul{r.x1.lo, r.x2.hi};
    const Vec2 ur{r.x1.hi, r.x2.hi};
    const Vec2 lr{r.x1.hi, r.x2.lo};

    if (r.is_degenerate()) {
        std::vector<Vec2> nodes{ll};
        for (Vec2 c : {ul, ur, lr}) {
            bool seen = false;
            for (const Vec2& n : nodes) seen = seen || n == c;
            if (!seen) nodes.push_back(c);
        }
        return nodes;
    }

    std::vector<Vec2> nodes;
    nodes.reserve(4 * static_cast<std::size_t>(nodes_per_edge));
    const Vec2 corners[4] = {ll, ul, ur, lr};
    for (int e = 0; e < 4; ++e) {
        const Vec2 a = corners[e];
        const Vec2 b = corners[(e + 1) % 4];
        for (int j = 0; j < nodes_per_edge; ++j) {
            const double t = static_cast<double>(j) / nodes_per_edge;
            nodes.push_back(a + t * (b - a));
        }
    }
    return nodes;
}

struct MembershipLevel {
    double alpha = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

// Alpha-cut family [t_lo(alpha), t_hi(alpha)] of the fuzzy optimal time,
// stored at a finite ascending list of levels with alpha 0 first and 1 last.
struct MembershipCurve {
    std::vector<MembershipLevel> levels;
};

inline void validate(const MembershipCurve& curve) {
    if (curve.levels.empty()) throw std::invalid_argument("MembershipCurve: no levels");
    if (curve.levels.front().alpha != 0.0 || curve.levels.back().alpha != 1.0) {
        throw std::invalid_argument("MembershipCurve: levels must start at alpha=0 and end at alpha=1");
    }
    for (std::size_t i = 0; i < curve.levels.size(); ++i) {
        const auto& lv = curve.levels[i];
        if (lv.t_lo > lv.t_hi) throw std::invalid_argument("MembershipCurve: t_lo > t_hi");
        if (i > 0 && curve.levels[i - 1].alpha >= lv.alpha) {
            throw std::invalid_argument("MembershipCurve: alphas must be strictly increasing");
        }
    }
    const auto& core = curve.levels.back();
    if (core.t_lo != core.t_hi) {
        throw std::invalid_argument("MembershipCurve: alpha=1 cut must be a point");
    }
}

}  // namespace ftoc
