#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace thurston::torus {

/// Isotopy class of an essential simple closed curve on the once-punctured
/// torus, as a reduced fraction p/q with q > 0, or (1,0) for the vertical.
struct Slope {
    long long p = 1;
    long long q = 0;

    friend bool operator==(const Slope&, const Slope&) = default;
};

inline Slope make_slope(long long p, long long q) {
    if (p == 0 && q == 0) throw std::domain_error("make_slope: (0,0) is not a slope");
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    const long long g = std::gcd(p < 0 ? -p : p, q);
    return {p / g, q / g};
}

inline std::string to_string(const Slope& s) {
    return std::to_string(s.p) + "/" + std::to_string(s.q);
}

inline Slope parse_slope(const std::string& text) {
    const auto pos = text.find('/');
    if (pos == std::string::npos) return make_slope(std::stoll(text), 1);
    return make_slope(std::stoll(text.substr(0, pos)), std::stoll(text.substr(pos + 1)));
}

/// Algebraic pairing p1 q2 - q1 p2.
inline long long symplectic(const Slope& a, const Slope& b) {
    return a.p * b.q - a.q * b.p;
}

/// Geometric intersection number |p1 q2 - p2 q1|.
inline long long intersection_number(const Slope& a, const Slope& b) {
    const long long d = symplectic(a, b);
    return d < 0 ? -d : d;
}

/// Orders by value on the real line with 1/0 = infinity last; total and
/// deterministic, used as the tie-break order for all slope-indexed maxima.
inline bool slope_less(const Slope& a, const Slope& b) {
    if (a.q == 0 && b.q == 0) return false;
    if (a.q == 0) return false;
    if (b.q == 0) return true;
    if (a.p * b.q != b.p * a.q) return a.p * b.q < b.p * a.q;
    return false;
}

/// All slopes of Farey level <= depth: level 0 is {0/1, 1/0} and each level
/// inserts the mediants of the previous tessellation edges on both sides of
/// the base edge. Sorted by slope_less.
inline std::vector<Slope> enumerate_slopes(int depth) {
    if (depth < 0) throw std::domain_error("enumerate_slopes: depth must be non-negative");
    if (depth > 20) throw std::domain_error("enumerate_slopes: depth above 20 (2M slopes) is not supported");
    std::vector<Slope> out{make_slope(0, 1), make_slope(1, 0)};
    struct Edge { long long lp, lq, rp, rq; int level; };
    std::vector<Edge> stack;
    stack.push_back({0, 1, 1, 0, 1});   // positive side of the base edge
    stack.push_back({1, 0, 0, -1, 1});  // negative side
    while (!stack.empty()) {
        const Edge e = stack.back();
        stack.pop_back();
        if (e.level > depth) continue;
        const long long mp = e.lp + e.rp, mq = e.lq + e.rq;
        out.push_back(make_slope(mp, mq));
        stack.push_back({e.lp, e.lq, mp, mq, e.level + 1});
        stack.push_back({mp, mq, e.rp, e.rq, e.level + 1});
    }
    std::sort(out.begin(), out.end(), [](const Slope& a, const Slope& b) { return slope_less(a, b); });
    return out;
}

/// Integer frame M = [s | d] in SL(2,Z) whose first column is the slope; the
/// second column d is the extended-gcd dual with symplectic(s, d) = 1.
struct SlopeFrame {
    Slope curve;
    Slope dual;
};

inline SlopeFrame slope_frame(const Slope& s) {
    // Extended Euclid: find u, v with p u + q v = 1; then d = (-v, u).
    long long old_r = s.p, r = s.q;
    long long old_u = 1, u = 0;
    long long old_v = 0, v = 1;
    while (r != 0) {
        const long long qt = old_r / r;
        long long tmp = old_r - qt * r; old_r = r; r = tmp;
        tmp = old_u - qt * u; old_u = u; u = tmp;
        tmp = old_v - qt * v; old_v = v; v = tmp;
    }
    if (old_r < 0) { old_u = -old_u; old_v = -old_v; old_r = -old_r; }
    if (old_r != 1) throw std::logic_error("slope_frame: slope is not primitive");
    return {s, Slope{-old_v, old_u}};
}

/// Column vector of the frame applied to an integer pair: in-chart slope
/// (x, y) corresponds to the surface slope x * curve + y * dual.
inline Slope frame_apply(const SlopeFrame& f, long long x, long long y) {
    return make_slope(x * f.curve.p + y * f.dual.p, x * f.curve.q + y * f.dual.q);
}

/// Inverse frame action (adjugate; the frame has determinant one).
inline Slope frame_unapply(const SlopeFrame& f, const Slope& s) {
    const long long x = f.dual.q * s.p - f.dual.p * s.q;
    const long long y = -f.curve.q * s.p + f.curve.p * s.q;
    return make_slope(x, y);
}

/// Image of a under m Dehn twists along gamma: a + m <a, gamma> gamma.
inline Slope dehn_twist(const Slope& a, const Slope& gamma, long long m) {
    const long long w = symplectic(a, gamma);
    return make_slope(a.p + m * w * gamma.p, a.q + m * w * gamma.q);
}

} // namespace thurston::torus
