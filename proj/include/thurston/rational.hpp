#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace thurston::convex {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RatVec = std::vector<Rational>;

inline Rational parse_rational(const std::string& text) {
    const auto pos = text.find('/');
    if (pos == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, pos)), BigInt(text.substr(pos + 1)));
}

inline std::string to_string(const Rational& r) {
    return r.str();
}

/// Nearest rational with the declared denominator bound (default 1e9):
/// round(x * den) / den.
inline Rational rationalize(double x, long long den = 1000000000LL) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite value");
    const double scaled = std::round(x * static_cast<double>(den));
    if (std::abs(scaled) > 9.0e18) throw std::domain_error("rationalize: value too large");
    return Rational(BigInt(static_cast<long long>(scaled)), BigInt(den));
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// Rank of a list of row vectors by Gaussian elimination over the rationals.
inline int rank(std::vector<RatVec> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        for (size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            const Rational f = rows[i][c] / rows[r][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

/// One-dimensional kernel of a list of row vectors (the rows must have rank
/// dim-1); returns a spanning vector, or empty if the kernel is not a line.
inline RatVec kernel_line(const std::vector<RatVec>& rows, size_t dim) {
    std::vector<RatVec> m = rows;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < dim && r < m.size(); ++c) {
        size_t pivot = r;
        while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[r], m[pivot]);
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c] / m[r][c];
            for (size_t j = 0; j < dim; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r + 1 != dim) return {};
    // The lone free column determines the kernel vector.
    std::vector<bool> is_pivot(dim, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t free_col = dim;
    for (size_t c = 0; c < dim; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    RatVec v(dim, Rational(0));
    v[free_col] = 1;
    for (size_t i = 0; i < r; ++i) {
        // Row i reads m[i][pivot_col[i]] * v[pivot] + m[i][free_col] * 1 = 0.
        v[pivot_col[i]] = -m[i][free_col] / m[i][pivot_col[i]];
    }
    return v;
}

/// Canonical integer form of (normal, offset): scaled so entries are coprime
/// integers; orientation (sign) is preserved.
inline void canonicalize_functional(RatVec& normal, Rational& offset) {
    BigInt lcm = 1;
    auto fold = [&lcm](const Rational& r) {
        const BigInt d = denominator(r);
        lcm = lcm / gcd(lcm, d) * d;
    };
    for (const Rational& r : normal) fold(r);
    fold(offset);
    BigInt g = 0;
    auto foldg = [&g, &lcm](const Rational& r) {
        const BigInt n = numerator(r) * (lcm / denominator(r));
        g = gcd(g, n < 0 ? BigInt(-n) : n);
    };
    for (const Rational& r : normal) foldg(r);
    foldg(offset);
    if (g == 0) g = 1;
    const Rational scale(lcm, g);
    for (Rational& r : normal) r *= scale;
    offset *= scale;
}

} // namespace thurston::convex
