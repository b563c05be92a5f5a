#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thurston/numeric.hpp"

namespace thurston::hyp {

/// Orientation-preserving isometry of the upper half-plane, stored as a real
/// 2x2 matrix with determinant one after normalization.
using Isom2 = Eigen::Matrix2d;

inline Isom2 normalized(const Isom2& m) {
    const double det = m.determinant();
    if (!(det > 0.0)) throw std::domain_error("Isom2: determinant must be positive");
    return m / std::sqrt(det);
}

inline double det_residual(const Isom2& m) {
    return std::abs(m.determinant() - 1.0);
}

/// Geodesic length of a hyperbolic element from its trace, l = 2 arcosh(|tr|/2).
inline double trace_to_length(double tr) {
    const double a = std::abs(tr);
    if (!(a > 2.0)) throw std::domain_error("trace_to_length: non-hyperbolic element");
    return 2.0 * std::acosh(a / 2.0);
}

/// Total length of the composite horocyclic segment spiralling into a closed
/// geodesic of length ell: 1 + e^{-ell} + e^{-2 ell} + ... = (1 - e^{-ell})^{-1}.
inline double spiral_horolength(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("spiral_horolength: length must be positive");
    return 1.0 / (-std::expm1(-ell));
}

/// Horocyclic length across a crown with interior shears s_1..s_{n-1} around a
/// core of length ell_alpha: (1 + e^{-s1} + e^{-(s1+s2)} + ...) / (1 - e^{-ell_alpha}).
inline double component_ratio(std::span<const double> shears, double ell_alpha) {
    if (!(ell_alpha > 0.0)) throw std::domain_error("component_ratio: core length must be positive");
    double numer = 1.0, acc = 0.0;
    for (double s : shears) {
        acc += s;
        numer += std::exp(-acc);
    }
    return numer / (-std::expm1(-ell_alpha));
}

/// Parameters of one composite horocyclic segment: core length, interior
/// shears, the two anchor offsets, and the stretch time.
struct SpiralConfig {
    double closed_length = 1.0;
    std::vector<double> shears;
    double d1 = 0.0;
    double d2 = 0.0;
    double t = 0.0;
};

/// Length of the segment after the e^t-stretch,
/// (e^{-e^t d1} + e^{-e^t d2}) / (1 - e^{-e^t ell}).
inline double stretched_horolength(const SpiralConfig& cfg) {
    if (!(cfg.closed_length > 0.0))
        throw std::domain_error("stretched_horolength: core length must be positive");
    const double k = std::exp(cfg.t);
    return (std::exp(-k * cfg.d1) + std::exp(-k * cfg.d2)) / (-std::expm1(-k * cfg.closed_length));
}

/// t-derivative of stretched_horolength at t = 0.
inline double horolength_derivative(const SpiralConfig& cfg) {
    const double ell = cfg.closed_length;
    if (!(ell > 0.0)) throw std::domain_error("horolength_derivative: core length must be positive");
    const double denom = -std::expm1(-ell);
    const double e1 = std::exp(-cfg.d1), e2 = std::exp(-cfg.d2);
    return -(cfg.d1 * e1 + cfg.d2 * e2) / denom
           - ell * std::exp(-ell) * (e1 + e2) / (denom * denom);
}

/// Trace 2 cosh(l_gamma / 2) of the curve built from two geodesic segments of
/// lengths lL, lR and four horocyclic segments of lengths h1..h4.
inline double holonomy_trace(double lL, double lR, double h1, double h2, double h3, double h4) {
    if (!(lL > 0.0 && lR > 0.0)) throw std::domain_error("holonomy_trace: segment lengths must be positive");
    return std::exp(0.5 * (lL + lR)) * (1.0 + h1 * h2) * (1.0 + h3 * h4)
         + std::exp(0.5 * (lL - lR)) * h1 * h4
         + std::exp(0.5 * (lR - lL)) * h2 * h3
         + std::exp(-0.5 * (lL + lR));
}

/// Spiralling configuration of the two bi-infinite leaves around the core.
enum class SpiralPattern { Parallel, OppositePlus, OppositeMinus };

/// Develops the stretched arc across the core in the upper half-plane and
/// returns the ideal endpoints (u1, u2) of its geodesic straightening; the
/// stretched twist coordinate is log|u2/u1|.
///
/// The core is developed onto the imaginary axis. For Parallel the midpoint of
/// the arc's geodesic middle segment is pinned at i(1 - e^{-ell0}); for the
/// opposite-spiralling patterns it is pinned at i and the second endpoint
/// comes from the involution z -> -1/z.
inline std::pair<double, double> develop_annulus_cover(double ell0, double tau0,
                                                       SpiralPattern pattern, double t) {
    if (!(ell0 > 0.0)) throw std::domain_error("develop_annulus_cover: degenerate core");
    const double k = std::exp(t);
    const double horo = spiral_horolength(k * ell0);
    switch (pattern) {
    case SpiralPattern::Parallel: {
        const double base = -std::expm1(-ell0); // 1 - e^{-ell0}
        const double y1 = std::exp(-k * tau0 / 2.0) * base;
        const double y2 = std::exp(k * tau0 / 2.0) * base;
        return {-y1 * horo, y2 * horo};
    }
    case SpiralPattern::OppositePlus: {
        // Height of the lower end: distance from i is k(tau0/2 - log(1 - e^{-ell0})).
        const double y1 = std::exp(-(k * tau0 / 2.0 - k * log1mexp(ell0)));
        const double u1 = -y1 * horo;
        return {u1, -1.0 / u1};
    }
    case SpiralPattern::OppositeMinus: {
        auto [u1, u2] = develop_annulus_cover(ell0, -tau0, SpiralPattern::OppositePlus, t);
        return {-u2, -u1};
    }
    }
    throw std::logic_error("develop_annulus_cover: bad pattern");
}

inline double developed_twist(double ell0, double tau0, SpiralPattern pattern, double t) {
    auto [u1, u2] = develop_annulus_cover(ell0, tau0, pattern, t);
    return std::log(std::abs(u2 / u1));
}

/// The four shear values a pants boundary curve of length la can carry,
/// depending on the spiralling directions at lb and lc.
inline std::array<double, 4> pants_shear_values(double la, double lb, double lc) {
    if (la < 0.0 || lb < 0.0 || lc < 0.0)
        throw std::domain_error("pants_shear_values: lengths must be non-negative");
    return {0.5 * std::abs(la + lb + lc),
            0.5 * std::abs(la - lb - lc),
            0.5 * std::abs(la - lb + lc),
            0.5 * std::abs(la + lb - lc)};
}

} // namespace thurston::hyp
