#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "thurston/hyp_core.hpp"
#include "thurston/numeric.hpp"

namespace thurston::annulus {

using hyp::SpiralPattern;

/// Fenchel-Nielsen data of a (1,1)-crowned annulus.
struct AnnulusMetric11 {
    double ell;
    double twist;
};

/// An (nL,nR)-crowned annulus. Only the interior shears are stored; the last
/// shear on each side is determined by the constraint that the spiralling
/// shears sum to ell.
struct CrownedAnnulusMetric {
    int n_left = 1;
    int n_right = 1;
    double ell = 1.0;
    double twist = 0.0;
    std::vector<double> shears_left;   // size n_left - 1
    std::vector<double> shears_right;  // size n_right - 1
};

inline void check(const CrownedAnnulusMetric& m) {
    if (m.n_left < 1 || m.n_right < 1)
        throw std::domain_error("CrownedAnnulusMetric: need at least one boundary cusp per side");
    if (!(m.ell > 0.0)) throw std::domain_error("CrownedAnnulusMetric: core length must be positive");
    if (static_cast<int>(m.shears_left.size()) != m.n_left - 1 ||
        static_cast<int>(m.shears_right.size()) != m.n_right - 1)
        throw std::domain_error("CrownedAnnulusMetric: interior shear count mismatch");
}

/// Determined (non-interior) shear on one side: the spiralling shears sum to ell.
inline double determined_shear(double ell, std::span<const double> interior) {
    double s = ell;
    for (double v : interior) s -= v;
    return s;
}

namespace detail {

/// log(1 + e^{-K S_1} + e^{-K S_2} + ...) over the partial sums S_j of the
/// interior shears, evaluated as a shifted log-sum-exp so large negative
/// partial sums do not overflow.
inline double log_crown_sum(std::span<const double> shears, double k) {
    double acc = 0.0, lo = 0.0;
    std::vector<double> expo{0.0};
    expo.reserve(shears.size() + 1);
    for (double s : shears) {
        acc += s;
        expo.push_back(k * acc);
        lo = std::min(lo, k * acc);
    }
    double sum = 0.0;
    for (double e : expo) sum += std::exp(-(e - lo));
    return -lo + std::log(sum);
}

/// 2(log(1 - e^{-K ell}) - K log(1 - e^{-ell})), the opposite-spiralling
/// twist correction.
inline double opposite_correction(double ell, double k) {
    return 2.0 * (log1mexp(k * ell) - k * log1mexp(ell));
}

} // namespace detail

/// e^t-stretch of a (1,1)-crowned annulus.
inline AnnulusMetric11 stretch11(const AnnulusMetric11& m, SpiralPattern p, double t) {
    if (!(m.ell > 0.0)) throw std::domain_error("stretch11: core length must be positive");
    const double k = std::exp(t);
    switch (p) {
    case SpiralPattern::Parallel:
        return {k * m.ell, k * m.twist};
    case SpiralPattern::OppositePlus:
        return {k * m.ell, k * m.twist + detail::opposite_correction(m.ell, k)};
    case SpiralPattern::OppositeMinus:
        return {k * m.ell, k * m.twist - detail::opposite_correction(m.ell, k)};
    }
    throw std::logic_error("stretch11: bad pattern");
}

/// e^t-stretch along the parallel-spiralling lamination (sign +1 picks the
/// direction of the core, -1 the reverse).
inline CrownedAnnulusMetric stretch_parallel(const CrownedAnnulusMetric& m, int sign, double t) {
    check(m);
    if (sign != 1 && sign != -1) throw std::domain_error("stretch_parallel: sign must be +-1");
    const double k = std::exp(t);
    CrownedAnnulusMetric out = m;
    out.ell = k * m.ell;
    for (double& s : out.shears_left) s *= k;
    for (double& s : out.shears_right) s *= k;
    const double corr = k * detail::log_crown_sum(m.shears_left, 1.0)
                      - detail::log_crown_sum(m.shears_left, k)
                      - k * detail::log_crown_sum(m.shears_right, 1.0)
                      + detail::log_crown_sum(m.shears_right, k);
    out.twist = k * m.twist + sign * corr;
    return out;
}

/// e^t-stretch along the opposite-spiralling lamination.
inline CrownedAnnulusMetric stretch_opposite(const CrownedAnnulusMetric& m, int sign, double t) {
    check(m);
    if (sign != 1 && sign != -1) throw std::domain_error("stretch_opposite: sign must be +-1");
    const double k = std::exp(t);
    CrownedAnnulusMetric out = m;
    out.ell = k * m.ell;
    for (double& s : out.shears_left) s *= k;
    for (double& s : out.shears_right) s *= k;
    const double corr = detail::opposite_correction(m.ell, k)
                      + k * detail::log_crown_sum(m.shears_left, 1.0)
                      - detail::log_crown_sum(m.shears_left, k)
                      + k * detail::log_crown_sum(m.shears_right, 1.0)
                      - detail::log_crown_sum(m.shears_right, k);
    out.twist = k * m.twist + sign * corr;
    return out;
}

/// ell e^{-ell}/(1 - e^{-ell}) - log(1 - e^{-ell}); the closed-leaf derivative
/// contribution of the opposite-spiralling correction.
inline double type_one_term(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("type_one_term: length must be positive");
    return ell * expm1_ratio(ell) - log1mexp(ell);
}

/// t-derivative at 0 of the stretch path, (dl, dtau).
inline std::pair<double, double> stretch_vector11(const AnnulusMetric11& m, SpiralPattern p) {
    if (!(m.ell > 0.0)) throw std::domain_error("stretch_vector11: core length must be positive");
    switch (p) {
    case SpiralPattern::Parallel:
        return {m.ell, m.twist};
    case SpiralPattern::OppositePlus:
        return {m.ell, m.twist + 2.0 * type_one_term(m.ell)};
    case SpiralPattern::OppositeMinus:
        return {m.ell, m.twist - 2.0 * type_one_term(m.ell)};
    }
    throw std::logic_error("stretch_vector11: bad pattern");
}

/// Twist component of v_{Lambda+} - v_{Lambda-} on a core of length ell.
inline double stretch_vector_diff(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("stretch_vector_diff: length must be positive");
    return 4.0 * type_one_term(ell);
}

/// Leading behaviour 4 ell e^{-ell} of stretch_vector_diff as ell grows.
inline double asymptotic_coeff(double ell) {
    return 4.0 * ell * std::exp(-ell);
}

/// Derivative of the crown-sum correction with exponents u, v, w. Evaluated
/// after shifting by the smallest exponent, which both matches the proof's
/// rescaling and keeps every term non-negative in floating point.
inline double type_two_term(double u, double v, double w) {
    const double lo = std::min({0.0, u, v, w});
    const double b0 = -lo, b1 = u - lo, b2 = v - lo, b3 = w - lo;
    const double e0 = std::exp(-b0), e1 = std::exp(-b1), e2 = std::exp(-b2), e3 = std::exp(-b3);
    const double total = e0 + e1 + e2 + e3;
    return std::log(total) + (b0 * e0 + b1 * e1 + b2 * e2 + b3 * e3) / total;
}

/// Curve of length ell_alpha with pairs of pants glued on both sides.
struct TwistWidthInput {
    double ell_alpha;
    double beta_left, gamma_left;
    double beta_right, gamma_right;
};

/// (v_{Lambda+} - v_{Lambda-})(tau_alpha), assembled from the type one and
/// type two derivative terms with the shears the two laminations induce on
/// each pair of pants.
inline double twist_width(const TwistWidthInput& in) {
    const double la = in.ell_alpha;
    if (!(la > 0.0)) throw std::domain_error("twist_width: curve length must be positive");
    if (in.beta_left < 0.0 || in.gamma_left < 0.0 || in.beta_right < 0.0 || in.gamma_right < 0.0)
        throw std::domain_error("twist_width: pants lengths must be non-negative");
    auto side = [la](double b, double g) {
        const double plus = type_two_term(0.5 * (la - b - g), 0.5 * (la - b + g), la - b);
        const double minus = type_two_term(0.5 * (la + b + g), 0.5 * (la - b + g), la + g);
        return plus + minus;
    };
    return 4.0 * type_one_term(la)
         + side(in.beta_left, in.gamma_left)
         + side(in.beta_right, in.gamma_right);
}

/// Shear assignments the two opposite-spiralling laminations induce on one
/// pair of pants (interior shears of the corresponding 4-cusped crown side).
inline std::vector<double> pants_crown_shears_plus(double la, double b, double g) {
    return {0.5 * (la - b - g), g, 0.5 * (la - b - g)};
}
inline std::vector<double> pants_crown_shears_minus(double la, double b, double g) {
    return {0.5 * (la + b + g), -b, 0.5 * (la + b + g)};
}

} // namespace thurston::annulus
