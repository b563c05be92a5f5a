#include "thurston/surface.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace thurston::torus {

namespace {

void check_fd_step(double h) {
    if (!(h >= 1e-7 && h <= 1e-2))
        throw std::domain_error("fd_step must lie in [1e-7, 1e-2]");
}

/// Max of f over the slopes of level <= depth; deterministic fold with
/// slope_less tie-break, recording the last two per-depth increments.
template <class F>
SupReport sup_over_slopes(int depth, F&& f) {
    auto level_max = [&](int d, Slope* arg) {
        double best = 0.0;
        bool first = true;
        for (const Slope& s : enumerate_slopes(d)) {
            const double val = f(s);
            if (first || val > best || (val == best && arg && slope_less(s, *arg))) {
                best = val;
                if (arg) *arg = s;
                first = false;
            }
        }
        return best;
    };
    SupReport rep;
    rep.depth = depth;
    rep.value = level_max(depth, &rep.argmax);
    if (depth >= 2) {
        const double m2 = level_max(depth - 2, nullptr);
        const double m1 = level_max(depth - 1, nullptr);
        rep.increment_prev = m1 - m2;
        rep.increment_last = rep.value - m1;
    }
    return rep;
}

} // namespace

SupReport thurston_distance(const FrickeTriple& x, const FrickeTriple& y, int depth) {
    if (depth < 2) throw std::domain_error("thurston_distance: depth must be >= 2");
    check_triple(x);
    check_triple(y);
    return sup_over_slopes(depth, [&](const Slope& s) {
        return std::log(slope_length(y, s) / slope_length(x, s));
    });
}

SupReport finsler_norm(const ChartPoint& x, const TangentVec& v, int depth, double fd_step) {
    check_fd_step(fd_step);
    const double scale = std::hypot(v.dell, v.dtwist);
    if (scale == 0.0) {
        SupReport rep;
        rep.depth = depth;
        rep.argmax = Slope{0, 1};
        return rep;
    }
    const TangentVec dir{v.dell / scale, v.dtwist / scale};
    SupReport rep = sup_over_slopes(depth, [&](const Slope& s) {
        auto f = [&](double u) {
            return std::log(slope_length(
                fn_to_fricke({x.ell + u * dir.dell, x.twist + u * dir.dtwist}), s));
        };
        return richardson_derivative(f, fd_step);
    });
    rep.value *= scale;
    rep.increment_prev *= scale;
    rep.increment_last *= scale;
    return rep;
}

Covector covector_sample(const ChartPoint& x, const Slope& s, double fd_step) {
    check_fd_step(fd_step);
    auto fl = [&](double u) { return std::log(slope_length(fn_to_fricke({x.ell + u, x.twist}), s)); };
    auto ft = [&](double u) { return std::log(slope_length(fn_to_fricke({x.ell, x.twist + u}), s)); };
    return {richardson_derivative(fl, fd_step), richardson_derivative(ft, fd_step)};
}

FlowResult stretch_flow(const ChartPoint& x, SpiralPattern pattern, const Slope& gamma,
                        double t, int depth) {
    const annulus::AnnulusMetric11 m0{x.ell, x.twist};
    const annulus::AnnulusMetric11 m1 = annulus::stretch11(m0, pattern, t);
    FlowResult out;
    out.point = {m1.ell, m1.twist};

    const FrickeTriple before = fn_to_fricke(x);
    const FrickeTriple after = fn_to_fricke(out.point);
    const SlopeFrame frame = slope_frame(gamma);
    const SupReport sup = sup_over_slopes(depth, [&](const Slope& s) {
        return std::log(slope_length(after, s) / slope_length(before, s));
    });
    out.validation.max_log_ratio = sup.value;
    out.validation.argmax = frame_apply(frame, sup.argmax.p, sup.argmax.q);
    out.validation.deviation = sup.value - t;
    out.validation.flagged = std::abs(out.validation.deviation) > 1e-2;
    return out;
}

FlowTrace backtime_experiment(const ChartPoint& x, SpiralPattern pattern, const Slope& gamma,
                              double s_max, int steps, std::span<const Slope> probes) {
    if (!(s_max > 0.0)) throw std::domain_error("backtime_experiment: s_max must be positive");
    if (steps < 1) throw std::domain_error("backtime_experiment: need at least one step");
    const SlopeFrame frame = slope_frame(gamma);
    FlowTrace trace;
    trace.probes.assign(probes.begin(), probes.end());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k <= steps; ++k) {
        const double s = s_max * k / steps;
        const annulus::AnnulusMetric11 m =
            annulus::stretch11({x.ell, x.twist}, pattern, -s);
        trace.times.push_back(s);
        trace.states.push_back({m.ell, m.twist});
        std::vector<double> row(probes.size(), nan);
        if (!trace.truncated && s > 0.0) {
            try {
                const FrickeTriple tri = fn_to_fricke({m.ell, m.twist});
                for (size_t j = 0; j < probes.size(); ++j) {
                    const Slope in_chart = frame_unapply(frame, probes[j]);
                    row[j] = slope_length(tri, in_chart) / (2.0 * s);
                }
            } catch (const std::overflow_error&) {
                trace.truncated = true;
                std::fill(row.begin(), row.end(), nan);
            } catch (const std::domain_error&) {
                trace.truncated = true;
                std::fill(row.begin(), row.end(), nan);
            }
        }
        trace.probe_norm.push_back(std::move(row));
    }
    return trace;
}

double closed_leaf_length_from_shears(std::span<const double> shears, std::span<const int> signs) {
    if (shears.size() != signs.size())
        throw std::invalid_argument("closed_leaf_length_from_shears: list lengths differ");
    double acc = 0.0;
    for (size_t i = 0; i < shears.size(); ++i) acc += signs[i] * shears[i];
    return acc;
}

ExtractionResult length_extraction(const FrickeTriple& x, const Slope& gamma, const Slope& alpha0,
                                   int m_max, int depth, double fd_step) {
    check_triple(x);
    const long long i0 = intersection_number(gamma, alpha0);
    if (i0 < 1)
        throw std::domain_error("length_extraction: slopes must intersect");
    ExtractionResult out;
    out.intersection = i0;
    double prev_log_norm = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        const Slope alpha_m = dehn_twist(alpha0, gamma, m);
        ExtractionRow row;
        row.m = m;
        try {
            row.ell_m = slope_length(x, alpha_m);
            const double width = annulus::stretch_vector_diff(row.ell_m);
            if (width == 0.0) throw std::overflow_error("width underflow");
            const ChartPoint chart = chart_from_fricke(x, alpha_m);
            // Unit twist vector along alpha_m: the twist vector of the
            // unit-length weighted curve, (0, 1/ell_m) in its own chart.
            const SupReport nrm = finsler_norm(chart, {0.0, 1.0 / row.ell_m}, depth, fd_step);
            row.norm_diff = width * nrm.value;
            const double log_norm = std::log(width) + std::log(nrm.value);
            row.estimate = -log_norm / (static_cast<double>(i0) * m);
            row.estimate_step =
                m == 1 ? row.estimate : -(log_norm - prev_log_norm) / static_cast<double>(i0);
            prev_log_norm = log_norm;
        } catch (const std::overflow_error&) {
            out.truncated = true;
            break;
        }
        out.rows.push_back(row);
    }
    return out;
}

} // namespace thurston::torus
