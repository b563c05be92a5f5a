#include "thurston/fricke.hpp"

#include <cmath>
#include <stdexcept>

namespace thurston::torus {

double cusp_residual(const FrickeTriple& x) {
    return std::abs(x.a * x.a + x.b * x.b + x.c * x.c - x.a * x.b * x.c);
}

void check_triple(const FrickeTriple& x, double tol) {
    if (!(x.a > 2.0 && x.b > 2.0 && x.c > 2.0))
        throw std::domain_error("FrickeTriple: traces must exceed 2");
    const double scale = std::abs(x.a * x.b * x.c);
    if (!(cusp_residual(x) <= tol * std::max(1.0, scale)))
        throw std::domain_error("FrickeTriple: cusp relation violated");
}

namespace {

struct ChartParams {
    double a, lambda, p, s;
};

ChartParams chart_params(double ell) {
    if (!(ell > 0.0)) throw std::domain_error("fn_to_fricke: length must be positive");
    const double a = 2.0 * std::cosh(ell / 2.0);
    const double lambda = std::exp(ell / 2.0);
    // sqrt(a - 2) = 2 sinh(ell/4), kept stable for short cores.
    const double root = 2.0 * std::sinh(ell / 4.0);
    const double b0 = a / root;
    const double p = b0 / (1.0 + lambda);
    return {a, lambda, p, p * lambda};
}

} // namespace

FrickeTriple fn_to_fricke(const ChartPoint& x) {
    const ChartParams cp = chart_params(x.ell);
    const double eh = std::exp(x.twist / 2.0), ehm = std::exp(-x.twist / 2.0);
    const FrickeTriple out{cp.a,
                           cp.p * eh + cp.s * ehm,
                           cp.p * cp.lambda * eh + cp.p * ehm};
    if (!std::isfinite(out.b) || !std::isfinite(out.c) || !(out.b > 2.0) || !(out.c > 2.0))
        throw std::domain_error("fn_to_fricke: degenerate structure");
    return out;
}

std::pair<hyp::Isom2, hyp::Isom2> fricke_generators(const ChartPoint& x) {
    const ChartParams cp = chart_params(x.ell);
    hyp::Isom2 a;
    a << cp.lambda, 0.0, 0.0, 1.0 / cp.lambda;
    hyp::Isom2 b0;
    b0 << cp.p, cp.p * cp.p * cp.lambda - 1.0, 1.0, cp.s;
    hyp::Isom2 tw;
    tw << std::exp(x.twist / 2.0), 0.0, 0.0, std::exp(-x.twist / 2.0);
    return {a, tw * b0};
}

double slope_trace(const FrickeTriple& x, const Slope& s) {
    long long p = s.p, q = s.q;
    if (q < 0) { p = -p; q = -q; }
    if (p == 1 && q == 0) return x.a;
    if (p < 0) return slope_trace({x.a, x.b, x.a * x.b - x.c}, Slope{-p, q});
    if (p == 0) return x.b;
    // Descend the Stern-Brocot tree from the base triangle (0/1, 1/1, 1/0),
    // carrying the traces of the interval ends and the mediant. The descent
    // length is the sum of the continued-fraction coefficients of p/q.
    if (p + q > 2000000)
        throw std::domain_error("slope_trace: slope too deep");
    long long lp = 0, lq = 1, rp = 1, rq = 0, mp = 1, mq = 1;
    double tl = x.b, tr = x.a, tm = x.c;
    while (mp != p || mq != q) {
        if (p * mq - q * mp < 0) {
            // Left interval (L, M); the co-mediant of its mediant is R.
            const double tnew = tl * tm - tr;
            rp = mp; rq = mq; tr = tm; tm = tnew;
        } else {
            const double tnew = tm * tr - tl;
            lp = mp; lq = mq; tl = tm; tm = tnew;
        }
        mp = lp + rp;
        mq = lq + rq;
        if (!std::isfinite(tm)) throw std::overflow_error("slope_trace: trace overflow");
    }
    return tm;
}

double slope_length(const FrickeTriple& x, const Slope& s) {
    const double tr = std::abs(slope_trace(x, s));
    if (!std::isfinite(tr)) throw std::overflow_error("slope_length: trace overflow");
    if (!(tr > 2.0)) throw std::domain_error("slope_length: invalid structure");
    return 2.0 * std::acosh(tr / 2.0);
}

ChartPoint chart_from_fricke(const FrickeTriple& x, const Slope& chart_slope) {
    const SlopeFrame f = slope_frame(chart_slope);
    const double a = std::abs(slope_trace(x, f.curve));
    const double b = std::abs(slope_trace(x, frame_apply(f, 0, 1)));
    const double c = std::abs(slope_trace(x, frame_apply(f, 1, 1)));
    if (!(a > 2.0)) throw std::domain_error("chart_from_fricke: invalid structure");
    const double ell = 2.0 * std::acosh(a / 2.0);
    const ChartParams cp = chart_params(ell);
    const double denom = cp.lambda * b - c;
    if (!(denom > 0.0)) throw std::domain_error("chart_from_fricke: frame traces out of range");
    const double ex = cp.p * (cp.lambda * cp.lambda - 1.0) / denom; // e^{twist/2}
    const double twist = 2.0 * std::log(ex);
    // Guard against a wrong branch or a non-realizable triple.
    const double bchk = cp.p * ex + cp.s / ex;
    if (!(std::abs(bchk - b) <= 1e-6 * std::max(1.0, std::abs(b))))
        throw std::domain_error("chart_from_fricke: inversion failed");
    return {ell, twist};
}

} // namespace thurston::torus
