#pragma once

#include <cmath>
#include <stdexcept>

namespace thurston {

/// log(1 - e^{-x}) for x > 0, without cancellation at either end of the range.
/// Below log(2) the expm1 form is exact; above it the log1p form keeps full
/// relative accuracy down to values like -e^{-700}.
inline double log1mexp(double x) {
    if (!(x > 0.0)) throw std::domain_error("log1mexp: argument must be positive");
    constexpr double kCut = 0.6931471805599453;
    if (x > kCut) return std::log1p(-std::exp(-x));
    return std::log(-std::expm1(-x));
}

/// e^{-x} / (1 - e^{-x}), stable for small x.
inline double expm1_ratio(double x) {
    return std::exp(-x) / (-std::expm1(-x));
}

/// Central difference with one Richardson step (steps h and h/2).
template <class F>
double richardson_derivative(F&& f, double h) {
    const double d1 = (f(h) - f(-h)) / (2.0 * h);
    const double d2 = (f(h / 2.0) - f(-h / 2.0)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace thurston
