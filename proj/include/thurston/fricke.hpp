#pragma once

#include <utility>

#include "thurston/hyp_core.hpp"
#include "thurston/slope.hpp"

namespace thurston::torus {

/// Traces (tr A, tr B, tr AB) of a once-punctured-torus group; a cusped
/// structure satisfies a^2 + b^2 + c^2 = a b c.
struct FrickeTriple {
    double a, b, c;
};

/// Fenchel-Nielsen coordinates with respect to a distinguished slope: length
/// of its geodesic and the twist along it, with twist 0 on the b = c locus.
struct ChartPoint {
    double ell;
    double twist;
};

/// Residual of the cusp relation, |a^2+b^2+c^2 - abc|.
double cusp_residual(const FrickeTriple& x);

/// Throws unless the triple is a valid cusped structure (entries > 2, cusp
/// relation within tol).
void check_triple(const FrickeTriple& x, double tol = 1e-8);

/// Builds the trace coordinates of the chart point. The chart slope is
/// realized by a diagonal generator, so a = 2 cosh(ell/2) exactly and the
/// twist flow conjugates the second generator by translations along its axis.
FrickeTriple fn_to_fricke(const ChartPoint& x);

/// Matrix generators (A, B) realizing fn_to_fricke(x); tr[A,B] = -2.
std::pair<hyp::Isom2, hyp::Isom2> fricke_generators(const ChartPoint& x);

/// Trace of the geodesic of a slope, by the Fricke recursion
/// tr(XY) + tr(XY^{-1}) = tr X tr Y along the Stern-Brocot path of the slope.
double slope_trace(const FrickeTriple& x, const Slope& s);

/// Geodesic length 2 arcosh(tr/2) of a slope; throws "invalid structure" when
/// the recursion leaves the hyperbolic range and on overflow.
double slope_length(const FrickeTriple& x, const Slope& s);

/// Chart coordinates of the structure with respect to an arbitrary slope,
/// inverting fn_to_fricke in the frame of that slope.
ChartPoint chart_from_fricke(const FrickeTriple& x, const Slope& chart_slope);

} // namespace thurston::torus
