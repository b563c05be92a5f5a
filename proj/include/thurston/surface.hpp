#pragma once

#include <span>
#include <vector>

#include "thurston/annulus.hpp"
#include "thurston/fricke.hpp"
#include "thurston/slope.hpp"

namespace thurston::torus {

using hyp::SpiralPattern;

struct TangentVec {
    double dell, dtwist;
};

struct Covector {
    double cell, ctwist;
};

/// Truncated supremum with its argmax and the last two depth increments.
struct SupReport {
    double value = 0.0;
    Slope argmax;
    double increment_prev = 0.0; // gain from depth-2 to depth-1
    double increment_last = 0.0; // gain from depth-1 to depth
    int depth = 0;
};

/// d_Th(x, y) truncated to slopes of Farey level <= depth (depth >= 2).
SupReport thurston_distance(const FrickeTriple& x, const FrickeTriple& y, int depth);

/// Thurston norm of a tangent vector in the chart at x, as the truncated
/// supremum of d log ell over slopes; directional derivatives by central
/// differences with one Richardson step. The step applies to the normalized
/// direction, so positive homogeneity is exact.
SupReport finsler_norm(const ChartPoint& x, const TangentVec& v, int depth, double fd_step);

/// Chart gradient of log ell_s at x by Richardson central differences.
Covector covector_sample(const ChartPoint& x, const Slope& s, double fd_step);

struct FlowValidation {
    double max_log_ratio = 0.0;
    Slope argmax;          // surface slope (chart frame applied)
    double deviation = 0.0; // max_log_ratio - t
    bool flagged = false;   // |deviation| > 1e-2: candidate law miscalibrated
};

struct FlowResult {
    ChartPoint point;
    FlowValidation validation;
};

/// Candidate surface stretch flow: applies the crowned-annulus law in the
/// chart of the distinguished slope and validates that the truncated maximal
/// ratio equals t at the distinguished slope.
FlowResult stretch_flow(const ChartPoint& x, SpiralPattern pattern, const Slope& gamma,
                        double t, int depth);

/// Time series of an antistretch run.
struct FlowTrace {
    std::vector<double> times;                 // s >= 0, the flow runs to -s
    std::vector<ChartPoint> states;
    std::vector<Slope> probes;                 // surface slopes
    std::vector<std::vector<double>> probe_norm; // ell(probe)/(2s) per row, NaN once truncated
    bool truncated = false;                    // trace recursion overflowed
};

FlowTrace backtime_experiment(const ChartPoint& x, SpiralPattern pattern, const Slope& gamma,
                              double s_max, int steps, std::span<const Slope> probes);

/// Sum of signed shears, the length of a closed leaf in terms of the shears
/// of the bi-infinite leaves spiralling into it.
double closed_leaf_length_from_shears(std::span<const double> shears, std::span<const int> signs);

struct ExtractionRow {
    int m = 0;
    double ell_m = 0.0;       // length of the twisted slope alpha_m
    double norm_diff = 0.0;   // ||v_{+,m} - v_{-,m}||
    double estimate = 0.0;    // -log(norm_diff) / (i * m)
    double estimate_step = 0.0; // differenced variant, -(log norm_m - log norm_{m-1}) / i
};

struct ExtractionResult {
    std::vector<ExtractionRow> rows;
    long long intersection = 0;
    bool truncated = false; // stopped early on overflow/underflow
};

/// Recovers ell_x(gamma) from the decay of ||v_{+,m} - v_{-,m}|| along the
/// Dehn-twist family alpha_m of alpha0 around gamma. The norm factors as
/// stretch_vector_diff(ell_m) times the Thurston norm of the unit twist
/// vector along alpha_m (the twist vector of the unit-length weighted curve,
/// i.e. (0, 1/ell_m) in the alpha_m chart).
ExtractionResult length_extraction(const FrickeTriple& x, const Slope& gamma, const Slope& alpha0,
                                   int m_max, int depth, double fd_step);

} // namespace thurston::torus
