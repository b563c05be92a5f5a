#pragma once

#include <string>
#include <vector>

#include "thurston/fricke.hpp"
#include "thurston/polytope.hpp"
#include "thurston/slope.hpp"
#include "thurston/surface.hpp"

namespace thurston::convex {

/// One rationalized covector sample tagged by its slope.
struct TaggedCovector {
    torus::Slope slope;
    double cell = 0.0;
    double ctwist = 0.0;
};

struct DualSphereReport {
    int sample_count = 0;
    int hull_vertex_count = 0;
    bool all_tags_are_vertices = false;
    bool origin_interior = false;
    std::vector<torus::Slope> hull_order;      // tags of hull vertices, lattice order
    std::vector<RatVec> hull_vertices;         // exact rationalized coordinates
    std::vector<torus::Slope> missing;         // tags that failed to be vertices
};

/// Exact convex hull of the rationalized covector samples: verifies that the
/// origin is strictly interior and reports which tagged samples are hull
/// vertices (k = 1 multicurves have zero-dimensional faces, so all of them
/// should be).
DualSphereReport dual_sphere_experiment(const std::vector<TaggedCovector>& samples,
                                        long long denominator_bound = 1000000000LL);

struct PrimalSample {
    double angle = 0.0;
    double x = 0.0, y = 0.0; // boundary point of the unit ball
    torus::Slope argmax;
};

struct PrimalRun {
    torus::Slope slope;
    int count = 0;
    double max_chord_deviation = 0.0; // distance of interior samples to the run chord
};

struct PrimalSphereReport {
    std::vector<PrimalSample> samples;
    std::vector<PrimalRun> runs; // maximal circular runs with a common argmax
};

/// Samples the boundary of the Thurston unit ball in the chart at x and
/// groups the samples into runs by maximizing slope; each run of three or
/// more points is tested for collinearity (the flat face the slope cuts out).
PrimalSphereReport primal_sphere_experiment(const torus::ChartPoint& x, int depth,
                                            int sample_count, double fd_step);

} // namespace thurston::convex
