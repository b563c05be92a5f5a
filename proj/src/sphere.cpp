#include "thurston/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thurston::convex {

DualSphereReport dual_sphere_experiment(const std::vector<TaggedCovector>& samples,
                                        long long denominator_bound) {
    if (samples.size() < 3)
        throw std::domain_error("dual_sphere_experiment: need at least three covectors");
    std::vector<RatVec> pts;
    pts.reserve(samples.size());
    for (const TaggedCovector& s : samples)
        pts.push_back({rationalize(s.cell, denominator_bound),
                       rationalize(s.ctwist, denominator_bound)});
    const RationalPolytope hull(pts); // throws when the samples are degenerate

    DualSphereReport rep;
    rep.sample_count = static_cast<int>(samples.size());
    rep.hull_vertex_count = static_cast<int>(hull.vertices().size());
    rep.origin_interior = hull.origin_interior();

    rep.all_tags_are_vertices = true;
    std::vector<torus::Slope> vertex_tag(hull.vertices().size());
    for (size_t i = 0; i < samples.size(); ++i) {
        const RatVec& p = pts[i];
        const auto it = std::find(hull.vertices().begin(), hull.vertices().end(), p);
        if (it == hull.vertices().end()) {
            rep.all_tags_are_vertices = false;
            rep.missing.push_back(samples[i].slope);
        } else {
            vertex_tag[it - hull.vertices().begin()] = samples[i].slope;
        }
    }
    for (const torus::Slope& s : vertex_tag) rep.hull_order.push_back(s);
    rep.hull_vertices = hull.vertices();
    return rep;
}

PrimalSphereReport primal_sphere_experiment(const torus::ChartPoint& x, int depth,
                                            int sample_count, double fd_step) {
    if (sample_count < 8)
        throw std::domain_error("primal_sphere_experiment: need at least eight samples");
    PrimalSphereReport rep;
    rep.samples.reserve(sample_count);
    for (int k = 0; k < sample_count; ++k) {
        const double a = 2.0 * std::numbers::pi * k / sample_count;
        const torus::TangentVec v{std::cos(a), std::sin(a)};
        const torus::SupReport nrm = torus::finsler_norm(x, v, depth, fd_step);
        if (!(nrm.value > 0.0))
            throw std::domain_error("primal_sphere_experiment: direction with non-positive norm");
        rep.samples.push_back({a, v.dell / nrm.value, v.dtwist / nrm.value, nrm.argmax});
    }

    // Maximal circular runs with a common maximizing slope.
    const int n = sample_count;
    int start = 0;
    while (start < n && rep.samples[(start + n - 1) % n].argmax == rep.samples[start].argmax)
        ++start;
    if (start == n) start = 0; // a single face all around (does not occur for honest balls)
    int i = start;
    do {
        const torus::Slope tag = rep.samples[i].argmax;
        std::vector<int> run;
        int j = i;
        while (rep.samples[j].argmax == tag) {
            run.push_back(j);
            j = (j + 1) % n;
            if (j == i) break;
        }
        PrimalRun r;
        r.slope = tag;
        r.count = static_cast<int>(run.size());
        for (size_t k = 1; k + 1 < run.size(); ++k) {
            const PrimalSample& a = rep.samples[run.front()];
            const PrimalSample& b = rep.samples[run.back()];
            const PrimalSample& m = rep.samples[run[k]];
            const double ux = b.x - a.x, uy = b.y - a.y;
            const double len = std::hypot(ux, uy);
            const double dev = std::abs((m.x - a.x) * uy - (m.y - a.y) * ux) / (len > 0 ? len : 1.0);
            r.max_chord_deviation = std::max(r.max_chord_deviation, dev);
        }
        rep.runs.push_back(r);
        i = j;
    } while (i != start);
    return rep;
}

} // namespace thurston::convex
