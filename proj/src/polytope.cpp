#include "thurston/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace thurston::convex {

namespace {

bool lex_less(const RatVec& a, const RatVec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

int affine_rank(const std::vector<RatVec>& pts, std::uint64_t subset) {
    std::vector<RatVec> rows;
    int base = -1;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (!(subset >> i & 1)) continue;
        if (base < 0) { base = static_cast<int>(i); continue; }
        RatVec row(pts[i].size());
        for (size_t j = 0; j < row.size(); ++j) row[j] = pts[i][j] - pts[base][j];
        rows.push_back(std::move(row));
    }
    if (base < 0) return -1;
    return rank(std::move(rows));
}

std::string functional_key(const RatVec& normal, const Rational& offset) {
    std::string key;
    for (const Rational& r : normal) { key += r.str(); key += ','; }
    key += '|';
    key += offset.str();
    return key;
}

/// All index combinations of size k from 0..n-1.
template <class F>
void for_each_combination(int n, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

} // namespace

RationalPolytope::RationalPolytope(std::vector<RatVec> points) {
    if (points.empty()) throw std::domain_error("RationalPolytope: no points");
    dim_ = static_cast<int>(points[0].size());
    if (dim_ < 1 || dim_ > 4)
        throw std::domain_error("RationalPolytope: ambient dimension must be 1..4");
    for (const RatVec& p : points)
        if (static_cast<int>(p.size()) != dim_)
            throw std::invalid_argument("RationalPolytope: inconsistent point dimensions");

    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() > 64)
        throw std::domain_error("RationalPolytope: more than 64 points (desk-scale limit)");

    const std::uint64_t all = points.size() == 64 ? ~0ull : (1ull << points.size()) - 1;
    if (affine_rank(points, all) != dim_)
        throw std::domain_error("RationalPolytope: degenerate (not full-dimensional)");

    // Candidate hyperplanes through dim_ affinely independent points; keep the
    // supporting ones. Recorded facets are deduplicated by canonical form.
    std::map<std::string, std::pair<RatVec, Rational>> found;
    const int n = static_cast<int>(points.size());
    for_each_combination(n, dim_, [&](const std::vector<int>& idx) {
        std::vector<RatVec> rows;
        for (int i = 1; i < dim_; ++i) {
            RatVec row(dim_);
            for (int j = 0; j < dim_; ++j) row[j] = points[idx[i]][j] - points[idx[0]][j];
            rows.push_back(std::move(row));
        }
        RatVec normal;
        if (dim_ == 1) {
            normal = RatVec{Rational(1)};
        } else {
            normal = kernel_line(rows, dim_);
            if (normal.empty()) return; // affinely dependent selection
        }
        Rational offset = dot(normal, points[idx[0]]);
        bool below = false, above = false;
        for (const RatVec& p : points) {
            const Rational v = dot(normal, p);
            if (v < offset) below = true;
            else if (v > offset) above = true;
            if (below && above) return; // not supporting
        }
        if (above) { // orient so the polytope satisfies normal . v <= offset
            for (Rational& r : normal) r = -r;
            offset = -offset;
        }
        canonicalize_functional(normal, offset);
        found.emplace(functional_key(normal, offset), std::make_pair(normal, offset));
    });

    // Extreme points: exactly those whose touching facet normals span.
    std::vector<RatVec> extreme;
    for (const RatVec& p : points) {
        std::vector<RatVec> normals;
        for (const auto& [key, f] : found)
            if (dot(f.first, p) == f.second) normals.push_back(f.first);
        if (rank(std::move(normals)) == dim_) extreme.push_back(p);
    }
    std::sort(extreme.begin(), extreme.end(), lex_less);
    verts_ = std::move(extreme);

    for (const auto& [key, f] : found) {
        Facet facet{f.first, f.second, 0};
        for (size_t i = 0; i < verts_.size(); ++i)
            if (dot(facet.normal, verts_[i]) == facet.offset) facet.touching |= 1ull << i;
        facets_.push_back(std::move(facet));
    }
    if (facets_.size() > 64)
        throw std::domain_error("RationalPolytope: more than 64 facets (desk-scale limit)");

    // Proper faces are the nonempty intersections of facets: close the facet
    // touching sets under intersection.
    std::vector<std::uint64_t> sets;
    for (const Facet& f : facets_) sets.push_back(f.touching);
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    for (size_t grow = 1; grow != 0;) {
        grow = 0;
        const size_t m = sets.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                const std::uint64_t meet = sets[i] & sets[j];
                if (meet == 0) continue;
                if (std::find(sets.begin(), sets.end(), meet) == sets.end()) {
                    sets.push_back(meet);
                    ++grow;
                }
            }
    }
    struct Rec { std::uint64_t verts; int dim; };
    std::vector<Rec> recs;
    for (std::uint64_t s : sets) recs.push_back({s, affine_rank(verts_, s)});
    std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.verts < b.verts;
    });
    for (size_t i = 0; i < recs.size(); ++i)
        lattice_.add_face("f" + std::to_string(i), recs[i].dim, recs[i].verts);
    for (size_t i = 0; i < recs.size(); ++i)
        for (size_t j = 0; j < recs.size(); ++j)
            if (i != j && recs[i].verts != recs[j].verts &&
                (recs[i].verts & recs[j].verts) == recs[i].verts)
                lattice_.add_inclusion(static_cast<int>(i), static_cast<int>(j));

    face_facet_sets_.assign(recs.size(), 0);
    for (size_t i = 0; i < recs.size(); ++i)
        for (size_t f = 0; f < facets_.size(); ++f)
            if ((recs[i].verts & facets_[f].touching) == recs[i].verts)
                face_facet_sets_[i] |= 1ull << f;

    // Geometric joins: the facets containing both faces cut out the smallest
    // proper face containing their union; none survive means only the body.
    for (size_t i = 0; i < recs.size(); ++i)
        for (size_t j = i; j < recs.size(); ++j) {
            const std::uint64_t common = face_facet_sets_[i] & face_facet_sets_[j];
            int join = -1;
            if (common != 0) {
                std::uint64_t vs = ~0ull;
                for (size_t f = 0; f < facets_.size(); ++f)
                    if (common >> f & 1) vs &= facets_[f].touching;
                for (size_t k = 0; k < recs.size(); ++k)
                    if (recs[k].verts == vs) { join = static_cast<int>(k); break; }
                if (join < 0) throw std::logic_error("RationalPolytope: join face missing from lattice");
            }
            lattice_.set_join(static_cast<int>(i), static_cast<int>(j), join);
        }
    lattice_.finalize();
}

bool RationalPolytope::origin_interior() const {
    for (const Facet& f : facets_)
        if (!(f.offset > 0)) return false;
    return true;
}

int RationalPolytope::face_by_vertices(std::uint64_t verts) const {
    for (int i = 0; i < lattice_.size(); ++i)
        if (lattice_.face(i).verts == verts) return i;
    return -1;
}

int RationalPolytope::face_for_point(const RatVec& q) const {
    if (static_cast<int>(q.size()) != dim_)
        throw std::invalid_argument("face_for_point: dimension mismatch");
    std::uint64_t equal = 0;
    for (size_t f = 0; f < facets_.size(); ++f) {
        const Rational v = dot(facets_[f].normal, q);
        if (v > facets_[f].offset)
            throw std::domain_error("face_for_point: point lies outside the body");
        if (v == facets_[f].offset) equal |= 1ull << f;
    }
    if (equal == 0)
        throw std::domain_error("face_for_point: point lies in the interior of the body");
    std::uint64_t vs = ~0ull;
    for (size_t f = 0; f < facets_.size(); ++f)
        if (equal >> f & 1) vs &= facets_[f].touching;
    const int face = face_by_vertices(vs);
    if (face < 0) throw std::logic_error("face_for_point: face missing from lattice");
    return face;
}

int RationalPolytope::point_dim(const RatVec& q) const {
    return lattice_.face(face_for_point(q)).dim;
}

int RationalPolytope::point_fdim(const RatVec& q) const {
    return lattice_.fdim(face_for_point(q));
}

int RationalPolytope::face_codim(int face) const {
    if (!origin_interior())
        throw std::domain_error("codim: origin must be interior to the body");
    std::vector<RatVec> normals;
    for (size_t f = 0; f < facets_.size(); ++f)
        if (face_facet_sets_.at(face) >> f & 1) normals.push_back(facets_[f].normal);
    return rank(std::move(normals)) - 1;
}

int RationalPolytope::codim(const RatVec& q) const {
    return face_codim(face_for_point(q));
}

RationalPolytope RationalPolytope::dual_body() const {
    if (!origin_interior())
        throw std::domain_error("dual_body: origin must be interior to the body");
    std::vector<RatVec> duals;
    for (const Facet& f : facets_) {
        RatVec w(dim_);
        for (int j = 0; j < dim_; ++j) w[j] = f.normal[j] / f.offset;
        duals.push_back(std::move(w));
    }
    return RationalPolytope(std::move(duals));
}

bool RationalPolytope::is_exposed(int face) const {
    const std::uint64_t fs = face_facet_sets_.at(face);
    if (fs == 0) return false;
    std::uint64_t vs = ~0ull;
    for (size_t f = 0; f < facets_.size(); ++f)
        if (fs >> f & 1) vs &= facets_[f].touching;
    return vs == lattice_.face(face).verts;
}

InvarianceReport linear_invariance_check(const RationalPolytope& poly,
                                         const std::vector<RatVec>& matrix) {
    const int n = poly.dim();
    if (static_cast<int>(matrix.size()) != n)
        throw std::invalid_argument("linear_invariance_check: matrix shape mismatch");
    {
        std::vector<RatVec> rows = matrix;
        if (rank(std::move(rows)) != n)
            throw std::domain_error("linear_invariance_check: matrix is singular");
    }
    std::vector<RatVec> mapped;
    for (const RatVec& v : poly.vertices()) {
        RatVec w(n, Rational(0));
        for (int i = 0; i < n; ++i) w[i] = dot(matrix[i], v);
        mapped.push_back(std::move(w));
    }
    const RationalPolytope image(mapped);

    InvarianceReport rep;
    if (image.vertices().size() != poly.vertices().size()) return rep;
    // Vertex index correspondence under the map.
    std::vector<int> vmap(poly.vertices().size());
    for (size_t i = 0; i < mapped.size(); ++i) {
        const auto it = std::find(image.vertices().begin(), image.vertices().end(), mapped[i]);
        if (it == image.vertices().end()) return rep;
        vmap[i] = static_cast<int>(it - image.vertices().begin());
    }

    const FacePoset& lat = poly.face_lattice();
    const FacePoset& img = image.face_lattice();
    if (lat.size() != img.size()) return rep;
    std::vector<int> fmap(lat.size(), -1);
    for (int i = 0; i < lat.size(); ++i) {
        std::uint64_t vs = 0;
        for (size_t b = 0; b < poly.vertices().size(); ++b)
            if (lat.face(i).verts >> b & 1) vs |= 1ull << vmap[b];
        fmap[i] = image.face_by_vertices(vs);
        if (fmap[i] < 0) return rep;
    }
    rep.faces_correspond = true;

    rep.dims_match = true;
    for (int i = 0; i < lat.size(); ++i)
        if (lat.face(i).dim != img.face(fmap[i]).dim) rep.dims_match = false;

    rep.adherence_preserved = true;
    for (int i = 0; i < lat.size(); ++i)
        for (int j = 0; j < lat.size(); ++j)
            if (lat.adherent(i, j) != img.adherent(fmap[i], fmap[j]))
                rep.adherence_preserved = false;

    rep.fdims_match = rep.heights_depths_match = rep.adims_match = true;
    for (int i = 0; i < lat.size(); ++i) {
        if (lat.fdim(i) != img.fdim(fmap[i])) rep.fdims_match = false;
        if (lat.adherence_height(i) != img.adherence_height(fmap[i]) ||
            lat.adherence_depth(i) != img.adherence_depth(fmap[i]))
            rep.heights_depths_match = false;
        if (lat.adim(i) != img.adim(fmap[i])) rep.adims_match = false;
    }

    rep.codims_match = true;
    if (poly.origin_interior() && image.origin_interior()) {
        for (int i = 0; i < lat.size(); ++i)
            if (poly.face_codim(i) != image.face_codim(fmap[i])) rep.codims_match = false;
    }
    return rep;
}

} // namespace thurston::convex
