#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thurston/poset.hpp"
#include "thurston/rational.hpp"

namespace thurston::convex {

/// Supporting hyperplane normal . v <= offset touching a facet.
struct Facet {
    RatVec normal;
    Rational offset;
    std::uint64_t touching = 0; // vertex bitset
};

/// Full-dimensional polytope with exact rational vertices (ambient dimension
/// <= 4, at most 60 vertices). Construction canonicalizes the input points to
/// the extreme ones, sorted lexicographically.
class RationalPolytope {
public:
    explicit RationalPolytope(std::vector<RatVec> points);

    int dim() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return verts_; }
    const std::vector<Facet>& facets() const { return facets_; }
    bool origin_interior() const;

    /// Complete lattice of proper faces with geometric joins. Face payloads
    /// are the vertex bitsets; names are "f<k>" in a deterministic order.
    const FacePoset& face_lattice() const { return lattice_; }
    /// Vertex bitset of lattice face i.
    std::uint64_t face_vertices(int face) const { return lattice_.face(face).verts; }
    int face_by_vertices(std::uint64_t verts) const;

    /// Unique face whose relative interior contains the boundary point q;
    /// distinguishes interior and outside points in the error message.
    int face_for_point(const RatVec& q) const;
    int point_dim(const RatVec& q) const;
    int point_fdim(const RatVec& q) const;

    /// Dimension of N_q = {w : w(q) = 1, w <= 1 on D}; requires the origin in
    /// the interior.
    int codim(const RatVec& q) const;
    int face_codim(int face) const;

    /// Exact polar dual (origin must be interior).
    RationalPolytope dual_body() const;

    /// A supporting hyperplane meeting the polytope exactly in this face
    /// exists; checked, not assumed.
    bool is_exposed(int face) const;

private:
    int dim_ = 0;
    std::vector<RatVec> verts_;
    std::vector<Facet> facets_;
    FacePoset lattice_;
    std::vector<std::uint64_t> face_facet_sets_; // facet bitset per lattice face
};

/// Result of checking the seven linear-invariance claims for one map.
struct InvarianceReport {
    bool faces_correspond = false;
    bool dims_match = false;
    bool adherence_preserved = false;
    bool fdims_match = false;
    bool heights_depths_match = false;
    bool adims_match = false;
    bool codims_match = false;
    bool all() const {
        return faces_correspond && dims_match && adherence_preserved && fdims_match &&
               heights_depths_match && adims_match && codims_match;
    }
};

/// Recomputes the lattice of M(P) and verifies that faces, dimensions,
/// adherence data and codimensions transport along M.
InvarianceReport linear_invariance_check(const RationalPolytope& poly,
                                         const std::vector<RatVec>& matrix);

} // namespace thurston::convex
