#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thurston::convex {

/// Combinatorial face poset of the boundary of a convex body: faces with
/// dimensions, the (strict) inclusion order, and the join table giving the
/// smallest proper face containing a pair, or none when only the whole body
/// does. Polytope-backed posets carry vertex bitsets as payload.
class FacePoset {
public:
    struct Face {
        std::string name;
        int dim = 0;
        std::uint64_t verts = 0; // polytope-backed payload; 0 for abstract faces
    };

    int add_face(const std::string& name, int dim, std::uint64_t verts = 0);
    void add_inclusion(int sub, int super);     // generating relation, closure taken
    void set_join(int a, int b, int join);       // join = -1 for "none"
    void finalize();                             // transitive closure + validation

    int size() const { return static_cast<int>(faces_.size()); }
    const Face& face(int i) const { return faces_.at(i); }
    int find(const std::string& name) const;     // -1 if absent

    bool leq(int a, int b) const;                // a subseteq b (reflexive)
    int join(int a, int b) const;                // -1 for none

    bool adherent(int f, int super) const;
    int adherence_closure(int f) const;
    bool is_adherence_closed(int f) const { return adherence_closure(f) == f; }
    std::vector<int> adherence_core(int closed_face) const;
    bool is_adherence_complete(int closed_face) const;

    int fdim(int f) const;                       // dim of the adherence closure
    int adherence_height(int f) const;
    int adherence_depth(int f) const;
    int adim(int f) const;

private:
    void require_finalized() const;
    struct JoinEntry { int a, b, join; };
    std::vector<Face> faces_;
    std::vector<std::pair<int, int>> pending_;
    std::vector<JoinEntry> pending_joins_;
    std::vector<std::vector<bool>> leq_;
    std::vector<std::vector<int>> join_;
    bool finalized_ = false;
};

/// Parses the face-poset/1 JSON schema (faces with ids and dims, inclusion
/// pairs, optional join entries).
FacePoset poset_from_json(const std::string& json_text);
std::string poset_to_json(const FacePoset& poset);

/// The stadium (rectangle with two circular caps): two parallel edges whose
/// endpoints adhere to them, and two symbolic arc-point representatives.
FacePoset stadium_poset();

/// The square's boundary as an abstract poset (every vertex lies on two
/// edges, so every face is its own adherence closure).
FacePoset square_poset();

} // namespace thurston::convex
