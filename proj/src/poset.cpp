#include "thurston/poset.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace thurston::convex {

int FacePoset::add_face(const std::string& name, int dim, std::uint64_t verts) {
    if (finalized_) throw std::logic_error("FacePoset: already finalized");
    if (dim < 0) throw std::domain_error("FacePoset: negative dimension");
    if (find(name) >= 0) throw std::domain_error("FacePoset: duplicate face id " + name);
    faces_.push_back({name, dim, verts});
    return size() - 1;
}

int FacePoset::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (faces_[i].name == name) return i;
    return -1;
}

void FacePoset::add_inclusion(int sub, int super) {
    if (finalized_) throw std::logic_error("FacePoset: already finalized");
    pending_.push_back({sub, super});
}

void FacePoset::set_join(int a, int b, int join) {
    if (finalized_) throw std::logic_error("FacePoset: already finalized");
    pending_joins_.push_back({a, b, join});
}

void FacePoset::finalize() {
    const int n = size();
    leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) leq_[i][i] = true;
    for (auto [sub, super] : pending_) {
        if (sub < 0 || super < 0 || sub >= n || super >= n)
            throw std::domain_error("FacePoset: inclusion references unknown face");
        leq_[sub][super] = true;
    }
    // Transitive closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (leq_[i][k])
                for (int j = 0; j < n; ++j)
                    if (leq_[k][j]) leq_[i][j] = true;
    // Antisymmetry and dimension monotonicity.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && leq_[i][j] && leq_[j][i])
                throw std::domain_error("FacePoset: inclusion cycle");
            if (i != j && leq_[i][j] && faces_[i].dim >= faces_[j].dim)
                throw std::domain_error("FacePoset: dimension must increase strictly along inclusion");
        }
    // Join table: containment pairs are determined, others default to none.
    join_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (leq_[i][j]) join_[i][j] = j;
            else if (leq_[j][i]) join_[i][j] = i;
        }
    for (auto [a, b, j] : pending_joins_) {
        if (a < 0 || b < 0 || a >= n || b >= n || j >= n)
            throw std::domain_error("FacePoset: join references unknown face");
        join_[a][b] = j;
        join_[b][a] = j;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int v = join_[i][j];
            if (v >= 0 && (!leq_[i][v] || !leq_[j][v]))
                throw std::domain_error("FacePoset: join does not contain its arguments");
        }
    finalized_ = true;
}

void FacePoset::require_finalized() const {
    if (!finalized_) throw std::logic_error("FacePoset: finalize() not called");
}

bool FacePoset::leq(int a, int b) const {
    require_finalized();
    return leq_.at(a).at(b);
}

int FacePoset::join(int a, int b) const {
    require_finalized();
    return join_.at(a).at(b);
}

bool FacePoset::adherent(int f, int super) const {
    require_finalized();
    if (!leq(f, super)) return false;
    for (int other = 0; other < size(); ++other) {
        if (!leq(f, other)) continue;
        if (join(super, other) < 0) return false;
    }
    return true;
}

int FacePoset::adherence_closure(int f) const {
    require_finalized();
    int best = f;
    for (int super = 0; super < size(); ++super) {
        if (!adherent(f, super)) continue;
        if (leq(best, super)) best = super;
    }
    // The closure is the unique maximal adherent superface; reject data for
    // which maximality is ambiguous.
    for (int super = 0; super < size(); ++super)
        if (adherent(f, super) && !leq(super, best))
            throw std::domain_error("FacePoset: adherence closure is not unique");
    return best;
}

std::vector<int> FacePoset::adherence_core(int closed_face) const {
    require_finalized();
    if (adherence_closure(closed_face) != closed_face)
        throw std::domain_error("FacePoset: adherence core requires an adherence-closed face");
    std::vector<int> core;
    for (int g = 0; g < size(); ++g)
        if (leq(g, closed_face) && adherence_closure(g) == closed_face) core.push_back(g);
    return core;
}

bool FacePoset::is_adherence_complete(int closed_face) const {
    require_finalized();
    if (adherence_closure(closed_face) != closed_face)
        throw std::domain_error("FacePoset: completeness requires an adherence-closed face");
    for (int g = 0; g < size(); ++g)
        if (leq(g, closed_face) && adherence_closure(g) != closed_face) return false;
    return true;
}

int FacePoset::fdim(int f) const {
    return faces_.at(adherence_closure(f)).dim;
}

namespace {

/// Minimum length of maximal F-dim ascending chains ending (dir = -1) or
/// starting (dir = +1) at a face. A chain is maximal when no face can be
/// inserted while keeping inclusions and strictly increasing face-dimensions.
int min_maximal_chain(const FacePoset& poset, int face, int dir,
                      const std::vector<int>& fdims, std::vector<int>& memo) {
    if (memo[face] >= 0) return memo[face];
    const int n = poset.size();
    auto before = [&](int a, int b) { // a can precede b in a chain step
        return poset.leq(a, b) && a != b && fdims[a] < fdims[b];
    };
    auto step_ok = [&](int a, int b) { // no face strictly between a and b
        for (int g = 0; g < n; ++g)
            if (g != a && g != b && before(a, g) && before(g, b)) return false;
        return true;
    };
    int best = std::numeric_limits<int>::max();
    bool extendable = false;
    for (int next = 0; next < n; ++next) {
        const bool adjacent = dir < 0 ? before(next, face) : before(face, next);
        if (!adjacent) continue;
        extendable = true;
        if (!step_ok(dir < 0 ? next : face, dir < 0 ? face : next)) continue;
        best = std::min(best, min_maximal_chain(poset, next, dir, fdims, memo) + 1);
    }
    if (!extendable) best = 1;
    if (best == std::numeric_limits<int>::max())
        throw std::logic_error("FacePoset: no maximal chain found");
    memo[face] = best;
    return best;
}

std::vector<int> all_fdims(const FacePoset& poset) {
    std::vector<int> fd(poset.size());
    for (int i = 0; i < poset.size(); ++i) fd[i] = poset.fdim(i);
    return fd;
}

} // namespace

int FacePoset::adherence_height(int f) const {
    require_finalized();
    const auto fd = all_fdims(*this);
    std::vector<int> memo(size(), -1);
    return min_maximal_chain(*this, f, -1, fd, memo);
}

int FacePoset::adherence_depth(int f) const {
    require_finalized();
    const auto fd = all_fdims(*this);
    std::vector<int> memo(size(), -1);
    return min_maximal_chain(*this, f, +1, fd, memo);
}

int FacePoset::adim(int f) const {
    return adherence_height(f) + adherence_depth(f) - 2;
}

FacePoset poset_from_json(const std::string& json_text) {
    const auto doc = nlohmann::json::parse(json_text);
    FacePoset poset;
    for (const auto& f : doc.at("faces"))
        poset.add_face(f.at("id").get<std::string>(), f.at("dim").get<int>());
    if (doc.contains("inclusions"))
        for (const auto& pair : doc.at("inclusions")) {
            const int sub = poset.find(pair.at(0).get<std::string>());
            const int super = poset.find(pair.at(1).get<std::string>());
            if (sub < 0 || super < 0)
                throw std::domain_error("face-poset json: inclusion references unknown id");
            poset.add_inclusion(sub, super);
        }
    if (doc.contains("joins"))
        for (const auto& row : doc.at("joins")) {
            const int a = poset.find(row.at(0).get<std::string>());
            const int b = poset.find(row.at(1).get<std::string>());
            int j = -1;
            if (!row.at(2).is_null()) j = poset.find(row.at(2).get<std::string>());
            if (a < 0 || b < 0 || (!row.at(2).is_null() && j < 0))
                throw std::domain_error("face-poset json: join references unknown id");
            poset.set_join(a, b, j);
        }
    poset.finalize();
    return poset;
}

std::string poset_to_json(const FacePoset& poset) {
    nlohmann::ordered_json doc;
    doc["schema"] = "face-poset/1";
    auto& faces = doc["faces"] = nlohmann::ordered_json::array();
    for (int i = 0; i < poset.size(); ++i)
        faces.push_back({{"id", poset.face(i).name}, {"dim", poset.face(i).dim}});
    auto& inc = doc["inclusions"] = nlohmann::ordered_json::array();
    for (int i = 0; i < poset.size(); ++i)
        for (int j = 0; j < poset.size(); ++j)
            if (i != j && poset.leq(i, j))
                inc.push_back({poset.face(i).name, poset.face(j).name});
    auto& joins = doc["joins"] = nlohmann::ordered_json::array();
    for (int i = 0; i < poset.size(); ++i)
        for (int j = i + 1; j < poset.size(); ++j) {
            const int v = poset.join(i, j);
            joins.push_back({poset.face(i).name, poset.face(j).name,
                             v < 0 ? nlohmann::ordered_json() : nlohmann::ordered_json(poset.face(v).name)});
        }
    return doc.dump(2);
}

FacePoset stadium_poset() {
    FacePoset poset;
    const int e = poset.add_face("e", 1);
    const int ep = poset.add_face("e'", 1);
    const int x = poset.add_face("x", 0);
    const int y = poset.add_face("y", 0);
    const int xp = poset.add_face("x'", 0);
    const int yp = poset.add_face("y'", 0);
    poset.add_face("a1", 0); // representative point on one circular arc
    poset.add_face("a2", 0); // representative point on the other arc
    poset.add_inclusion(x, e);
    poset.add_inclusion(y, e);
    poset.add_inclusion(xp, ep);
    poset.add_inclusion(yp, ep);
    poset.set_join(x, y, e);
    poset.set_join(xp, yp, ep);
    poset.finalize();
    return poset;
}

FacePoset square_poset() {
    FacePoset poset;
    const int e[4] = {poset.add_face("e0", 1), poset.add_face("e1", 1),
                      poset.add_face("e2", 1), poset.add_face("e3", 1)};
    const int v[4] = {poset.add_face("v0", 0), poset.add_face("v1", 0),
                      poset.add_face("v2", 0), poset.add_face("v3", 0)};
    for (int i = 0; i < 4; ++i) {
        poset.add_inclusion(v[i], e[i]);
        poset.add_inclusion(v[(i + 1) % 4], e[i]);
    }
    poset.finalize();
    return poset;
}

} // namespace thurston::convex
