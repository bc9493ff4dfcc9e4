#pragma once

#include <array>
#include <complex>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "idealtri/combinatorics.hpp"
#include "idealtri/gluing_system.hpp"
#include "idealtri/mobius.hpp"

namespace idealtri {

/// Positions of the four ideal vertices of one tetrahedron on the sphere at
/// infinity, indexed by vertex label.
using IdealPlacement = std::array<SpherePoint, 4>;

/// Vertices (0, 1, 2, 3) at (0, inf, 1, z).
inline IdealPlacement place_initial(Complex z) {
    if (near_degenerate(z))
        throw DegenerateShape(-1, z);
    return {SpherePoint::finite(0.0), SpherePoint::infinity(), SpherePoint::finite(1.0), SpherePoint::finite(z)};
}

/// Shape at the edge slot, read as the cross-ratio [w_a, w_b; w_c, w_d] over
/// the even completion (a, b, c, d) of the slot's vertex pair.
inline Complex shape_of(const IdealPlacement& placement, int slot) {
    const auto [a, b] = kEdgeSlotVertices[slot];
    const EdgeFrame f = make_edge_frame(0, a, b);
    return cross_ratio(placement[f.v[0]], placement[f.v[1]], placement[f.v[2]], placement[f.v[3]]);
}

inline IdealPlacement transform_placement(const MobiusMap& m, const IdealPlacement& p) {
    return {m(p[0]), m(p[1]), m(p[2]), m(p[3])};
}

/// Places the tetrahedron on the far side of `g` (whose source tetrahedron is
/// placed at `p`) so that it shares the three face points and has shape
/// `z_neighbor`. The shared points are copied, not recomputed.
inline IdealPlacement develop_across_face(const IdealPlacement& p, const FaceGluing& g, Complex z_neighbor) {
    const IdealPlacement standard = place_initial(z_neighbor);
    std::array<SpherePoint, 3> from{}, to{};
    IdealPlacement out{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v == g.source.face)
            continue;
        const int w = g.perm[v];
        from[k] = standard[w];
        to[k] = p[v];
        out[w] = p[v];
        ++k;
    }
    const MobiusMap m = MobiusMap::from_triples(from, to);
    out[g.target.face] = m(standard[g.target.face]);
    return out;
}

/// Map carrying the developed source face of `g` onto the developed target
/// face, matching vertices through g.perm.
inline MobiusMap face_pairing_map(const IdealPlacement& source, const IdealPlacement& target, const FaceGluing& g) {
    std::array<SpherePoint, 3> from{}, to{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v == g.source.face)
            continue;
        from[k] = source[v];
        to[k] = target[g.perm[v]];
        ++k;
    }
    return MobiusMap::from_triples(from, to);
}

struct Generator {
    FaceGluing gluing;
    MobiusMap holonomy;
};

/// Development of one fundamental domain: a placement per tetrahedron reached
/// through a breadth-first dual spanning tree, plus the holonomy of every
/// face pairing not in the tree.
struct DevelopedComplex {
    int root = 0;
    std::vector<IdealPlacement> placements;
    std::vector<FaceGluing> tree;
    std::vector<Generator> generators;

    /// Face-pairing map of any gluing. Tree gluings give the identity.
    MobiusMap pairing(const FaceGluing& g) const {
        return face_pairing_map(placements[g.source.tet], placements[g.target.tet], g);
    }
};

inline DevelopedComplex develop_spanning_tree(const Triangulation& t, const ShapeAssignment& shapes, int root = 0,
                                              const MobiusMap& initial = MobiusMap::identity()) {
    const GluingTable table = require_valid(t);
    const int n = t.tetra_count;
    if (shapes.size() != n)
        throw Error("shape vector size does not match tetrahedron count");
    if (root < 0 || root >= n)
        throw Error("root tetrahedron out of range");
    for (int i = 0; i < n; ++i)
        if (near_degenerate(shapes[i]))
            throw DegenerateShape(i, shapes[i]);

    DevelopedComplex dc;
    dc.root = root;
    dc.placements.assign(n, IdealPlacement{});
    std::vector<bool> placed(n, false);
    std::vector<std::array<bool, 4>> in_tree(n, {false, false, false, false});

    dc.placements[root] = transform_placement(initial, place_initial(shapes[root]));
    placed[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int tet = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
            const FaceRef nb = table.neighbor(tet, f);
            if (placed[nb.tet])
                continue;
            const FaceGluing g{{tet, f}, nb, table.perm(tet, f)};
            dc.placements[nb.tet] = develop_across_face(dc.placements[tet], g, shapes[nb.tet]);
            placed[nb.tet] = true;
            in_tree[tet][f] = true;
            in_tree[nb.tet][nb.face] = true;
            dc.tree.push_back(g);
            queue.push_back(nb.tet);
        }
    }

    for (int tet = 0; tet < n; ++tet)
        if (!placed[tet])
            throw Error("triangulation is not connected: tetrahedron " + std::to_string(tet) +
                        " is unreachable from the root");

    for (int tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceRef here{tet, f};
            const FaceRef there = table.neighbor(tet, f);
            if (!(here < there) || in_tree[tet][f])
                continue;
            const FaceGluing g{here, there, table.perm(tet, f)};
            dc.generators.push_back({g, dc.pairing(g)});
        }
    return dc;
}

/// Holonomy of a non-tree gluing: the map carrying its developed source face
/// to its developed target face.
inline MobiusMap generator_holonomy(const DevelopedComplex& dc, const FaceGluing& g) { return dc.pairing(g); }

struct EdgeHolonomyMatrix {
    MobiusMap matrix;
    Complex multiplier;
    SpherePoint start;  // developed endpoint at which the multiplier is taken
    SpherePoint end;
};

/// Composes the face-pairing maps met while walking once around edge j,
/// H = G_deg * ... * G_1. H fixes both developed endpoints of the edge and its
/// multiplier at the start endpoint equals h(e_j).
inline EdgeHolonomyMatrix edge_holonomy_matrix(const DevelopedComplex& dc, const Triangulation& t,
                                               const std::vector<EdgeClass>& edges, int j,
                                               double closure_tol = 1e-7) {
    const GluingTable table = require_valid(t);
    if (j < 0 || j >= static_cast<int>(edges.size()))
        throw Error("edge index out of range");
    const auto& cycle = edges[j].cycle;
    MobiusMap h = MobiusMap::identity();
    EdgeFrame cur = cycle.front();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (cur != cycle[k])
            throw EdgeCycleNotClosed("edge walk diverged from the recorded cycle");
        const int f = cur.exit_face();
        const FaceGluing g{{cur.tet, f}, table.neighbor(cur.tet, f), table.perm(cur.tet, f)};
        h = dc.pairing(g) * h;
        cur = table.step(cur);
    }
    if (cur != cycle.front())
        throw EdgeCycleNotClosed("edge walk did not return to its starting slot");

    const IdealPlacement& base = dc.placements[cycle.front().tet];
    const SpherePoint p = base[cycle.front().a()];
    const SpherePoint q = base[cycle.front().b()];
    h = h.normalized();
    if (chordal_distance(h(p), p) > closure_tol || chordal_distance(h(q), q) > closure_tol)
        throw EdgeCycleNotClosed("composed face pairings do not fix the developed edge");
    return {h, h.multiplier_at(p), p, q};
}

inline EdgeHolonomyMatrix edge_holonomy_matrix(const DevelopedComplex& dc, const Triangulation& t, int j) {
    return edge_holonomy_matrix(dc, t, compute_edge_classes(t), j);
}

}  // namespace idealtri
