#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "idealtri/triangulation.hpp"
#include "idealtri/union_find.hpp"

namespace idealtri {

/// One edge class of the triangulation together with its cyclic sequence of
/// edge slots. Consecutive frames are related by GluingTable::step, and
/// stepping from the last frame returns to the first.
struct EdgeClass {
    int index = 0;
    std::vector<EdgeFrame> cycle;

    int degree() const noexcept { return static_cast<int>(cycle.size()); }
};

/// Orbit of tetrahedron corners under the face pairings.
struct VertexClass {
    int index = 0;
    std::vector<std::pair<int, int>> corners;  // (tetrahedron, vertex)
    int link_vertices = 0;
    int link_edges = 0;
    int link_triangles = 0;
    int link_euler_characteristic = 0;
    int link_genus = 0;
};

/// Edge classes numbered by increasing degree; ties keep the order in which
/// the (tetrahedron, slot) scan first meets them.
inline std::vector<EdgeClass> compute_edge_classes(const Triangulation& t) {
    const GluingTable table = require_valid(t);
    std::vector<EdgeClass> edges;
    std::vector<std::array<bool, 6>> visited(t.tetra_count, {false, false, false, false, false, false});
    for (int tet = 0; tet < t.tetra_count; ++tet) {
        for (int s = 0; s < 6; ++s) {
            if (visited[tet][s])
                continue;
            EdgeClass edge;
            edge.index = static_cast<int>(edges.size());
            const EdgeFrame start = make_edge_frame(tet, kEdgeSlotVertices[s].first, kEdgeSlotVertices[s].second);
            EdgeFrame cur = start;
            do {
                visited[cur.tet][cur.slot()] = true;
                edge.cycle.push_back(cur);
                cur = table.step(cur);
            } while (cur != start);
            edges.push_back(std::move(edge));
        }
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const EdgeClass& x, const EdgeClass& y) { return x.degree() < y.degree(); });
    for (std::size_t j = 0; j < edges.size(); ++j)
        edges[j].index = static_cast<int>(j);
    return edges;
}

/// slot_edge[tet][slot] = index of the edge class containing that slot.
inline std::vector<std::array<int, 6>> slot_edge_map(int tetra_count, const std::vector<EdgeClass>& edges) {
    std::vector<std::array<int, 6>> out(tetra_count, {-1, -1, -1, -1, -1, -1});
    for (const auto& e : edges)
        for (const auto& f : e.cycle)
            out[f.tet][f.slot()] = e.index;
    return out;
}

inline std::vector<int> edge_degrees(const std::vector<EdgeClass>& edges) {
    std::vector<int> d;
    d.reserve(edges.size());
    for (const auto& e : edges)
        d.push_back(e.degree());
    return d;
}

inline std::vector<int> sorted_degrees(const std::vector<EdgeClass>& edges) {
    auto d = edge_degrees(edges);
    std::sort(d.begin(), d.end());
    return d;
}

/// Vertex orbits and their link surfaces, assembled from one normal triangle
/// per tetrahedron corner glued along the face pairings.
inline std::vector<VertexClass> compute_vertex_classes(const Triangulation& t) {
    const GluingTable table = require_valid(t);
    const int n = t.tetra_count;

    // Normal triangle at corner (tet, v) has sides in the faces f != v and
    // corners pointing along edges (v, w), w != v.
    auto corner_id = [](int tet, int v) { return 4 * tet + v; };
    auto edge_end_id = [](int tet, int v, int w) { return 16 * tet + 4 * v + w; };

    UnionFind corners(4 * n);
    UnionFind ends(16 * n);
    for (int tet = 0; tet < n; ++tet) {
        for (int f = 0; f < 4; ++f) {
            const FaceRef& nb = table.neighbor(tet, f);
            const auto& p = table.perm(tet, f);
            for (int v = 0; v < 4; ++v) {
                if (v == f)
                    continue;
                corners.unite(corner_id(tet, v), corner_id(nb.tet, p[v]));
                for (int w = 0; w < 4; ++w)
                    if (w != v && w != f)
                        ends.unite(edge_end_id(tet, v, w), edge_end_id(nb.tet, p[v], p[w]));
            }
        }
    }

    int count = 0;
    const auto corner_label = corners.labels(&count);
    std::vector<VertexClass> out(count);
    for (int i = 0; i < count; ++i)
        out[i].index = i;
    for (int tet = 0; tet < n; ++tet)
        for (int v = 0; v < 4; ++v)
            out[corner_label[corner_id(tet, v)]].corners.emplace_back(tet, v);

    // Every normal-triangle side lies in exactly one face and is matched with
    // exactly one side across that face's pairing, so sides pair up: E = 3F/2.
    std::vector<std::set<int>> link_vertex_roots(count);
    for (int tet = 0; tet < n; ++tet)
        for (int v = 0; v < 4; ++v)
            for (int w = 0; w < 4; ++w)
                if (w != v)
                    link_vertex_roots[corner_label[corner_id(tet, v)]].insert(ends.find(edge_end_id(tet, v, w)));

    for (auto& vc : out) {
        vc.link_triangles = static_cast<int>(vc.corners.size());
        vc.link_edges = 3 * vc.link_triangles / 2;
        vc.link_vertices = static_cast<int>(link_vertex_roots[vc.index].size());
        vc.link_euler_characteristic = vc.link_vertices - vc.link_edges + vc.link_triangles;
        vc.link_genus = (2 - vc.link_euler_characteristic) / 2;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Abstract edge neighbourhood

struct NeighbourhoodSimplex {
    int copy = 0;
    EdgeFrame frame;  // central edge is (frame.a(), frame.b())
};

/// Face `from_face` of copy `from_copy` is identified with face `to_face` of
/// copy `to_copy` through `perm` (vertex labels of the underlying tetrahedra).
struct NeighbourhoodIdentification {
    int from_copy = 0;
    int from_face = 0;
    int to_copy = 0;
    int to_face = 0;
    VertexPermutation perm;
};

struct AbstractNeighbourhood {
    int edge = 0;
    std::vector<NeighbourhoodSimplex> simplices;
    std::vector<NeighbourhoodIdentification> identifications;
};

inline AbstractNeighbourhood abstract_edge_neighbourhood(const Triangulation& t, int edge_index) {
    const GluingTable table = require_valid(t);
    const auto edges = compute_edge_classes(t);
    if (edge_index < 0 || edge_index >= static_cast<int>(edges.size()))
        throw Error("edge index " + std::to_string(edge_index) + " out of range");
    const auto& cycle = edges[edge_index].cycle;
    AbstractNeighbourhood out;
    out.edge = edge_index;
    const int deg = static_cast<int>(cycle.size());
    for (int k = 0; k < deg; ++k) {
        out.simplices.push_back({k, cycle[k]});
        const EdgeFrame& here = cycle[k];
        const EdgeFrame& next = cycle[(k + 1) % deg];
        out.identifications.push_back(
            {k, here.exit_face(), (k + 1) % deg, next.v[2], table.perm(here.tet, here.exit_face())});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Self-identifications at the level of the pseudo-manifold

struct TetrahedronSelfIdentification {
    int tet = 0;
    std::vector<std::pair<int, int>> identified_vertices;  // vertex pairs
    std::vector<std::pair<int, int>> identified_edges;     // edge-slot pairs
};

struct SelfIdentificationReport {
    std::vector<TetrahedronSelfIdentification> tetrahedra;
    bool almost_non_singular = true;
    bool non_singular = true;
};

inline SelfIdentificationReport self_identification_report(const Triangulation& t) {
    const auto edges = compute_edge_classes(t);
    const auto vertices = compute_vertex_classes(t);
    const auto slot_edge = slot_edge_map(t.tetra_count, edges);
    std::vector<std::array<int, 4>> corner_vertex(t.tetra_count);
    for (const auto& vc : vertices)
        for (const auto& [tet, v] : vc.corners)
            corner_vertex[tet][v] = vc.index;

    SelfIdentificationReport report;
    for (int tet = 0; tet < t.tetra_count; ++tet) {
        TetrahedronSelfIdentification entry;
        entry.tet = tet;
        for (int v = 0; v < 4; ++v)
            for (int w = v + 1; w < 4; ++w)
                if (corner_vertex[tet][v] == corner_vertex[tet][w])
                    entry.identified_vertices.emplace_back(v, w);
        for (int s = 0; s < 6; ++s)
            for (int r = s + 1; r < 6; ++r)
                if (slot_edge[tet][s] == slot_edge[tet][r])
                    entry.identified_edges.emplace_back(s, r);
        if (!entry.identified_edges.empty())
            report.almost_non_singular = false;
        if (!entry.identified_edges.empty() || !entry.identified_vertices.empty())
            report.non_singular = false;
        report.tetrahedra.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Canonical form and relabeling

/// Each face pair listed once, from its lexicographically smaller side, sorted
/// by source face.
inline Triangulation canonical_form(const Triangulation& t) {
    const GluingTable table = require_valid(t);
    Triangulation out;
    out.tetra_count = t.tetra_count;
    for (int tet = 0; tet < t.tetra_count; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceRef here{tet, f};
            const FaceRef& there = table.neighbor(tet, f);
            if (here < there)
                out.gluings.push_back({here, there, table.perm(tet, f)});
        }
    return out;
}

/// Renames tetrahedron i to tet_map[i] and relabels its vertices by
/// vertex_maps[i] (old label v becomes vertex_maps[i][v]).
inline Triangulation relabel(const Triangulation& t, const std::vector<int>& tet_map,
                             const std::vector<VertexPermutation>& vertex_maps) {
    Triangulation out;
    out.tetra_count = t.tetra_count;
    for (const auto& g : t.gluings) {
        const auto& s = vertex_maps[g.source.tet];
        const auto& d = vertex_maps[g.target.tet];
        out.gluings.push_back({{tet_map[g.source.tet], s[g.source.face]},
                               {tet_map[g.target.tet], d[g.target.face]},
                               d * g.perm * s.inverse()});
    }
    return out;
}

inline std::string gluing_key(const Triangulation& t) {
    std::string key;
    for (const auto& g : t.gluings)
        key += std::to_string(g.source.tet) + ":" + std::to_string(g.source.face) + ">" +
               std::to_string(g.target.tet) + ":" + std::to_string(g.target.face) + "/" + g.perm.to_string() + ";";
    return key;
}

struct EnumeratedTriangulation {
    Triangulation triangulation;
    std::vector<int> degrees;  // sorted edge-degree multiset
    int vertex_count = 0;
};

/// Every valid orientable closed one-tetrahedron triangulation, one
/// representative per relabeling class (all 24 vertex relabelings).
inline std::vector<EnumeratedTriangulation> enumerate_one_tetrahedron_triangulations() {
    const std::array<std::array<std::pair<int, int>, 2>, 3> matchings{{
        {{{0, 1}, {2, 3}}},
        {{{0, 2}, {1, 3}}},
        {{{0, 3}, {1, 2}}},
    }};
    auto odd_perms_between = [](int f, int g) {
        std::vector<VertexPermutation> out;
        for (const auto& p : all_permutations())
            if (p[f] == g && p.is_odd())
                out.push_back(p);
        return out;
    };

    std::map<std::string, EnumeratedTriangulation> unique;
    for (const auto& m : matchings) {
        for (const auto& p : odd_perms_between(m[0].first, m[0].second)) {
            for (const auto& q : odd_perms_between(m[1].first, m[1].second)) {
                Triangulation t;
                t.tetra_count = 1;
                t.gluings = {{{0, m[0].first}, {0, m[0].second}, p}, {{0, m[1].first}, {0, m[1].second}, q}};
                if (!validate(t).ok())
                    continue;
                std::string best;
                Triangulation best_tri;
                for (const auto& sigma : all_permutations()) {
                    Triangulation c = canonical_form(relabel(t, {0}, {sigma}));
                    std::string key = gluing_key(c);
                    if (best.empty() || key < best) {
                        best = key;
                        best_tri = std::move(c);
                    }
                }
                if (unique.count(best))
                    continue;
                EnumeratedTriangulation entry;
                entry.triangulation = best_tri;
                entry.degrees = sorted_degrees(compute_edge_classes(best_tri));
                entry.vertex_count = static_cast<int>(compute_vertex_classes(best_tri).size());
                unique.emplace(best, std::move(entry));
            }
        }
    }
    std::vector<EnumeratedTriangulation> out;
    for (auto& [key, entry] : unique)
        out.push_back(std::move(entry));
    return out;
}

}  // namespace idealtri
