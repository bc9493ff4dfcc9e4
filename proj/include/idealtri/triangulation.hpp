#pragma once

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "idealtri/errors.hpp"
#include "idealtri/permutation.hpp"

namespace idealtri {

/// Face f of a tetrahedron is the triangle opposite (omitting) vertex f.
struct FaceRef {
    int tet = 0;
    int face = 0;

    friend constexpr bool operator==(const FaceRef&, const FaceRef&) = default;
    friend constexpr auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

/// Identifies `source` with `target`; `perm` carries the vertex labels of the
/// source tetrahedron to those of the target tetrahedron, so perm[source.face]
/// must equal target.face.
struct FaceGluing {
    FaceRef source;
    FaceRef target;
    VertexPermutation perm;

    FaceGluing reversed() const { return {target, source, perm.inverse()}; }

    friend bool operator==(const FaceGluing&, const FaceGluing&) = default;
};

/// Raw combinatorial data. May be invalid; see validate().
struct Triangulation {
    int tetra_count = 0;
    std::vector<FaceGluing> gluings;
};

// ---------------------------------------------------------------------------
// Edge slots: the six edges of a tetrahedron in the fixed order 01,02,03,12,13,23.

inline constexpr std::array<std::pair<int, int>, 6> kEdgeSlotVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_slot(int a, int b) noexcept {
    if (a > b)
        std::swap(a, b);
    // 01->0 02->1 03->2 12->3 13->4 23->5
    return a == 0 ? b - 1 : (a == 1 ? b + 1 : 5);
}

constexpr int opposite_slot(int slot) noexcept { return 5 - slot; }

// ---------------------------------------------------------------------------
// Validation

enum class IssueKind {
    EmptyTriangulation,
    IndexOutOfRange,
    PermutationFaceMismatch,
    FaceDoubleGlued,
    FaceUnglued,
    NonInvolutiveGluing,
    OrientationViolation,
    InvalidEdge,
};

inline const char* to_string(IssueKind kind) {
    switch (kind) {
        case IssueKind::EmptyTriangulation: return "EmptyTriangulation";
        case IssueKind::IndexOutOfRange: return "IndexOutOfRange";
        case IssueKind::PermutationFaceMismatch: return "PermutationFaceMismatch";
        case IssueKind::FaceDoubleGlued: return "FaceDoubleGlued";
        case IssueKind::FaceUnglued: return "FaceUnglued";
        case IssueKind::NonInvolutiveGluing: return "NonInvolutiveGluing";
        case IssueKind::OrientationViolation: return "OrientationViolation";
        case IssueKind::InvalidEdge: return "InvalidEdge";
    }
    return "?";
}

struct ValidationIssue {
    IssueKind kind;
    FaceRef where;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
    bool has(IssueKind kind) const noexcept {
        for (const auto& issue : issues)
            if (issue.kind == kind)
                return true;
        return false;
    }
    std::string summary() const {
        std::string out;
        for (const auto& issue : issues) {
            if (!out.empty())
                out += "; ";
            out += std::string(to_string(issue.kind)) + " at (" + std::to_string(issue.where.tet) + ", " +
                   std::to_string(issue.where.face) + "): " + issue.message;
        }
        return out;
    }
};

class InvalidTriangulation : public Error {
public:
    explicit InvalidTriangulation(ValidationReport report)
        : Error("invalid triangulation: " + report.summary()), report_{std::move(report)} {}
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// Position while walking around an edge: the edge is {a, b} of `tet`, and
/// (a, b, c, d) is an even ordering of the tetrahedron's vertices. The walk
/// leaves through the face omitting d.
struct EdgeFrame {
    int tet = 0;
    std::array<int, 4> v{0, 1, 2, 3};

    int a() const noexcept { return v[0]; }
    int b() const noexcept { return v[1]; }
    int slot() const noexcept { return edge_slot(v[0], v[1]); }
    int exit_face() const noexcept { return v[3]; }

    friend bool operator==(const EdgeFrame&, const EdgeFrame&) = default;
};

/// Even completion (a, b, c, d) of an ordered vertex pair.
inline EdgeFrame make_edge_frame(int tet, int a, int b) {
    std::array<int, 4> v{a, b, -1, -1};
    int k = 2;
    for (int x = 0; x < 4; ++x)
        if (x != a && x != b)
            v[k++] = x;
    if (VertexPermutation{v}.sign() < 0)
        std::swap(v[2], v[3]);
    return {tet, v};
}

/// Dense face-pairing lookup for a triangulation that passed validation.
class GluingTable {
public:
    GluingTable() = default;

    int size() const noexcept { return static_cast<int>(neighbor_.size()); }
    const FaceRef& neighbor(int tet, int face) const { return neighbor_[tet][face]; }
    const VertexPermutation& perm(int tet, int face) const { return perm_[tet][face]; }

    /// Crosses the exit face of `frame` into the adjacent tetrahedron.
    EdgeFrame step(const EdgeFrame& frame) const {
        const auto& p = perm_[frame.tet][frame.exit_face()];
        const FaceRef& next = neighbor_[frame.tet][frame.exit_face()];
        return {next.tet, {p[frame.v[0]], p[frame.v[1]], p[frame.v[3]], p[frame.v[2]]}};
    }

private:
    friend GluingTable build_table(const Triangulation&, ValidationReport&);
    std::vector<std::array<FaceRef, 4>> neighbor_;
    std::vector<std::array<VertexPermutation, 4>> perm_;
};

namespace detail {

inline void add_issue(ValidationReport& report, IssueKind kind, FaceRef where, std::string msg) {
    report.issues.push_back({kind, where, std::move(msg)});
}

}  // namespace detail

/// Builds the lookup table, recording every problem in `report`. The returned
/// table is only meaningful when `report.ok()`.
inline GluingTable build_table(const Triangulation& t, ValidationReport& report) {
    GluingTable table;
    const int n = t.tetra_count;
    if (n <= 0) {
        detail::add_issue(report, IssueKind::EmptyTriangulation, {0, 0}, "triangulation has no tetrahedra");
        return table;
    }
    table.neighbor_.assign(n, {});
    table.perm_.assign(n, {});
    std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});

    auto in_range = [n](const FaceRef& f) { return f.tet >= 0 && f.tet < n && f.face >= 0 && f.face < 4; };

    auto record = [&](const FaceRef& from, const FaceRef& to, const VertexPermutation& p) {
        if (!seen[from.tet][from.face]) {
            seen[from.tet][from.face] = true;
            table.neighbor_[from.tet][from.face] = to;
            table.perm_[from.tet][from.face] = p;
            return;
        }
        const FaceRef& prior = table.neighbor_[from.tet][from.face];
        if (prior != to) {
            detail::add_issue(report, IssueKind::FaceDoubleGlued, from, "face appears in more than one gluing");
        } else if (table.perm_[from.tet][from.face] != p) {
            detail::add_issue(report, IssueKind::NonInvolutiveGluing, from,
                              "gluing listed twice with permutations that are not mutually inverse");
        }
    };

    for (const auto& g : t.gluings) {
        if (!in_range(g.source) || !in_range(g.target)) {
            detail::add_issue(report, IssueKind::IndexOutOfRange, in_range(g.source) ? g.target : g.source,
                              "tetrahedron or face index out of range");
            continue;
        }
        if (!g.perm.is_bijection()) {
            detail::add_issue(report, IssueKind::PermutationFaceMismatch, g.source, "permutation is not a bijection");
            continue;
        }
        if (g.perm[g.source.face] != g.target.face) {
            detail::add_issue(report, IssueKind::PermutationFaceMismatch, g.source,
                              "permutation does not carry the source face onto the target face");
            continue;
        }
        if (g.source == g.target) {
            detail::add_issue(report, IssueKind::NonInvolutiveGluing, g.source, "face glued to itself");
            continue;
        }
        if (!g.perm.is_odd())
            detail::add_issue(report, IssueKind::OrientationViolation, g.source,
                              "gluing permutation " + g.perm.to_string() + " is even");
        record(g.source, g.target, g.perm);
        record(g.target, g.source, g.perm.inverse());
    }

    for (int tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f)
            if (!seen[tet][f])
                detail::add_issue(report, IssueKind::FaceUnglued, {tet, f}, "face is not glued");
    return table;
}

/// Walks around every edge and reports edges identified with themselves in
/// reverse. Requires a complete table (every face glued exactly once).
inline void check_edges(const Triangulation& t, const GluingTable& table, ValidationReport& report) {
    std::vector<std::array<bool, 6>> visited(t.tetra_count, {false, false, false, false, false, false});
    for (int tet = 0; tet < t.tetra_count; ++tet) {
        for (int s = 0; s < 6; ++s) {
            if (visited[tet][s])
                continue;
            const auto [a, b] = kEdgeSlotVertices[s];
            const EdgeFrame start = make_edge_frame(tet, a, b);
            EdgeFrame cur = start;
            bool reversed = false;
            const int limit = 6 * t.tetra_count + 1;
            for (int steps = 0; steps < limit; ++steps) {
                visited[cur.tet][cur.slot()] = true;
                cur = table.step(cur);
                if (cur.tet == start.tet && cur.slot() == start.slot()) {
                    if (cur != start)
                        reversed = true;
                    break;
                }
            }
            if (reversed)
                detail::add_issue(report, IssueKind::InvalidEdge, {tet, s},
                                  "edge slot " + std::to_string(a) + std::to_string(b) +
                                      " is identified with itself in reverse");
        }
    }
}

/// Orientation problems leave the table complete, so edges can still be walked.
inline bool table_complete(const ValidationReport& report) {
    for (const auto& issue : report.issues)
        if (issue.kind != IssueKind::OrientationViolation)
            return false;
    return true;
}

/// Checks face coverage, involution, orientation and edge validity. Never
/// modifies its argument.
inline ValidationReport validate(const Triangulation& t) {
    ValidationReport report;
    GluingTable table = build_table(t, report);
    if (table_complete(report))
        check_edges(t, table, report);
    return report;
}

/// Lookup table for a triangulation that must be valid; throws otherwise.
inline GluingTable require_valid(const Triangulation& t) {
    ValidationReport report;
    GluingTable table = build_table(t, report);
    if (table_complete(report))
        check_edges(t, table, report);
    if (!report.ok())
        throw InvalidTriangulation(std::move(report));
    return table;
}

}  // namespace idealtri
