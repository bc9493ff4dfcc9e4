#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "idealtri/combinatorics.hpp"
#include "idealtri/corpus.hpp"
#include "support/oracles.hpp"

using namespace idealtri;

namespace {

VertexPermutation perm(const char* s) { return *VertexPermutation::parse(s); }

Triangulation one_tet(const char* p, const char* q) {
    Triangulation t;
    t.tetra_count = 1;
    t.gluings = {{{0, 0}, {0, 1}, perm(p)}, {{0, 2}, {0, 3}, perm(q)}};
    return t;
}

}  // namespace

TEST(VertexPermutation, ParseRejectsNonBijections) {
    EXPECT_FALSE(VertexPermutation::parse("0012").has_value());
    EXPECT_FALSE(VertexPermutation::parse("012").has_value());
    EXPECT_FALSE(VertexPermutation::parse("0124").has_value());
    EXPECT_TRUE(VertexPermutation::parse("3210").has_value());
}

TEST(VertexPermutation, ParityAndComposition) {
    EXPECT_EQ(perm("0123").sign(), 1);
    EXPECT_TRUE(perm("1023").is_odd());
    EXPECT_TRUE(perm("1230").is_odd());   // 4-cycle
    EXPECT_FALSE(perm("1203").is_odd());  // 3-cycle
    for (const auto& p : all_permutations()) {
        EXPECT_EQ(p * p.inverse(), VertexPermutation::identity());
        for (const auto& q : all_permutations())
            EXPECT_EQ((p * q).sign(), p.sign() * q.sign());
    }
    EXPECT_EQ(all_permutations().size(), 24u);
    // (p*q)(v) = p(q(v))
    const auto p = perm("1230"), q = perm("0213");
    for (int v = 0; v < 4; ++v)
        EXPECT_EQ((p * q)[v], p[q[v]]);
}

TEST(Validate, CorpusEntriesAreValid) {
    for (const auto& name : corpus_names())
        EXPECT_TRUE(validate(corpus(name)).ok()) << name;
}

TEST(Validate, EmptyTriangulation) {
    Triangulation t;
    EXPECT_TRUE(validate(t).has(IssueKind::EmptyTriangulation));
}

TEST(Validate, FaceDoubleGlued) {
    Triangulation t;
    t.tetra_count = 2;
    t.gluings = {{{0, 0}, {1, 0}, perm("0132")},
                 {{0, 0}, {1, 1}, perm("1032")},
                 {{0, 1}, {1, 2}, perm("0213")}};
    const auto r = validate(t);
    EXPECT_TRUE(r.has(IssueKind::FaceDoubleGlued));
    bool names_face = false;
    for (const auto& i : r.issues)
        if (i.kind == IssueKind::FaceDoubleGlued && i.where == FaceRef{0, 0})
            names_face = true;
    EXPECT_TRUE(names_face);
}

TEST(Validate, EvenPermutationIsOrientationViolation) {
    const auto t = one_tet("1203", "0132");  // 1203 sends 0 -> 1 and is a 3-cycle
    const auto r = validate(t);
    ASSERT_TRUE(r.has(IssueKind::OrientationViolation));
    EXPECT_EQ(r.issues.front().where, (FaceRef{0, 0}));
}

TEST(Validate, UngluedFaces) {
    Triangulation t;
    t.tetra_count = 1;
    t.gluings = {{{0, 0}, {0, 1}, perm("1023")}};
    const auto r = validate(t);
    EXPECT_TRUE(r.has(IssueKind::FaceUnglued));
    EXPECT_EQ(std::count_if(r.issues.begin(), r.issues.end(),
                            [](const ValidationIssue& i) { return i.kind == IssueKind::FaceUnglued; }),
              2);
}

TEST(Validate, InconsistentRepeatIsNonInvolutive) {
    auto t = one_tet("1023", "0132");
    t.gluings.push_back({{0, 1}, {0, 0}, perm("1032")});  // not the inverse of 1023
    EXPECT_TRUE(validate(t).has(IssueKind::NonInvolutiveGluing));
    auto ok = one_tet("1023", "0132");
    ok.gluings.push_back({{0, 1}, {0, 0}, perm("1023").inverse()});
    EXPECT_TRUE(validate(ok).ok());
}

TEST(Validate, OutOfRangeAndFaceMismatch) {
    auto t = one_tet("1023", "0132");
    t.gluings[1].target.tet = 3;
    EXPECT_TRUE(validate(t).has(IssueKind::IndexOutOfRange));
    auto u = one_tet("0123", "0132");
    EXPECT_TRUE(validate(u).has(IssueKind::PermutationFaceMismatch));
}

TEST(Validate, ReversedEdgeIsInvalid) {
    // A coherently oriented gluing can never reverse an edge, so the search
    // runs over non-orientable one-tetrahedron gluings.
    int reversed = 0;
    for (const auto& p : all_permutations())
        for (const auto& q : all_permutations()) {
            if (p[0] != 1 || q[2] != 3)
                continue;
            Triangulation t;
            t.tetra_count = 1;
            t.gluings = {{{0, 0}, {0, 1}, p}, {{0, 2}, {0, 3}, q}};
            const auto r = validate(t);
            if (r.has(IssueKind::InvalidEdge)) {
                ++reversed;
                EXPECT_TRUE(r.has(IssueKind::OrientationViolation));
            }
        }
    EXPECT_GT(reversed, 0);
}

TEST(Validate, DoesNotMutateInput) {
    const auto t = corpus("fig8_in_s3");
    const auto copy = t;
    validate(t);
    EXPECT_EQ(gluing_key(t), gluing_key(copy));
}

TEST(EdgeClasses, CorpusDegrees) {
    EXPECT_EQ(sorted_degrees(compute_edge_classes(corpus("hopf"))), (std::vector<int>{1, 1, 4}));
    EXPECT_EQ(sorted_degrees(compute_edge_classes(corpus("trefoil"))), (std::vector<int>{1, 5}));
    EXPECT_EQ(sorted_degrees(compute_edge_classes(corpus("fig8_complement"))), (std::vector<int>{6, 6}));
    EXPECT_EQ(sorted_degrees(compute_edge_classes(corpus("fig8_in_s3"))), (std::vector<int>{1, 5, 5, 7}));
    EXPECT_EQ(sorted_degrees(compute_edge_classes(corpus("doubled_tetrahedron"))),
              (std::vector<int>{2, 2, 2, 2, 2, 2}));
}

TEST(EdgeClasses, NumberedByDegree) {
    EXPECT_EQ(edge_degrees(compute_edge_classes(corpus("hopf"))), (std::vector<int>{1, 1, 4}));
    EXPECT_EQ(edge_degrees(compute_edge_classes(corpus("trefoil"))), (std::vector<int>{1, 5}));
    EXPECT_EQ(edge_degrees(compute_edge_classes(corpus("fig8_in_s3"))), (std::vector<int>{1, 5, 5, 7}));
}

TEST(EdgeClasses, CyclesCloseUnderStepping) {
    for (const auto& name : corpus_names()) {
        const auto t = corpus(name);
        const auto table = require_valid(t);
        int total = 0;
        for (const auto& e : compute_edge_classes(t)) {
            total += e.degree();
            EdgeFrame cur = e.cycle.front();
            for (int k = 0; k < e.degree(); ++k) {
                EXPECT_EQ(cur, e.cycle[k]);
                cur = table.step(cur);
            }
            EXPECT_EQ(cur, e.cycle.front()) << name;
        }
        EXPECT_EQ(total, 6 * t.tetra_count);
    }
}

TEST(VertexClasses, LinkSurfaces) {
    const auto f8 = compute_vertex_classes(corpus("fig8_complement"));
    ASSERT_EQ(f8.size(), 1u);
    EXPECT_EQ(f8[0].link_genus, 1);
    EXPECT_EQ(f8[0].link_euler_characteristic, 0);

    const auto hopf = compute_vertex_classes(corpus("hopf"));
    ASSERT_EQ(hopf.size(), 2u);
    for (const auto& v : hopf)
        EXPECT_EQ(v.link_genus, 0);

    const auto tref = compute_vertex_classes(corpus("trefoil"));
    ASSERT_EQ(tref.size(), 1u);
    EXPECT_EQ(tref[0].link_genus, 0);

    EXPECT_EQ(compute_vertex_classes(corpus("doubled_tetrahedron")).size(), 4u);
    const auto s3 = compute_vertex_classes(corpus("fig8_in_s3"));
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(s3[0].link_genus, 0);
}

TEST(VertexClasses, CornersAndLinkCounts) {
    for (const auto& name : corpus_names()) {
        const auto t = corpus(name);
        std::size_t corners = 0;
        for (const auto& v : compute_vertex_classes(t)) {
            corners += v.corners.size();
            EXPECT_EQ(v.link_triangles, static_cast<int>(v.corners.size()));
            EXPECT_EQ(2 * v.link_edges, 3 * v.link_triangles);
            EXPECT_EQ(v.link_euler_characteristic % 2, 0);
            EXPECT_LE(v.link_euler_characteristic, 2);
        }
        EXPECT_EQ(corners, 4u * t.tetra_count);
        EXPECT_EQ(canonical_form(t).gluings.size(), 2u * t.tetra_count);
    }
}

TEST(AbstractNeighbourhood, HopfDegreeFourEdge) {
    const auto t = corpus("hopf");
    const auto nb = abstract_edge_neighbourhood(t, 2);
    ASSERT_EQ(nb.simplices.size(), 4u);
    for (const auto& s : nb.simplices)
        EXPECT_EQ(s.frame.tet, 0);
    EXPECT_EQ(nb.identifications.size(), 4u);
}

TEST(AbstractNeighbourhood, DegreeOneEdgeIsOneSimplex) {
    for (const char* name : {"hopf", "trefoil", "fig8_in_s3"}) {
        const auto nb = abstract_edge_neighbourhood(corpus(name), 0);
        EXPECT_EQ(nb.simplices.size(), 1u) << name;
    }
}

TEST(AbstractNeighbourhood, Fig8ComplementAlternates) {
    const auto t = corpus("fig8_complement");
    for (int j = 0; j < 2; ++j) {
        const auto nb = abstract_edge_neighbourhood(t, j);
        ASSERT_EQ(nb.simplices.size(), 6u);
        int in_first = 0;
        for (const auto& s : nb.simplices)
            in_first += s.frame.tet == 0;
        EXPECT_EQ(in_first, 3);
    }
}

TEST(SelfIdentification, OneTetrahedronIsNeverNonSingular) {
    for (const auto& e : enumerate_one_tetrahedron_triangulations())
        EXPECT_FALSE(self_identification_report(e.triangulation).non_singular);
    EXPECT_FALSE(self_identification_report(corpus("hopf")).almost_non_singular);
}

TEST(SelfIdentification, DoubledTetrahedronIsNonSingular) {
    const auto r = self_identification_report(corpus("doubled_tetrahedron"));
    EXPECT_TRUE(r.almost_non_singular);
    EXPECT_TRUE(r.non_singular);
}

TEST(Enumeration, OneTetrahedronClasses) {
    const auto all = enumerate_one_tetrahedron_triangulations();
    std::vector<std::vector<int>> degrees;
    for (const auto& e : all) {
        EXPECT_TRUE(validate(e.triangulation).ok());
        degrees.push_back(e.degrees);
    }
    EXPECT_NE(std::find(degrees.begin(), degrees.end(), std::vector<int>{1, 1, 4}), degrees.end());
    EXPECT_NE(std::find(degrees.begin(), degrees.end(), std::vector<int>{1, 5}), degrees.end());
    EXPECT_EQ(all.size(), 4u);
}

TEST(Enumeration, CorpusHopfAndTrefoilAreEnumerated) {
    const auto all = enumerate_one_tetrahedron_triangulations();
    for (const char* name : {"hopf", "trefoil"}) {
        const auto t = corpus(name);
        const auto want = sorted_degrees(compute_edge_classes(t));
        int hits = 0;
        for (const auto& e : all)
            hits += e.degrees == want;
        EXPECT_EQ(hits, 1) << name;
    }
}

TEST(Invariance, GluingOrderAndRelabeling) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 5;
        const auto t = oracle::random_triangulation(n, rng);
        auto shuffled = t;
        std::shuffle(shuffled.gluings.begin(), shuffled.gluings.end(), rng);
        for (auto& g : shuffled.gluings)
            if (rng() & 1u)
                g = g.reversed();
        EXPECT_EQ(sorted_degrees(compute_edge_classes(t)), sorted_degrees(compute_edge_classes(shuffled)));
        EXPECT_EQ(compute_vertex_classes(t).size(), compute_vertex_classes(shuffled).size());

        std::vector<int> tet_map(n);
        std::iota(tet_map.begin(), tet_map.end(), 0);
        std::shuffle(tet_map.begin(), tet_map.end(), rng);
        std::vector<VertexPermutation> vmaps;
        for (int i = 0; i < n; ++i) {
            auto p = all_permutations()[rng() % 24];
            if (p.is_odd())  // keep orientations
                p = perm("1023") * p;
            vmaps.push_back(p);
        }
        const auto r = relabel(t, tet_map, vmaps);
        ASSERT_TRUE(validate(r).ok());
        EXPECT_EQ(sorted_degrees(compute_edge_classes(t)), sorted_degrees(compute_edge_classes(r)));
        std::vector<int> g1, g2;
        for (const auto& v : compute_vertex_classes(t))
            g1.push_back(v.link_genus);
        for (const auto& v : compute_vertex_classes(r))
            g2.push_back(v.link_genus);
        std::sort(g1.begin(), g1.end());
        std::sort(g2.begin(), g2.end());
        EXPECT_EQ(g1, g2);
        const auto s1 = self_identification_report(t);
        const auto s2 = self_identification_report(r);
        EXPECT_EQ(s1.non_singular, s2.non_singular);
        EXPECT_EQ(s1.almost_non_singular, s2.almost_non_singular);
    }
}
