#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "idealtri/corpus.hpp"
#include "idealtri/gluing_system.hpp"
#include "support/equation_matcher.hpp"
#include "support/oracles.hpp"

using namespace idealtri;
using C = std::complex<double>;

namespace {

const C kI{0.0, 1.0};
const C kRegular{0.5, std::sqrt(3.0) / 2.0};

void expect_near(C got, C want, double tol) { EXPECT_LT(std::abs(got - want), tol) << got << " vs " << want; }

}  // namespace

TEST(SlotLabels, OppositeEdgesShareLabels) {
    EXPECT_EQ(edge_slot_label(edge_slot(0, 1)), ShapeLabel::Z);
    EXPECT_EQ(edge_slot_label(edge_slot(2, 3)), ShapeLabel::Z);
    for (int s = 0; s < 6; ++s)
        EXPECT_EQ(edge_slot_label(s), edge_slot_label(opposite_slot(s)));
    // {03,12} carry z', {02,13} carry z''.
    EXPECT_EQ(edge_slot_label(edge_slot(0, 3)), ShapeLabel::ZPrime);
    EXPECT_EQ(edge_slot_label(edge_slot(1, 2)), ShapeLabel::ZPrime);
    EXPECT_EQ(edge_slot_label(edge_slot(0, 2)), ShapeLabel::ZDoublePrime);
    EXPECT_EQ(edge_slot_label(edge_slot(1, 3)), ShapeLabel::ZDoublePrime);
}

TEST(ShapeTriple, Examples) {
    const auto two = derive_shape_triple(2.0);
    expect_near(two.z_prime, -1.0, 1e-15);
    expect_near(two.z_double_prime, 0.5, 1e-15);

    const auto i = derive_shape_triple(kI);
    expect_near(i.z_prime, C(0.5, 0.5), 1e-15);
    expect_near(i.z_double_prime, C(1.0, 1.0), 1e-15);

    const auto r = derive_shape_triple(kRegular);
    expect_near(r.z_prime, kRegular, 1e-15);
    expect_near(r.z_double_prime, kRegular, 1e-15);
}

TEST(ShapeTriple, DegenerateShapesThrow) {
    EXPECT_THROW(derive_shape_triple(0.0), DegenerateShape);
    EXPECT_THROW(derive_shape_triple(1.0), DegenerateShape);
    EXPECT_THROW(derive_shape_triple(C(1.0, 5e-9)), DegenerateShape);
    EXPECT_NO_THROW(derive_shape_triple(C(1.0, 1e-6)));
}

TEST(ShapeTriple, RelationsVanish) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 200; ++k) {
        const auto s = derive_shape_triple(oracle::random_shape(rng, 1e-3, 10.0));
        for (const auto& p : parameter_relations(s))
            EXPECT_LT(std::abs(p), 1e-12);
        expect_near(s.z * s.z_prime * s.z_double_prime, -1.0, 1e-12);
    }
}

TEST(ExponentMatrix, HopfRowWeights) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    EXPECT_EQ(e.row_weight(0), 1);
    EXPECT_EQ(e.row_weight(1), 1);
    EXPECT_EQ(e.row_weight(2), 4);
}

TEST(ExponentMatrix, Fig8ComplementRowWeights) {
    const auto e = build_exponent_matrix(corpus("fig8_complement"));
    EXPECT_EQ(e.row_weight(0), 6);
    EXPECT_EQ(e.row_weight(1), 6);
}

TEST(ExponentMatrix, ColumnAndRowSums) {
    std::vector<Triangulation> all;
    for (const auto& name : corpus_names())
        all.push_back(corpus(name));
    for (const auto& e : enumerate_one_tetrahedron_triangulations())
        all.push_back(e.triangulation);
    for (const auto& t : all) {
        const auto edges = compute_edge_classes(t);
        const auto e = build_exponent_matrix(t, edges);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < t.tetra_count; ++i)
                EXPECT_EQ(e.by_label[k].col(i).sum(), 2);
        for (int j = 0; j < e.edges(); ++j)
            EXPECT_EQ(e.row_weight(j), edges[j].degree());
    }
}

TEST(Fig8InS3, MatchesReferenceEquations) {
    const auto e = build_exponent_matrix(corpus("fig8_in_s3"));
    const auto w = oracle::match_equations(oracle::rows_of(e), oracle::figure_eight_in_s3_reference());
    ASSERT_TRUE(w.has_value());
}

TEST(Fig8InS3, MatcherRejectsOtherSystems) {
    const auto e = build_exponent_matrix(corpus("fig8_complement"));
    EXPECT_FALSE(oracle::match_equations(oracle::rows_of(e), oracle::figure_eight_in_s3_reference()).has_value());
    auto rows = oracle::rows_of(build_exponent_matrix(corpus("fig8_in_s3")));
    std::swap(rows[3][0][0], rows[3][0][1]);
    EXPECT_FALSE(oracle::match_equations(rows, oracle::figure_eight_in_s3_reference()).has_value());
}

TEST(Holonomy, HopfIsZZZinv2) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    for (C z : {kI, C(0.3, 0.7), C(-2.0, 0.1), kRegular}) {
        const auto h = edge_holonomies(ShapeAssignment({z}), e);
        expect_near(h[0], z, 1e-14);
        expect_near(h[1], z, 1e-14);
        expect_near(h[2], 1.0 / (z * z), 1e-13);
    }
}

TEST(Holonomy, TrefoilIsZZinv) {
    const auto e = build_exponent_matrix(corpus("trefoil"));
    for (C z : {kI, C(0.3, 0.7), C(-2.0, 0.1)}) {
        const auto h = edge_holonomies(ShapeAssignment({z}), e);
        expect_near(h[0], z, 1e-14);
        expect_near(h[1], 1.0 / z, 1e-13);
    }
}

TEST(Holonomy, Fig8CompleteSolution) {
    const auto e = build_exponent_matrix(corpus("fig8_complement"));
    const auto h = edge_holonomies(ShapeAssignment::uniform(2, kRegular), e);
    expect_near(h[0], 1.0, 1e-13);
    expect_near(h[1], 1.0, 1e-13);
}

TEST(Holonomy, RegularShapesGiveDegreeTimesPiOver3) {
    for (const auto& name : corpus_names()) {
        const auto t = corpus(name);
        const auto edges = compute_edge_classes(t);
        const auto e = build_exponent_matrix(t, edges);
        const auto h = edge_holonomies(ShapeAssignment::uniform(t.tetra_count, kRegular), e);
        for (const auto& ec : edges)
            expect_near(h[ec.index], std::polar(1.0, ec.degree() * std::numbers::pi / 3.0), 1e-12);
    }
}

TEST(Residual, HopfExamples) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    const ShapeAssignment z({kI});
    const auto r = evaluate_residual(z, e, ConeTarget({kI, kI, -1.0}));
    EXPECT_LT(r.norm(), 1e-15);
    const auto r1 = evaluate_residual(z, e, ConeTarget::ones(3));
    expect_near(r1(0), kI - 1.0, 1e-15);
    expect_near(r1(1), kI - 1.0, 1e-15);
    expect_near(r1(2), -2.0, 1e-15);
}

TEST(Residual, TrefoilFamily) {
    const auto e = build_exponent_matrix(corpus("trefoil"));
    for (double th : {0.3, 1.0, 2.0, 3.0}) {
        const C z = std::polar(1.0, th);
        EXPECT_LT(evaluate_residual(ShapeAssignment({z}), e, ConeTarget({z, 1.0 / z})).norm(), 1e-14);
    }
}

TEST(Residual, WrongSizesThrow) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    EXPECT_THROW(evaluate_residual(ShapeAssignment({kI}), e, ConeTarget::ones(2)), Error);
    EXPECT_THROW(evaluate_residual(ShapeAssignment({kI, kI}), e, ConeTarget::ones(3)), Error);
}

TEST(Residual, DegenerateShapeIsReported) {
    const auto hopf = build_exponent_matrix(corpus("hopf"));
    EXPECT_THROW(evaluate_residual(ShapeAssignment({0.0}), hopf, ConeTarget::ones(3)), DegenerateShape);
    EXPECT_THROW(evaluate_residual(ShapeAssignment({1e-9}), hopf, ConeTarget::ones(3)), DegenerateShape);
    const auto fig8 = build_exponent_matrix(corpus("fig8_complement"));
    EXPECT_THROW(evaluate_residual(ShapeAssignment({1.0, kRegular}), fig8, ConeTarget::ones(2)), DegenerateShape);
    EXPECT_THROW(evaluate_residual(ShapeAssignment({kRegular, C(1.0, 1e-9)}), fig8, ConeTarget::ones(2)),
                 DegenerateShape);
}

TEST(Residual, GuardAppliesPerFactor) {
    // The hopf holonomies (z, z, z^-2) contain no 1 - z factor, so z = 1 is
    // an honest point of the rational functions.
    const auto e = build_exponent_matrix(corpus("hopf"));
    EXPECT_LT(evaluate_residual(ShapeAssignment({1.0}), e, ConeTarget::ones(3)).norm(), 1e-15);
}

TEST(Jacobian, SingleFactorDerivativeIsOne) {
    // Hopf e0 is the single slot carrying z, so dh/dz = 1.
    const auto e = build_exponent_matrix(corpus("hopf"));
    for (C z : {kI, C(3.0, -1.0), C(-0.5, 0.2)})
        expect_near(jacobian(ShapeAssignment({z}), e)(0, 0), 1.0, 1e-14);
}

TEST(Jacobian, HopfDegreeFourEdgeFiniteDifference) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    auto h2 = [&](C z) { return edge_holonomy(ShapeAssignment({z}), e, 2); };
    const C fd = oracle::central_difference(h2, kI);
    expect_near(jacobian(ShapeAssignment({kI}), e)(2, 0), fd, 1e-6);
}

TEST(Jacobian, Fig8CompleteSolutionFiniteDifference) {
    const auto e = build_exponent_matrix(corpus("fig8_complement"));
    const ShapeAssignment z = ShapeAssignment::uniform(2, kRegular);
    const auto jac = jacobian(z, e);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            auto f = [&](C w) {
                ShapeAssignment v = z;
                v.z[i] = w;
                return edge_holonomy(v, e, j);
            };
            expect_near(jac(j, i), oracle::central_difference(f, z[i]), 1e-6);
        }
}

TEST(XiFromShapes, RegularShapesGiveUnitTargets) {
    for (const auto& name : corpus_names()) {
        const auto t = corpus(name);
        const auto e = build_exponent_matrix(t);
        const auto x = xi_from_shapes(ShapeAssignment::uniform(t.tetra_count, kRegular), e, 1e-8);
        ASSERT_TRUE(x.ok()) << name;
        expect_near(x.xi->product(), 1.0, 1e-12);
        EXPECT_LT(evaluate_residual(ShapeAssignment::uniform(t.tetra_count, kRegular), e, *x.xi).norm(), 1e-15);
    }
}

TEST(XiFromShapes, HopfOffCircleReportsAllEdges) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    const auto x = xi_from_shapes(ShapeAssignment({2.0}), e, 1e-8);
    EXPECT_FALSE(x.ok());
    ASSERT_EQ(x.not_unit.size(), 3u);
    EXPECT_DOUBLE_EQ(x.not_unit[0].modulus, 2.0);
    EXPECT_DOUBLE_EQ(x.not_unit[2].modulus, 0.25);
}

TEST(XiFromShapes, TrefoilSeventhRoot) {
    const auto e = build_exponent_matrix(corpus("trefoil"));
    const C z = std::polar(1.0, 2.0 * std::numbers::pi / 7.0);
    const auto x = xi_from_shapes(ShapeAssignment({z}), e, 1e-8);
    ASSERT_TRUE(x.ok());
    expect_near((*x.xi)[0], z, 1e-14);
    expect_near((*x.xi)[1], std::conj(z), 1e-14);
}

TEST(DegreeOne, ObstructionsOnlyForTargetOne) {
    const auto edges = compute_edge_classes(corpus("hopf"));
    EXPECT_EQ(degree_one_obstructions(edges, ConeTarget::ones(3)), (std::vector<int>{0, 1}));
    EXPECT_TRUE(degree_one_obstructions(edges, ConeTarget({kI, kI, -1.0})).empty());
}
