#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "idealtri/corpus.hpp"
#include "idealtri/geometry.hpp"
#include "support/oracles.hpp"

using namespace idealtri;
using C = std::complex<double>;
using std::numbers::pi;

namespace {

void expect_near(C got, C want, double tol) { EXPECT_LT(std::abs(got - want), tol) << got << " vs " << want; }

// v_tet = Cl2(pi/3), from the Clausen series oracle.
const double kTetVolume = 1.0149416064096536;

}  // namespace

TEST(Dilog, SpecialValues) {
    EXPECT_EQ(dilog(0.0), C(0.0));
    expect_near(dilog(1.0), oracle::zeta2_partial_sum(), 1e-14);
    const double l2 = std::log(2.0);
    expect_near(dilog(0.5), pi * pi / 12.0 - l2 * l2 / 2.0, 1e-15);
    expect_near(dilog(-1.0), -pi * pi / 12.0, 1e-15);
}

TEST(Dilog, MatchesPowerSeriesInsideSmallDisk) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    for (int k = 0; k < 300; ++k) {
        const C z(u(rng), u(rng));
        if (std::abs(z) > 0.6)
            continue;
        expect_near(dilog(z), oracle::dilog_power_series(z), 1e-14);
    }
}

TEST(Dilog, MatchesQuadratureEverywhere) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int k = 0; k < 150; ++k) {
        const C z(u(rng), u(rng));
        if (std::abs(z.imag()) < 0.05 && z.real() > 0.9)
            continue;  // near the cut the oracle loses accuracy
        expect_near(dilog(z), oracle::dilog_quadrature(z), 1e-12);
    }
    for (C z : {C(0.5, 0.5), C(1.0, 1e-3), C(-10.0, 0.0), C(0.9, 0.3), C(2.0, 0.01), C(0.0, 1.5)})
        expect_near(dilog(z), oracle::dilog_quadrature(z, 20000), 1e-12);
}

TEST(Dilog, BranchCutThrows) {
    EXPECT_THROW(dilog(2.0), BranchCut);
    EXPECT_THROW(dilog(1.0 + 1e-12), BranchCut);
    EXPECT_NO_THROW(dilog(C(2.0, 1e-12)));
}

TEST(BlochWigner, RegularTetrahedron) {
    const double v = bloch_wigner(std::polar(1.0, pi / 3.0));
    EXPECT_NEAR(v, oracle::clausen2(pi / 3.0), 1e-13);
    EXPECT_NEAR(v, kTetVolume, 1e-12);
    EXPECT_NEAR(regular_tetrahedron_volume(), kTetVolume, 1e-12);
}

TEST(BlochWigner, UnitCircleIsClausen) {
    for (double th : {0.3, 1.0, 2.0, 2.5, 3.0, 4.0, 5.5})
        EXPECT_NEAR(bloch_wigner(std::polar(1.0, th)), oracle::clausen2(th), 1e-12) << th;
}

TEST(BlochWigner, ZeroOnRealLine) {
    for (double x : {-3.0, -1.0, 0.5, 2.0, 1e6})
        EXPECT_EQ(bloch_wigner(x), 0.0);
    EXPECT_THROW(bloch_wigner(0.0), DegenerateShape);
    EXPECT_THROW(bloch_wigner(1.0), DegenerateShape);
}

TEST(BlochWigner, SymmetriesOnRandomSamples) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        const C z = oracle::random_shape(rng, 0.05, 5.0);
        const double d = bloch_wigner(z);
        EXPECT_NEAR(bloch_wigner(std::conj(z)), -d, 1e-12);
        const auto s = derive_shape_triple(z);
        EXPECT_NEAR(bloch_wigner(s.z_prime), d, 1e-11);
        EXPECT_NEAR(bloch_wigner(s.z_double_prime), d, 1e-11);
        EXPECT_NEAR(bloch_wigner(1.0 / z), -d, 1e-11);
        // Sign follows the orientation.
        EXPECT_EQ(d > 0.0, z.imag() > 0.0);
    }
}

TEST(BlochWigner, MaximumAtRegularShape) {
    double best = -1.0;
    C arg_best;
    for (int a = 1; a < 200; ++a)
        for (int b = 1; b < 200; ++b) {
            const C z(-1.0 + 3.0 * a / 200.0, 2.0 * b / 200.0);
            const double v = bloch_wigner(z);
            if (v > best) {
                best = v;
                arg_best = z;
            }
        }
    EXPECT_LT(std::abs(arg_best - regular_shape()), 0.02);
    EXPECT_LE(best, kTetVolume + 1e-12);
    // Finer look around the maximiser.
    for (int a = -20; a <= 20; ++a)
        for (int b = -20; b <= 20; ++b)
            EXPECT_LE(bloch_wigner(regular_shape() + C(a, b) * 1e-3), kTetVolume + 1e-12);
}

TEST(Volume, Fig8CompleteStructure) {
    const auto r = solution_volume(ShapeAssignment::uniform(2, regular_shape()));
    EXPECT_NEAR(r.total, 2.0 * kTetVolume, 1e-9);
    EXPECT_TRUE(r.flat_tetrahedra.empty());
    EXPECT_TRUE(r.negatively_oriented.empty());
    ASSERT_EQ(r.per_tetrahedron.size(), 2u);
}

TEST(Volume, HopfFlatPoint) {
    const auto r = solution_volume(ShapeAssignment({-1.0}));
    EXPECT_EQ(r.total, 0.0);
    EXPECT_EQ(r.flat_tetrahedra, std::vector<int>{0});
}

TEST(Volume, NegativeOrientationFlagged) {
    const auto r = solution_volume(ShapeAssignment({regular_shape(), std::conj(regular_shape())}));
    EXPECT_NEAR(r.total, 0.0, 1e-12);
    EXPECT_EQ(r.negatively_oriented, std::vector<int>{1});
    EXPECT_THROW(solution_volume(ShapeAssignment({1.0})), DegenerateShape);
}

TEST(Angles, UnitCircleShapes) {
    for (double a : {0.3, 1.0, pi / 3.0, 2.5}) {
        const auto ang = dihedral_angles(std::polar(1.0, a));
        EXPECT_NEAR(ang[0], a, 1e-14);
        EXPECT_NEAR(ang[1], (pi - a) / 2.0, 1e-14);
        EXPECT_NEAR(ang[2], (pi - a) / 2.0, 1e-14);
    }
}

TEST(Angles, RealShapeAndAngleSum) {
    const auto two = dihedral_angles(2.0);
    EXPECT_EQ(two[0], 0.0);
    EXPECT_NEAR(two[1], pi, 1e-15);
    EXPECT_EQ(two[2], 0.0);
    std::mt19937_64 rng(14);
    for (int k = 0; k < 100; ++k) {
        C z = oracle::random_shape(rng);
        if (z.imag() < 0)
            z = std::conj(z);
        const auto ang = dihedral_angles(z);
        EXPECT_NEAR(ang[0] + ang[1] + ang[2], pi, 1e-12);
    }
}

TEST(Angles, HopfConeAngles) {
    const auto e = build_exponent_matrix(corpus("hopf"));
    for (double a : {0.4, pi / 2.0, 2.0}) {
        const auto c = cone_angles(ShapeAssignment({std::polar(1.0, a)}), e);
        EXPECT_NEAR(c[0], a, 1e-13);
        EXPECT_NEAR(c[1], a, 1e-13);
        EXPECT_NEAR(c[2], 2.0 * (pi - a), 1e-13);
    }
}

TEST(Angles, ConeAnglesAtRegularShape) {
    for (const auto& name : corpus_names()) {
        const auto t = corpus(name);
        const auto edges = compute_edge_classes(t);
        const auto c = cone_angles(ShapeAssignment::uniform(t.tetra_count, regular_shape()), build_exponent_matrix(t, edges));
        double total = 0.0;
        for (const auto& ec : edges) {
            EXPECT_NEAR(c[ec.index], ec.degree() * pi / 3.0, 1e-12);
            total += c[ec.index];
        }
        EXPECT_NEAR(total, 2.0 * pi * t.tetra_count, 1e-11);
    }
}
