#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "idealtri/gluing_system.hpp"

namespace idealtri {

namespace detail {

// B_{2k} / (2k+1)!, k = 1..15, for the series
//   Li2(z) = u - u^2/4 + sum_k B_{2k} u^{2k+1} / (2k+1)!,  u = -log(1-z).
inline constexpr std::array<double, 15> kDilogBernoulli{
    0.027777777777777776,
    -0.0002777777777777778,
    4.72411186696901e-06,
    -9.185773074661964e-08,
    1.8978869988971e-09,
    -4.0647616451442256e-11,
    8.921691020456452e-13,
    -1.9939295860721074e-14,
    4.518980029619918e-16,
    -1.0356517612181247e-17,
    2.395218621026187e-19,
    -5.581785874325009e-21,
    1.3091507554183213e-22,
    -3.0874198024267403e-24,
    7.315975652702203e-26,
};

// Region |z| <= 1, Re z <= 1/2, where |u| stays below ~1.5.
inline std::complex<double> dilog_bernoulli(std::complex<double> z) {
    const std::complex<double> u = -std::log(1.0 - z);
    const std::complex<double> u2 = u * u;
    std::complex<double> sum = u - 0.25 * u2;
    std::complex<double> power = u * u2;
    for (double c : kDilogBernoulli) {
        sum += c * power;
        power *= u2;
    }
    return sum;
}

inline std::complex<double> dilog_unit_disk(std::complex<double> z) {
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (z.real() > 0.5) {
        if (z == 1.0)
            return pi2_6;
        return pi2_6 - std::log(z) * std::log(1.0 - z) - dilog_bernoulli(1.0 - z);
    }
    return dilog_bernoulli(z);
}

}  // namespace detail

/// Principal branch of the dilogarithm Li2(z), cut along (1, inf).
inline std::complex<double> dilog(std::complex<double> z) {
    constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (z.imag() == 0.0 && z.real() > 1.0)
        throw BranchCut("dilog: argument lies on the branch cut (1, inf)");
    if (z == 0.0)
        return 0.0;
    if (std::abs(z) > 1.0) {
        const std::complex<double> l = std::log(-z);
        return -pi2_6 - 0.5 * l * l - detail::dilog_unit_disk(1.0 / z);
    }
    return detail::dilog_unit_disk(z);
}

/// Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) log|z|: the signed
/// volume of the ideal tetrahedron of shape z. Zero on the real line.
inline double bloch_wigner(std::complex<double> z) {
    if (z == 0.0 || z == 1.0)
        throw DegenerateShape(-1, z);
    if (z.imag() == 0.0)
        return 0.0;
    // D(z) = -D(1/z) = -D(1-z) keeps the evaluation inside the unit disk
    // with Re z <= 1/2, where the series converges fastest.
    if (std::abs(z) > 1.0)
        return -bloch_wigner(1.0 / z);
    if (z.real() > 0.5)
        return -bloch_wigner(1.0 - z);
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

/// Volume of the regular ideal tetrahedron, D(e^{i pi/3}).
inline double regular_tetrahedron_volume() {
    static const double v = bloch_wigner(std::polar(1.0, std::numbers::pi / 3.0));
    return v;
}

/// Shape of the regular ideal tetrahedron, (1 + i sqrt 3) / 2.
inline std::complex<double> regular_shape() { return {0.5, std::sqrt(3.0) / 2.0}; }

/// |Im z| below this classifies a tetrahedron as flat.
inline constexpr double kFlatTolerance = 1e-9;

struct VolumeReport {
    std::vector<double> per_tetrahedron;
    double total = 0.0;
    std::vector<int> flat_tetrahedra;
    std::vector<int> negatively_oriented;
};

inline VolumeReport solution_volume(const ShapeAssignment& shapes) {
    VolumeReport report;
    for (int i = 0; i < shapes.size(); ++i) {
        const auto z = shapes[i];
        if (near_degenerate(z))
            throw DegenerateShape(i, z);
        double v = 0.0;
        if (std::abs(z.imag()) < kFlatTolerance) {
            report.flat_tetrahedra.push_back(i);
        } else {
            v = bloch_wigner(z);
            if (z.imag() < 0.0)
                report.negatively_oriented.push_back(i);
        }
        report.per_tetrahedron.push_back(v);
        report.total += v;
    }
    return report;
}

namespace detail {

inline double principal_arg(std::complex<double> w) {
    const double a = std::arg(w);
    return a <= -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace detail

/// (arg z, arg z', arg z''), each in (-pi, pi]. They sum to pi when Im z > 0.
inline std::array<double, 3> dihedral_angles(std::complex<double> z) {
    const ShapeTriple s = derive_shape_triple(z);
    return {detail::principal_arg(s.z), detail::principal_arg(s.z_prime), detail::principal_arg(s.z_double_prime)};
}

/// Total angle around each edge: the sum of the slot angles, which equals
/// arg h(e) + 2 pi k for the integer k the summation determines.
inline std::vector<double> cone_angles(const ShapeAssignment& shapes, const ExponentMatrix& e) {
    std::vector<double> out(e.edges(), 0.0);
    for (int i = 0; i < e.tetrahedra(); ++i) {
        const auto angles = dihedral_angles(shapes[i]);
        for (int j = 0; j < e.edges(); ++j)
            for (int k = 0; k < 3; ++k)
                out[j] += e.by_label[k](j, i) * angles[k];
    }
    return out;
}

}  // namespace idealtri
