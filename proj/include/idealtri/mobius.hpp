#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "idealtri/errors.hpp"

namespace idealtri {

/// A point of the Riemann sphere C u {inf}.
struct SpherePoint {
    std::complex<double> value{};
    bool infinite = false;

    static SpherePoint infinity() noexcept { return {{}, true}; }
    static SpherePoint finite(std::complex<double> z) noexcept { return {z, false}; }

    friend bool operator==(const SpherePoint& p, const SpherePoint& q) noexcept {
        return p.infinite == q.infinite && (p.infinite || p.value == q.value);
    }
};

/// Chordal distance, bounded by 2 and finite at infinity.
inline double chordal_distance(const SpherePoint& p, const SpherePoint& q) noexcept {
    if (p.infinite && q.infinite)
        return 0.0;
    if (p.infinite)
        return 2.0 / std::sqrt(1.0 + std::norm(q.value));
    if (q.infinite)
        return 2.0 / std::sqrt(1.0 + std::norm(p.value));
    return 2.0 * std::abs(p.value - q.value) / std::sqrt((1.0 + std::norm(p.value)) * (1.0 + std::norm(q.value)));
}

/// w -> (a w + b) / (c w + d), a 2x2 complex matrix identified with its
/// negative. Maps built through the factory functions have determinant 1.
class MobiusMap {
public:
    using Complex = std::complex<double>;

    MobiusMap() noexcept : m_{Complex{1}, Complex{0}, Complex{0}, Complex{1}} {}
    MobiusMap(Complex a, Complex b, Complex c, Complex d) noexcept : m_{a, b, c, d} {}

    static MobiusMap identity() noexcept { return {}; }

    Complex a() const noexcept { return m_[0]; }
    Complex b() const noexcept { return m_[1]; }
    Complex c() const noexcept { return m_[2]; }
    Complex d() const noexcept { return m_[3]; }
    const std::array<Complex, 4>& entries() const noexcept { return m_; }

    Complex determinant() const noexcept { return m_[0] * m_[3] - m_[1] * m_[2]; }
    Complex trace() const noexcept { return m_[0] + m_[3]; }

    /// Scales to determinant 1 (either square root; the class is up to sign).
    MobiusMap normalized() const {
        const Complex det = determinant();
        if (std::abs(det) == 0.0)
            throw Error("singular Mobius matrix");
        const Complex s = std::sqrt(det);
        return {m_[0] / s, m_[1] / s, m_[2] / s, m_[3] / s};
    }

    /// Inverse of a determinant-1 matrix (adjugate).
    MobiusMap inverse() const noexcept { return {m_[3], -m_[1], -m_[2], m_[0]}; }

    friend MobiusMap operator*(const MobiusMap& p, const MobiusMap& q) noexcept {
        return {p.m_[0] * q.m_[0] + p.m_[1] * q.m_[2], p.m_[0] * q.m_[1] + p.m_[1] * q.m_[3],
                p.m_[2] * q.m_[0] + p.m_[3] * q.m_[2], p.m_[2] * q.m_[1] + p.m_[3] * q.m_[3]};
    }

    SpherePoint operator()(const SpherePoint& p) const noexcept {
        if (p.infinite) {
            if (m_[2] == Complex{0})
                return SpherePoint::infinity();
            return SpherePoint::finite(m_[0] / m_[2]);
        }
        const Complex den = m_[2] * p.value + m_[3];
        if (den == Complex{0})
            return SpherePoint::infinity();
        return SpherePoint::finite((m_[0] * p.value + m_[1]) / den);
    }

    /// Derivative at a fixed point p, in the chart 1/w when p is infinite.
    Complex multiplier_at(const SpherePoint& p) const {
        if (p.infinite)
            return m_[3] * m_[3];
        const Complex den = m_[2] * p.value + m_[3];
        return 1.0 / (den * den);
    }

    /// Entrywise comparison allowing a global sign flip.
    bool equal_up_to_sign(const MobiusMap& other, double tol) const noexcept {
        double plus = 0.0, minus = 0.0;
        for (int i = 0; i < 4; ++i) {
            plus = std::max(plus, std::abs(m_[i] - other.m_[i]));
            minus = std::max(minus, std::abs(m_[i] + other.m_[i]));
        }
        return std::min(plus, minus) < tol;
    }

    bool is_identity(double tol) const noexcept { return equal_up_to_sign(identity(), tol); }

    /// Map sending p0 -> 0, p1 -> inf, p2 -> 1. Points must be distinct.
    static MobiusMap to_standard_triple(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& p2) {
        if (p0 == p1 || p1 == p2 || p0 == p2)
            throw Error("standard-triple map needs three distinct points");
        MobiusMap m;
        if (p0.infinite)
            m = {Complex{0}, p2.value - p1.value, Complex{1}, -p1.value};
        else if (p1.infinite)
            m = {Complex{1}, -p0.value, Complex{0}, p2.value - p0.value};
        else if (p2.infinite)
            m = {Complex{1}, -p0.value, Complex{1}, -p1.value};
        else
            m = {p2.value - p1.value, -p0.value * (p2.value - p1.value), p2.value - p0.value,
                 -p1.value * (p2.value - p0.value)};
        return m.normalized();
    }

    /// The unique map with from[k] -> to[k] for k = 0, 1, 2.
    static MobiusMap from_triples(const std::array<SpherePoint, 3>& from, const std::array<SpherePoint, 3>& to) {
        const MobiusMap s = to_standard_triple(from[0], from[1], from[2]);
        const MobiusMap t = to_standard_triple(to[0], to[1], to[2]);
        return (t.inverse() * s).normalized();
    }

private:
    std::array<Complex, 4> m_;
};

/// Cross-ratio [p0, p1; p2, p3]: the image of p3 under the map sending
/// p0, p1, p2 to 0, inf, 1.
inline std::complex<double> cross_ratio(const SpherePoint& p0, const SpherePoint& p1, const SpherePoint& p2,
                                        const SpherePoint& p3) {
    const SpherePoint image = MobiusMap::to_standard_triple(p0, p1, p2)(p3);
    if (image.infinite)
        throw Error("cross-ratio is infinite (p3 coincides with p1)");
    return image.value;
}

/// Trace class of a PSL(2,C) element: the trace, defined up to sign.
struct TraceClass {
    std::complex<double> value;

    /// Representative with non-negative real part (positive imaginary part on ties).
    std::complex<double> canonical() const noexcept {
        if (value.real() < 0.0 || (value.real() == 0.0 && value.imag() < 0.0))
            return -value;
        return value;
    }

    bool matches(std::complex<double> expected, double tol) const noexcept {
        return std::min(std::abs(value - expected), std::abs(value + expected)) < tol;
    }
};

inline TraceClass trace(const MobiusMap& m) { return {m.normalized().trace()}; }

}  // namespace idealtri
