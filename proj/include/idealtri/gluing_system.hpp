#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "idealtri/combinatorics.hpp"
#include "idealtri/errors.hpp"

namespace idealtri {

using Complex = std::complex<double>;

/// Shapes closer than this to 0 or 1 are treated as degenerate.
inline constexpr double kShapeGuard = 1e-8;

enum class ShapeLabel { Z = 0, ZPrime = 1, ZDoublePrime = 2 };

/// Fixed labelling of edge slots: {01,23} -> z, {03,12} -> z', {02,13} -> z''.
/// This is the labelling induced by the ideal placement (0, inf, 1, z): seen
/// from any vertex the three incident edges carry z, z', z'' counterclockwise.
constexpr ShapeLabel edge_slot_label(int slot) noexcept {
    constexpr std::array<ShapeLabel, 6> labels{ShapeLabel::Z,           ShapeLabel::ZDoublePrime, ShapeLabel::ZPrime,
                                               ShapeLabel::ZPrime,      ShapeLabel::ZDoublePrime, ShapeLabel::Z};
    return labels[slot];
}

inline bool near_degenerate(Complex z) noexcept { return std::abs(z) < kShapeGuard || std::abs(1.0 - z) < kShapeGuard; }

struct ShapeTriple {
    Complex z, z_prime, z_double_prime;

    Complex operator[](ShapeLabel k) const noexcept {
        switch (k) {
            case ShapeLabel::Z: return z;
            case ShapeLabel::ZPrime: return z_prime;
            case ShapeLabel::ZDoublePrime: return z_double_prime;
        }
        return z;
    }
};

/// (z, 1/(1-z), (z-1)/z).
inline ShapeTriple derive_shape_triple(Complex z, int tet = -1) {
    if (near_degenerate(z))
        throw DegenerateShape(tet, z);
    return {z, 1.0 / (1.0 - z), (z - 1.0) / z};
}

/// The three parameter relations z(1-z'')-1, z'(1-z)-1, z''(1-z')-1.
inline std::array<Complex, 3> parameter_relations(const ShapeTriple& s) {
    return {s.z * (1.0 - s.z_double_prime) - 1.0, s.z_prime * (1.0 - s.z) - 1.0,
            s.z_double_prime * (1.0 - s.z_prime) - 1.0};
}

/// One free shape per tetrahedron; z' and z'' are always derived.
struct ShapeAssignment {
    std::vector<Complex> z;

    ShapeAssignment() = default;
    explicit ShapeAssignment(std::vector<Complex> shapes) : z(std::move(shapes)) {}
    static ShapeAssignment uniform(int n, Complex value) { return ShapeAssignment(std::vector<Complex>(n, value)); }

    int size() const noexcept { return static_cast<int>(z.size()); }
    Complex operator[](int i) const { return z[i]; }
};

/// Unit-modulus target per edge.
struct ConeTarget {
    std::vector<Complex> xi;

    ConeTarget() = default;
    explicit ConeTarget(std::vector<Complex> values) : xi(std::move(values)) {}
    static ConeTarget ones(int m) { return ConeTarget(std::vector<Complex>(m, Complex{1.0, 0.0})); }

    int size() const noexcept { return static_cast<int>(xi.size()); }
    Complex operator[](int j) const { return xi[j]; }

    bool is_unit(double tol) const {
        for (const auto& x : xi)
            if (std::abs(std::abs(x) - 1.0) >= tol)
                return false;
        return true;
    }
    bool all_one(double tol) const {
        for (const auto& x : xi)
            if (std::abs(x - 1.0) >= tol)
                return false;
        return true;
    }
    Complex product() const {
        Complex p{1.0, 0.0};
        for (const auto& x : xi)
            p *= x;
        return p;
    }
};

/// Counts of shape labels per (edge class, tetrahedron). Row j, column i of
/// `by_label[k]` is the number of slots of tetrahedron i in edge class j that
/// carry label k.
struct ExponentMatrix {
    std::array<Eigen::MatrixXi, 3> by_label;
    // Holonomy in reduced form: h(e_j) = sign_j * prod_i z_i^alpha_ji (1-z_i)^beta_ji.
    Eigen::MatrixXi alpha;
    Eigen::MatrixXi beta;
    std::vector<int> sign;

    int edges() const noexcept { return static_cast<int>(alpha.rows()); }
    int tetrahedra() const noexcept { return static_cast<int>(alpha.cols()); }

    const Eigen::MatrixXi& a() const noexcept { return by_label[0]; }
    const Eigen::MatrixXi& a_prime() const noexcept { return by_label[1]; }
    const Eigen::MatrixXi& a_double_prime() const noexcept { return by_label[2]; }

    int row_weight(int j) const { return a().row(j).sum() + a_prime().row(j).sum() + a_double_prime().row(j).sum(); }
};

/// Rebuilds the reduced (alpha, beta, sign) form from the label counts using
/// z' = (1-z)^-1 and z'' = -(1-z) z^-1.
inline void refresh_reduced_form(ExponentMatrix& e) {
    const auto& a = e.by_label[0];
    const auto& ap = e.by_label[1];
    const auto& app = e.by_label[2];
    e.alpha = a - app;
    e.beta = app - ap;
    e.sign.assign(a.rows(), 1);
    for (Eigen::Index j = 0; j < a.rows(); ++j)
        e.sign[j] = (app.row(j).sum() % 2 == 0) ? 1 : -1;
}

inline ExponentMatrix build_exponent_matrix(const Triangulation& t, const std::vector<EdgeClass>& edges) {
    const int m = static_cast<int>(edges.size());
    const int n = t.tetra_count;
    ExponentMatrix e;
    for (auto& mat : e.by_label)
        mat = Eigen::MatrixXi::Zero(m, n);
    for (const auto& edge : edges)
        for (const auto& f : edge.cycle)
            e.by_label[static_cast<int>(edge_slot_label(f.slot()))](edge.index, f.tet) += 1;
    refresh_reduced_form(e);
    return e;
}

inline ExponentMatrix build_exponent_matrix(const Triangulation& t) {
    return build_exponent_matrix(t, compute_edge_classes(t));
}

namespace detail {

inline Complex ipow(Complex base, int exp) {
    Complex result{1.0, 0.0};
    const bool invert = exp < 0;
    unsigned k = static_cast<unsigned>(invert ? -exp : exp);
    while (k) {
        if (k & 1u)
            result *= base;
        base *= base;
        k >>= 1u;
    }
    return invert ? 1.0 / result : result;
}

/// Throws when edge j's holonomy involves a factor that vanishes at z_i.
inline void check_row(const ShapeAssignment& shapes, const ExponentMatrix& e, int j) {
    for (int i = 0; i < e.tetrahedra(); ++i) {
        const Complex z = shapes[i];
        if ((e.alpha(j, i) != 0 || e.beta(j, i) != 0) && !std::isfinite(z.real() + z.imag()))
            throw DegenerateShape(i, z);
        if (e.alpha(j, i) != 0 && std::abs(z) < kShapeGuard)
            throw DegenerateShape(i, z);
        if (e.beta(j, i) != 0 && std::abs(1.0 - z) < kShapeGuard)
            throw DegenerateShape(i, z);
    }
}

inline void check_size(const ShapeAssignment& shapes, const ExponentMatrix& e) {
    if (shapes.size() != e.tetrahedra())
        throw Error("shape vector has " + std::to_string(shapes.size()) + " entries, expected " +
                    std::to_string(e.tetrahedra()));
}

}  // namespace detail

/// h(e_j) = prod_i z_i^a (z'_i)^a' (z''_i)^a''.
///
/// Evaluated in the reduced form sign * prod z^alpha (1-z)^beta, which is the
/// same rational function. A shape in the guard band raises DegenerateShape
/// only when the corresponding factor actually occurs in the row.
inline Complex edge_holonomy(const ShapeAssignment& shapes, const ExponentMatrix& e, int j) {
    detail::check_size(shapes, e);
    detail::check_row(shapes, e, j);
    Complex h{static_cast<double>(e.sign[j]), 0.0};
    for (int i = 0; i < e.tetrahedra(); ++i) {
        const Complex z = shapes[i];
        if (e.alpha(j, i) != 0)
            h *= detail::ipow(z, e.alpha(j, i));
        if (e.beta(j, i) != 0)
            h *= detail::ipow(1.0 - z, e.beta(j, i));
    }
    return h;
}

inline std::vector<Complex> edge_holonomies(const ShapeAssignment& shapes, const ExponentMatrix& e) {
    std::vector<Complex> h(e.edges());
    for (int j = 0; j < e.edges(); ++j)
        h[j] = edge_holonomy(shapes, e, j);
    return h;
}

/// Component j is h(e_j) - xi_j.
inline Eigen::VectorXcd evaluate_residual(const ShapeAssignment& shapes, const ExponentMatrix& e,
                                          const ConeTarget& xi) {
    if (xi.size() != e.edges())
        throw Error("cone target has " + std::to_string(xi.size()) + " entries, expected " +
                    std::to_string(e.edges()));
    Eigen::VectorXcd r(e.edges());
    for (int j = 0; j < e.edges(); ++j)
        r(j) = edge_holonomy(shapes, e, j) - xi[j];
    return r;
}

/// Entry (j, i) is dh(e_j)/dz_i = h(e_j) (alpha/z - beta/(1-z)), which equals
/// h(e_j) (a/z + a'/(1-z) + a''/(z(z-1))).
inline Eigen::MatrixXcd jacobian(const ShapeAssignment& shapes, const ExponentMatrix& e) {
    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(e.edges(), e.tetrahedra());
    for (int j = 0; j < e.edges(); ++j) {
        const Complex h = edge_holonomy(shapes, e, j);
        for (int i = 0; i < e.tetrahedra(); ++i) {
            const Complex z = shapes[i];
            Complex dlog{0.0, 0.0};
            if (e.alpha(j, i) != 0)
                dlog += static_cast<double>(e.alpha(j, i)) / z;
            if (e.beta(j, i) != 0)
                dlog -= static_cast<double>(e.beta(j, i)) / (1.0 - z);
            jac(j, i) = h * dlog;
        }
    }
    return jac;
}

struct NonUnitEdge {
    int edge = 0;
    double modulus = 0.0;
};

/// Either the unique xi solving the cone equations at these shapes, or the
/// list of edges whose holonomy is off the unit circle.
struct XiFromShapes {
    std::optional<ConeTarget> xi;
    std::vector<NonUnitEdge> not_unit;

    bool ok() const noexcept { return xi.has_value(); }
};

inline XiFromShapes xi_from_shapes(const ShapeAssignment& shapes, const ExponentMatrix& e, double tol) {
    XiFromShapes out;
    const auto h = edge_holonomies(shapes, e);
    for (int j = 0; j < e.edges(); ++j) {
        const double mod = std::abs(h[j]);
        if (!(std::abs(mod - 1.0) < tol))
            out.not_unit.push_back({j, mod});
    }
    if (out.not_unit.empty())
        out.xi = ConeTarget(h);
    return out;
}

/// Edges of degree one whose target is 1. Such an equation reads z = 1,
/// z' = 1 or z'' = 1, none of which has a non-degenerate solution.
inline std::vector<int> degree_one_obstructions(const std::vector<EdgeClass>& edges, const ConeTarget& xi,
                                                double tol = 1e-12) {
    std::vector<int> out;
    for (const auto& e : edges)
        if (e.degree() == 1 && std::abs(xi[e.index] - 1.0) < tol)
            out.push_back(e.index);
    return out;
}

}  // namespace idealtri
