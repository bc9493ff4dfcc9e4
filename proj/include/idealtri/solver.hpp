#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "idealtri/geometry.hpp"
#include "idealtri/gluing_system.hpp"

namespace idealtri {

struct SolverConfig {
    double tol = 1e-10;
    int max_iter = 200;
    int max_halvings = 30;
    double guard = kShapeGuard;
    double unit_tol = 1e-8;
    double root_tol = 1e-9;
    int q_max = 10000;
    std::uint64_t seed = 0;
    int restarts = 16;
    // Tetrahedra held at a fixed shape. A pinned shape may sit in the guard
    // band as long as the equations never evaluate the vanishing factor.
    std::vector<std::pair<int, Complex>> pinned;
};

enum class SolveStatus { Converged, MaxIterations, DegenerateShapeEncountered, Stalled };

inline const char* to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIterations: return "max-iterations";
        case SolveStatus::DegenerateShapeEncountered: return "degenerate-shape-encountered";
        case SolveStatus::Stalled: return "stalled";
    }
    return "unknown";
}

struct SolveResult {
    ShapeAssignment shapes;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::Stalled;
    std::vector<int> obstructed_edges;  // degree-one edges with target 1
    std::string diagnostic;
};

namespace detail {

inline bool in_guard(Complex z, double guard) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < guard ||
           std::abs(1.0 - z) < guard;
}

// Residual norm, or nullopt when the shapes hit a vanishing factor.
inline std::optional<double> safe_residual_norm(const ShapeAssignment& z, const ExponentMatrix& e,
                                                const ConeTarget& xi) {
    try {
        const double r = evaluate_residual(z, e, xi).norm();
        if (!std::isfinite(r))
            return std::nullopt;
        return r;
    } catch (const DegenerateShape&) {
        return std::nullopt;
    }
}

inline std::string obstruction_message(const std::vector<int>& edges) {
    std::ostringstream os;
    os << "degree-one edge";
    if (edges.size() > 1)
        os << 's';
    for (std::size_t k = 0; k < edges.size(); ++k)
        os << (k ? ", e" : " e") << edges[k];
    os << " with target 1: the equation reads z = 1 (or z' = 1, z'' = 1), which no non-degenerate shape "
          "satisfies, so there is no solution with these targets";
    return os.str();
}

}  // namespace detail

/// Damped Gauss-Newton on F(z) = h(z) - xi over the free (unpinned) shapes.
/// Each step solves the Levenberg-augmented least-squares problem
///   min |J d + F|^2 + mu |d|^2,  mu = |F|^2,
/// by complete orthogonal decomposition, so rank-deficient systems get a
/// minimum-norm step. The step is halved until the residual decreases and
/// the iterate stays out of the guard band.
inline SolveResult newton_solve(const Triangulation& t, const ConeTarget& xi, const ShapeAssignment& initial,
                                const SolverConfig& cfg = {}) {
    const auto edges = compute_edge_classes(t);
    const ExponentMatrix e = build_exponent_matrix(t, edges);
    if (initial.size() != t.tetra_count)
        throw Error("initial shape vector has " + std::to_string(initial.size()) + " entries, expected " +
                    std::to_string(t.tetra_count));
    if (xi.size() != e.edges())
        throw Error("cone target has " + std::to_string(xi.size()) + " entries, expected " +
                    std::to_string(e.edges()));

    SolveResult result;
    result.shapes = initial;
    std::vector<bool> is_pinned(t.tetra_count, false);
    for (const auto& [tet, value] : cfg.pinned) {
        if (tet < 0 || tet >= t.tetra_count)
            throw Error("pinned tetrahedron " + std::to_string(tet) + " out of range");
        is_pinned[tet] = true;
        result.shapes.z[tet] = value;
    }
    std::vector<int> free;
    for (int i = 0; i < t.tetra_count; ++i) {
        if (is_pinned[i])
            continue;
        if (detail::in_guard(result.shapes[i], cfg.guard))
            throw DegenerateShape(i, result.shapes[i]);
        free.push_back(i);
    }
    result.obstructed_edges = degree_one_obstructions(edges, xi);

    auto fail = [&](SolveStatus status, std::string why) {
        result.status = status;
        result.converged = false;
        result.diagnostic = std::move(why);
        if (!result.obstructed_edges.empty())
            result.diagnostic += "; " + detail::obstruction_message(result.obstructed_edges);
        return result;
    };

    auto norm = detail::safe_residual_norm(result.shapes, e, xi);
    if (!norm)
        return fail(SolveStatus::DegenerateShapeEncountered, "initial shapes hit a vanishing factor");
    result.residual_norm = *norm;

    const auto k = static_cast<Eigen::Index>(free.size());
    for (int iter = 0; iter <= cfg.max_iter; ++iter) {
        result.iterations = iter;
        if (result.residual_norm < cfg.tol) {
            result.converged = true;
            result.status = SolveStatus::Converged;
            return result;
        }
        if (iter == cfg.max_iter || k == 0)
            break;

        const Eigen::VectorXcd f = evaluate_residual(result.shapes, e, xi);
        const Eigen::MatrixXcd full = jacobian(result.shapes, e);
        const auto m = full.rows();
        Eigen::MatrixXcd aug = Eigen::MatrixXcd::Zero(m + k, k);
        for (Eigen::Index c = 0; c < k; ++c)
            aug.block(0, c, m, 1) = full.col(free[c]);
        const double mu = result.residual_norm * result.residual_norm;
        aug.block(m, 0, k, k) = std::sqrt(mu) * Eigen::MatrixXcd::Identity(k, k);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m + k);
        rhs.head(m) = -f;
        const Eigen::VectorXcd step = aug.completeOrthogonalDecomposition().solve(rhs);

        bool accepted = false;
        bool guard_hit = false;
        double scale = 1.0;
        for (int h = 0; h <= cfg.max_halvings; ++h, scale *= 0.5) {
            ShapeAssignment trial = result.shapes;
            bool blocked = false;
            for (Eigen::Index c = 0; c < k; ++c) {
                trial.z[free[c]] += scale * step(c);
                blocked = blocked || detail::in_guard(trial[free[c]], cfg.guard);
            }
            if (blocked) {
                guard_hit = true;
                continue;
            }
            const auto trial_norm = detail::safe_residual_norm(trial, e, xi);
            if (!trial_norm) {
                guard_hit = true;
                continue;
            }
            if (*trial_norm < result.residual_norm) {
                result.shapes = std::move(trial);
                result.residual_norm = *trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (guard_hit)
                return fail(SolveStatus::DegenerateShapeEncountered,
                            "iterate reached the guard band around {0, 1} and damping could not recover");
            return fail(SolveStatus::Stalled, "no damped step decreased the residual");
        }
    }
    std::ostringstream os;
    os << "no convergence after " << cfg.max_iter << " iterations (residual " << result.residual_norm << ")";
    for (int i : free)
        if (std::abs(result.shapes[i]) < 1e3 * cfg.guard || std::abs(1.0 - result.shapes[i]) < 1e3 * cfg.guard) {
            os << "; tetrahedron " << i << " is approaching a degenerate shape";
            return fail(SolveStatus::DegenerateShapeEncountered, os.str());
        }
    return fail(SolveStatus::MaxIterations, os.str());
}

/// Starting shapes drawn uniformly from the disk |z| < 2 outside the guard
/// band, reflected into the upper half plane three times out of four.
inline std::vector<ShapeAssignment> random_starts(int tetrahedra, int count, std::uint64_t seed,
                                                  double guard = kShapeGuard) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ShapeAssignment> out;
    out.reserve(count);
    for (int s = 0; s < count; ++s) {
        std::vector<Complex> z(tetrahedra);
        for (auto& zi : z) {
            do {
                const double r = 2.0 * std::sqrt(unit(rng));
                const double phi = 2.0 * std::numbers::pi * unit(rng);
                zi = std::polar(r, phi);
                if (zi.imag() < 0.0 && unit(rng) < 0.5)
                    zi = std::conj(zi);
            } while (detail::in_guard(zi, guard) || std::abs(zi.imag()) < guard);
        }
        out.emplace_back(std::move(z));
    }
    return out;
}

/// Newton from the regular shape, then from seeded random starts until one
/// converges. Returns the last attempt when none does.
inline SolveResult solve_with_restarts(const Triangulation& t, const ConeTarget& xi, const SolverConfig& cfg = {}) {
    SolveResult r = newton_solve(t, xi, ShapeAssignment::uniform(t.tetra_count, regular_shape()), cfg);
    if (r.converged)
        return r;
    for (const auto& start : random_starts(t.tetra_count, cfg.restarts, cfg.seed, cfg.guard)) {
        SolveResult attempt = newton_solve(t, xi, start, cfg);
        if (attempt.converged)
            return attempt;
        r = std::move(attempt);
    }
    return r;
}

struct RegularSolution {
    ShapeAssignment shapes;
    ConeTarget xi;
    double volume = 0.0;
};

/// Every tetrahedron regular; the edge targets are e^{i deg(e) pi/3}.
inline RegularSolution regular_solution(const Triangulation& t) {
    const auto edges = compute_edge_classes(t);
    RegularSolution out;
    out.shapes = ShapeAssignment::uniform(t.tetra_count, regular_shape());
    for (const auto& e : edges) {
        // Reduce deg mod 6 before taking the angle so multiples of 2 pi are exact.
        out.xi.xi.push_back(std::polar(1.0, (e.degree() % 6) * std::numbers::pi / 3.0));
    }
    out.volume = t.tetra_count * regular_tetrahedron_volume();
    return out;
}

/// A one-parameter family of targets.
using FamilyTarget = std::function<ConeTarget(double)>;

/// xi_j(theta) = e^{i k_j theta}.
inline FamilyTarget exponent_family(std::vector<int> exponents) {
    return [k = std::move(exponents)](double theta) {
        std::vector<Complex> xi;
        xi.reserve(k.size());
        for (int kj : k)
            xi.push_back(std::polar(1.0, kj * theta));
        return ConeTarget(std::move(xi));
    };
}

struct SweepPoint {
    double theta = 0.0;
    ConeTarget xi;
    SolveResult result;
};

/// Continuation along the grid: each solve starts from the last converged
/// solution. Failures are recorded and the sweep moves on.
inline std::vector<SweepPoint> sweep_family(const Triangulation& t, const FamilyTarget& family,
                                            const std::vector<double>& grid, const SolverConfig& cfg,
                                            const ShapeAssignment& initial) {
    std::vector<SweepPoint> out;
    ShapeAssignment seed = initial;
    for (double theta : grid) {
        SweepPoint p;
        p.theta = theta;
        p.xi = family(theta);
        p.result = newton_solve(t, p.xi, seed, cfg);
        if (p.result.converged)
            seed = p.result.shapes;
        out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<SweepPoint> sweep_family(const Triangulation& t, const FamilyTarget& family,
                                            const std::vector<double>& grid, const SolverConfig& cfg = {}) {
    return sweep_family(t, family, grid, cfg, ShapeAssignment::uniform(t.tetra_count, regular_shape()));
}

struct ConeLocusPoint {
    ShapeAssignment shapes;
    ConeTarget xi;
};

struct ConeLocusSample {
    std::vector<ConeLocusPoint> points;
    int dropped = 0;
};

/// Gauss-Newton on the real system log|h(e)| = 0 (equivalently |h(e)| = 1)
/// in the 2n real coordinates (Re z, Im z), with minimum-norm steps. Starts
/// that do not reach the unit-modulus locus, or that drift into the guard
/// band, are dropped and counted.
inline ConeLocusSample cone_locus_sample(const Triangulation& t, const std::vector<ShapeAssignment>& starts,
                                         const SolverConfig& cfg = {}) {
    const auto edges = compute_edge_classes(t);
    const ExponentMatrix e = build_exponent_matrix(t, edges);
    const int n = t.tetra_count;
    const int m = e.edges();

    auto log_moduli = [&](const ShapeAssignment& z) -> std::optional<Eigen::VectorXd> {
        Eigen::VectorXd r(m);
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                if (e.alpha(j, i) != 0)
                    s += e.alpha(j, i) * std::log(std::abs(z[i]));
                if (e.beta(j, i) != 0)
                    s += e.beta(j, i) * std::log(std::abs(1.0 - z[i]));
            }
            if (!std::isfinite(s))
                return std::nullopt;
            r(j) = s;
        }
        return r;
    };

    ConeLocusSample out;
    for (const auto& start : starts) {
        ShapeAssignment z = start;
        bool ok = false;
        auto r = log_moduli(z);
        for (int iter = 0; r && iter < cfg.max_iter; ++iter) {
            const double rn = r->norm();
            if (rn < cfg.tol) {
                ok = true;
                break;
            }
            Eigen::MatrixXd jac(m, 2 * n);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i) {
                    Complex dlog{0.0, 0.0};
                    if (e.alpha(j, i) != 0)
                        dlog += static_cast<double>(e.alpha(j, i)) / z[i];
                    if (e.beta(j, i) != 0)
                        dlog -= static_cast<double>(e.beta(j, i)) / (1.0 - z[i]);
                    jac(j, 2 * i) = dlog.real();
                    jac(j, 2 * i + 1) = -dlog.imag();
                }
            const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-*r);
            bool accepted = false;
            double scale = 1.0;
            for (int h = 0; h <= cfg.max_halvings; ++h, scale *= 0.5) {
                ShapeAssignment trial = z;
                bool blocked = false;
                for (int i = 0; i < n; ++i) {
                    trial.z[i] += scale * Complex{step(2 * i), step(2 * i + 1)};
                    blocked = blocked || detail::in_guard(trial[i], cfg.guard);
                }
                if (blocked)
                    continue;
                auto tr = log_moduli(trial);
                if (tr && tr->norm() < rn) {
                    z = std::move(trial);
                    r = std::move(tr);
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
                break;
        }
        if (ok) {
            try {
                auto x = xi_from_shapes(z, e, cfg.unit_tol);
                if (x.ok()) {
                    out.points.push_back({std::move(z), std::move(*x.xi)});
                    continue;
                }
            } catch (const DegenerateShape&) {
            }
        }
        ++out.dropped;
    }
    return out;
}

/// Smallest q <= q_max with |xi^q - 1| < tol; nullopt stands for infinite order.
inline std::optional<int> order_of_root_of_unity(Complex xi, double tol = 1e-9, int q_max = 10000,
                                                 double unit_tol = 1e-8) {
    if (!(std::abs(std::abs(xi) - 1.0) < std::max(tol, unit_tol)))
        throw NotUnitModulus("order_of_root_of_unity: |xi| = " + std::to_string(std::abs(xi)) + " is not 1");
    // |xi^q - 1| = 2 |sin(pi q t)| with t = arg(xi) / 2 pi; reduce q t mod 1
    // before taking the sine so large q loses no accuracy.
    const double turns = std::arg(xi) / (2.0 * std::numbers::pi);
    for (int q = 1; q <= q_max; ++q) {
        const double x = q * turns;
        const double frac = x - std::round(x);
        if (2.0 * std::abs(std::sin(std::numbers::pi * frac)) < tol)
            return q;
    }
    return std::nullopt;
}

struct CoverEdge {
    int edge = 0;
    Complex xi;
    std::optional<int> order;  // nullopt: infinite order
    int degree = 0;
    std::optional<long long> lifted_degree;
    // Points of N_o over an infinite-order edge are not manifold points.
    bool manifold_points() const noexcept { return order.has_value(); }
};

struct CoverDegreeReport {
    std::vector<CoverEdge> edges;
    bool all_orders_finite = true;
    bool trivial_cover = true;  // every order is 1, so N_o = N

    std::string summary() const {
        std::ostringstream os;
        for (const auto& c : edges) {
            os << "e" << c.edge << ": deg " << c.degree << ", order ";
            if (c.order)
                os << *c.order << ", lifted degree " << *c.lifted_degree;
            else
                os << "infinite (not manifold points)";
            os << '\n';
        }
        if (trivial_cover)
            os << "all orders are 1: N_o = N\n";
        return os.str();
    }
};

inline CoverDegreeReport branched_cover_report(const std::vector<EdgeClass>& edges, const ConeTarget& xi,
                                               const SolverConfig& cfg = {}) {
    if (xi.size() != static_cast<int>(edges.size()))
        throw Error("cone target size does not match the number of edges");
    CoverDegreeReport report;
    for (const auto& e : edges) {
        CoverEdge c;
        c.edge = e.index;
        c.xi = xi[e.index];
        c.degree = e.degree();
        c.order = order_of_root_of_unity(c.xi, cfg.root_tol, cfg.q_max, cfg.unit_tol);
        if (c.order) {
            c.lifted_degree = static_cast<long long>(*c.order) * c.degree;
            if (*c.order != 1)
                report.trivial_cover = false;
        } else {
            report.all_orders_finite = false;
            report.trivial_cover = false;
        }
        report.edges.push_back(c);
    }
    return report;
}

struct Certificate {
    bool classical = false;  // xi = (1, ..., 1)
    ShapeAssignment shapes;
    ConeTarget xi;
    double residual_norm = 0.0;
    CoverDegreeReport cover;
    std::string statement;
};

/// A converged solution for unit-modulus targets xi shows every edge of the
/// induced triangulation of the branched cover N_o is essential; for xi = 1
/// the cover is N itself.
inline Certificate essential_edge_certificate(const Triangulation& t, const SolveResult& result, const ConeTarget& xi,
                                              const SolverConfig& cfg = {}) {
    if (!result.converged)
        throw NotConverged("no certificate: the solve did not converge");
    const auto edges = compute_edge_classes(t);
    const ExponentMatrix e = build_exponent_matrix(t, edges);
    const double residual = evaluate_residual(result.shapes, e, xi).norm();
    if (!(residual < cfg.tol))
        throw NotConverged("no certificate: independent residual " + std::to_string(residual) +
                           " is above tolerance");
    if (!xi.is_unit(cfg.unit_tol))
        throw NotUnitModulus("no certificate: targets are not on the unit circle");

    Certificate c;
    c.shapes = result.shapes;
    c.xi = xi;
    c.residual_norm = residual;
    c.cover = branched_cover_report(edges, xi, cfg);
    c.classical = c.cover.trivial_cover;
    std::ostringstream os;
    if (c.classical) {
        os << "all edges essential: the gluing equations have a solution, so every edge of the triangulation of N "
              "is essential";
    } else {
        os << "all edges essential in N_o: the cone equations have a solution, so every edge of the induced "
              "triangulation of the branched cover N_o is essential (orders ";
        for (std::size_t k = 0; k < c.cover.edges.size(); ++k) {
            const auto& o = c.cover.edges[k].order;
            os << (k ? ", " : "") << (o ? std::to_string(*o) : std::string("inf"));
        }
        os << ")";
    }
    c.statement = os.str();
    return c;
}

}  // namespace idealtri
