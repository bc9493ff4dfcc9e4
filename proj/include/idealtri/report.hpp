#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "idealtri/developing.hpp"
#include "idealtri/geometry.hpp"
#include "idealtri/gluing_system.hpp"
#include "idealtri/io.hpp"
#include "idealtri/solver.hpp"

namespace idealtri {

using Json = nlohmann::json;

inline constexpr int kReportVersion = 1;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json to_json(const std::vector<Complex>& v) {
    Json out = Json::array();
    for (const auto& z : v)
        out.push_back(to_json(z));
    return out;
}

inline std::vector<Complex> complex_list_from_json(const Json& j) {
    std::vector<Complex> out;
    for (const auto& x : j)
        out.push_back(complex_from_json(x));
    return out;
}

inline Json to_json(const MobiusMap& m) {
    return Json{{"entries", Json::array({to_json(m.a()), to_json(m.b()), to_json(m.c()), to_json(m.d())})},
                {"up_to_sign", true},
                {"trace", to_json(m.trace())}};
}

inline MobiusMap mobius_from_json(const Json& j) {
    const auto& e = j.at("entries");
    return MobiusMap(complex_from_json(e.at(0)), complex_from_json(e.at(1)), complex_from_json(e.at(2)),
                     complex_from_json(e.at(3)));
}

inline Json to_json(const Eigen::MatrixXi& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

inline Eigen::MatrixXi int_matrix_from_json(const Json& j, int rows, int cols) {
    Eigen::MatrixXi m(rows, cols);
    if (static_cast<int>(j.size()) != rows)
        throw Error("exponent matrix has the wrong number of rows");
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw Error("exponent matrix has the wrong number of columns");
        for (int c = 0; c < cols; ++c)
            m(r, c) = j[r][c].get<int>();
    }
    return m;
}

/// Triangulation text, sizes, edge degrees and the exponent matrix.
inline Json triangulation_json(const Triangulation& t) {
    const auto edges = compute_edge_classes(t);
    const auto e = build_exponent_matrix(t, edges);
    Json out;
    out["report_version"] = kReportVersion;
    out["triangulation"] = print_triangulation(t);
    out["tetrahedra"] = t.tetra_count;
    out["edge_degrees"] = edge_degrees(edges);
    out["exponents"] = Json{{"a", to_json(e.a())}, {"a_prime", to_json(e.a_prime())},
                            {"a_double_prime", to_json(e.a_double_prime())}};
    return out;
}

inline ExponentMatrix exponents_from_json(const Json& report) {
    const int n = report.at("tetrahedra").get<int>();
    const int m = static_cast<int>(report.at("edge_degrees").size());
    const auto& ex = report.at("exponents");
    ExponentMatrix e;
    e.by_label[0] = int_matrix_from_json(ex.at("a"), m, n);
    e.by_label[1] = int_matrix_from_json(ex.at("a_prime"), m, n);
    e.by_label[2] = int_matrix_from_json(ex.at("a_double_prime"), m, n);
    refresh_reduced_form(e);
    return e;
}

inline void add_shapes(Json& report, const ShapeAssignment& shapes, const Triangulation& t) {
    const auto e = build_exponent_matrix(t);
    report["shapes"] = to_json(shapes.z);
    report["holonomy"] = to_json(edge_holonomies(shapes, e));
}

inline void add_solve(Json& report, const SolveResult& r, const ConeTarget& xi) {
    report["xi"] = to_json(xi.xi);
    report["converged"] = r.converged;
    report["status"] = to_string(r.status);
    report["iterations"] = r.iterations;
    report["residual_norm"] = r.residual_norm;
    if (!r.diagnostic.empty())
        report["diagnostic"] = r.diagnostic;
}

/// Generator matrices and every edge matrix with its multiplier.
inline void add_developing(Json& report, const Triangulation& t, const ShapeAssignment& shapes) {
    const auto dc = develop_spanning_tree(t, shapes);
    const auto edges = compute_edge_classes(t);
    Json gens = Json::array();
    for (const auto& g : dc.generators) {
        Json j = to_json(g.holonomy);
        j["gluing"] = Json::array({g.gluing.source.tet, g.gluing.source.face, g.gluing.target.tet,
                                   g.gluing.target.face, g.gluing.perm.to_string()});
        gens.push_back(j);
    }
    Json mats = Json::array();
    for (const auto& e : edges) {
        const auto h = edge_holonomy_matrix(dc, t, edges, e.index);
        Json j = to_json(h.matrix);
        j["edge"] = e.index;
        j["multiplier"] = to_json(h.multiplier);
        mats.push_back(j);
    }
    report["generators"] = gens;
    report["edge_matrices"] = mats;
}

inline void add_volume(Json& report, const VolumeReport& v) {
    report["volume"] = Json{{"per_tetrahedron", v.per_tetrahedron},
                            {"total", v.total},
                            {"flat_tetrahedra", v.flat_tetrahedra},
                            {"negatively_oriented", v.negatively_oriented}};
}

inline void add_cover(Json& report, const CoverDegreeReport& c) {
    Json orders = Json::array(), lifted = Json::array();
    for (const auto& e : c.edges) {
        orders.push_back(e.order ? Json(*e.order) : Json(nullptr));
        lifted.push_back(e.lifted_degree ? Json(*e.lifted_degree) : Json(nullptr));
    }
    report["orders"] = orders;
    report["lifted_degrees"] = lifted;
    report["all_orders_finite"] = c.all_orders_finite;
    report["trivial_cover"] = c.trivial_cover;
}

inline void add_certificate(Json& report, const Certificate& c) {
    add_cover(report, c.cover);
    report["certificate"] = c.statement;
}

struct VerificationResult {
    std::vector<std::string> passed;
    std::vector<std::string> failed;

    bool ok() const noexcept { return failed.empty(); }
};

/// Re-checks a report from its own contents: the residual from the embedded
/// exponents and shapes, multiplier = h(e) for every edge matrix, unit
/// determinants, and prod xi = 1. Nothing is re-solved.
inline VerificationResult verify_report(const Json& report, double residual_tol = 1e-12,
                                        double multiplier_tol = 1e-9, double det_tol = 1e-10,
                                        double product_tol = 1e-8) {
    VerificationResult out;
    auto check = [&](bool good, const std::string& what) { (good ? out.passed : out.failed).push_back(what); };

    if (report.value("report_version", 0) != kReportVersion) {
        out.failed.push_back("report_version is not " + std::to_string(kReportVersion));
        return out;
    }
    const ExponentMatrix e = exponents_from_json(report);
    std::optional<std::vector<Complex>> h;
    if (report.contains("shapes")) {
        const ShapeAssignment shapes(complex_list_from_json(report.at("shapes")));
        h = edge_holonomies(shapes, e);
        if (report.contains("holonomy")) {
            const auto stated = complex_list_from_json(report.at("holonomy"));
            bool same = stated.size() == h->size();
            for (std::size_t j = 0; same && j < stated.size(); ++j)
                same = std::abs(stated[j] - (*h)[j]) < multiplier_tol;
            check(same, "stated holonomies match the shapes");
        }
        if (report.contains("xi") && report.contains("residual_norm")) {
            const ConeTarget xi(complex_list_from_json(report.at("xi")));
            const double r = evaluate_residual(shapes, e, xi).norm();
            const double stated = report.at("residual_norm").get<double>();
            check(std::abs(r - stated) < residual_tol, "residual norm reproduces");
        }
    }
    if (report.contains("edge_matrices")) {
        for (const auto& m : report.at("edge_matrices")) {
            const int j = m.at("edge").get<int>();
            const MobiusMap mm = mobius_from_json(m);
            check(std::abs(mm.determinant() - 1.0) < det_tol, "edge " + std::to_string(j) + " determinant is 1");
            if (h)
                check(std::abs(complex_from_json(m.at("multiplier")) - (*h)[j]) < multiplier_tol,
                      "edge " + std::to_string(j) + " multiplier equals h(e)");
        }
    }
    if (report.contains("generators")) {
        int k = 0;
        for (const auto& g : report.at("generators")) {
            check(std::abs(mobius_from_json(g).determinant() - 1.0) < det_tol,
                  "generator " + std::to_string(k) + " determinant is 1");
            ++k;
        }
    }
    if (report.contains("xi")) {
        const ConeTarget xi(complex_list_from_json(report.at("xi")));
        check(std::abs(xi.product() - 1.0) < product_tol, "product of xi is 1");
    }
    return out;
}

}  // namespace idealtri
