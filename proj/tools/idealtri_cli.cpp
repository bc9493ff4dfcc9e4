// Command-line front end: idealtri <command> [options]
//
// Exit codes: 0 success, 1 solve/verification failure, 2 input error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idealtri/corpus.hpp"
#include "idealtri/developing.hpp"
#include "idealtri/geometry.hpp"
#include "idealtri/io.hpp"
#include "idealtri/report.hpp"
#include "idealtri/solver.hpp"

using namespace idealtri;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

// Input problems that are not exceptions thrown by the library.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string file;
    std::string corpus_name;
    std::string xi = "ones";
    std::string shapes;
    std::string init;
    std::string pin;
    std::string family;
    std::string theta_grid;
    std::string json_path;
    std::string report_path;
    std::string out_dir = ".";
    double tol = 1e-10;
    int max_iter = 200;
    std::uint64_t seed = 0;
    int restarts = 16;
    int count = 20;
};

std::string cx(Complex z) {
    std::ostringstream os;
    os << std::setprecision(17) << z.real() << (z.imag() < 0.0 || std::signbit(z.imag()) ? "-" : "+")
       << std::abs(z.imag()) << "i";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Triangulation load(const Options& o) {
    if (!o.file.empty() && !o.corpus_name.empty())
        throw InputError("give either --file or --corpus, not both");
    if (!o.file.empty())
        return parse_triangulation(read_file(o.file));
    if (!o.corpus_name.empty())
        return corpus(o.corpus_name);
    throw InputError("a triangulation is required (--file or --corpus)");
}

SolverConfig config(const Options& o, int tetrahedra) {
    SolverConfig cfg;
    cfg.tol = o.tol;
    cfg.max_iter = o.max_iter;
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    if (!o.pin.empty()) {
        // "tet:value,tet:value"
        std::stringstream ss(o.pin);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw InputError("--pin expects tet:value pairs");
            const int tet = std::stoi(item.substr(0, colon));
            if (tet < 0 || tet >= tetrahedra)
                throw InputError("--pin tetrahedron out of range");
            cfg.pinned.emplace_back(tet, parse_complex(item.substr(colon + 1)));
        }
    }
    return cfg;
}

ConeTarget target(const Options& o, int edges) {
    if (o.xi == "ones")
        return ConeTarget::ones(edges);
    ConeTarget xi(parse_complex_list(o.xi));
    if (xi.size() != edges)
        throw InputError("--xi has " + std::to_string(xi.size()) + " entries, the triangulation has " +
                         std::to_string(edges) + " edges");
    return xi;
}

ShapeAssignment shape_list(const std::string& text, int tetrahedra, const char* flag) {
    ShapeAssignment z(parse_complex_list(text));
    if (z.size() != tetrahedra)
        throw InputError(std::string(flag) + " has " + std::to_string(z.size()) + " entries, expected " +
                         std::to_string(tetrahedra));
    return z;
}

void emit_json(const Options& o, const Json& j) {
    if (o.json_path.empty())
        return;
    if (o.json_path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(o.json_path);
    if (!out)
        throw InputError("cannot write '" + o.json_path + "'");
    out << j.dump(2) << '\n';
}

// Human summary goes to stdout unless the JSON report does.
std::ostream& human(const Options& o) {
    static std::ostringstream sink;
    if (o.json_path == "-") {
        sink.str("");
        return sink;
    }
    return std::cout;
}

void print_shapes(std::ostream& os, const ShapeAssignment& z) {
    for (int i = 0; i < z.size(); ++i)
        os << "  z" << i << " = " << cx(z[i]) << '\n';
}

int cmd_info(const Options& o) {
    const Triangulation t = load(o);
    const auto edges = compute_edge_classes(t);
    const auto vertices = compute_vertex_classes(t);
    const auto self = self_identification_report(t);
    auto& os = human(o);
    os << "tetrahedra: " << t.tetra_count << '\n';
    os << "edges: " << edges.size() << '\n';
    for (const auto& e : edges)
        os << "  e" << e.index << ": degree " << e.degree() << '\n';
    os << "vertices: " << vertices.size() << '\n';
    for (const auto& v : vertices)
        os << "  v" << v.index << ": link euler characteristic " << v.link_euler_characteristic << ", genus "
           << v.link_genus << '\n';
    os << "almost non-singular: " << (self.almost_non_singular ? "yes" : "no") << '\n';
    os << "non-singular: " << (self.non_singular ? "yes" : "no") << '\n';
    Json j = triangulation_json(t);
    j["command"] = "info";
    j["vertex_link_genus"] = Json::array();
    for (const auto& v : vertices)
        j["vertex_link_genus"].push_back(v.link_genus);
    emit_json(o, j);
    return kExitOk;
}

int cmd_equations(const Options& o) {
    const Triangulation t = load(o);
    const auto e = build_exponent_matrix(t);
    auto& os = human(o);
    const char* suffix[3] = {"", "'", "''"};
    for (int j = 0; j < e.edges(); ++j) {
        os << "e" << j << ":";
        for (int i = 0; i < e.tetrahedra(); ++i)
            for (int k = 0; k < 3; ++k) {
                const int p = e.by_label[k](j, i);
                if (p == 0)
                    continue;
                os << " z" << i << suffix[k];
                if (p != 1)
                    os << '^' << p;
            }
        os << " = xi" << j << "    [" << (e.sign[j] < 0 ? "-" : "");
        for (int i = 0; i < e.tetrahedra(); ++i) {
            if (e.alpha(j, i) != 0)
                os << " z" << i << '^' << e.alpha(j, i);
            if (e.beta(j, i) != 0)
                os << " (1-z" << i << ")^" << e.beta(j, i);
        }
        os << " ]\n";
    }
    Json j = triangulation_json(t);
    j["command"] = "equations";
    emit_json(o, j);
    return kExitOk;
}

// Solve from --init (or the regular shape), then seeded restarts.
SolveResult run_solve(const Options& o, const Triangulation& t, const ConeTarget& xi, const SolverConfig& cfg) {
    if (!o.init.empty())
        return newton_solve(t, xi, shape_list(o.init, t.tetra_count, "--init"), cfg);
    return solve_with_restarts(t, xi, cfg);
}

Json solution_json(const Triangulation& t, const SolveResult& r, const ConeTarget& xi, const std::string& command) {
    Json j = triangulation_json(t);
    j["command"] = command;
    add_solve(j, r, xi);
    if (r.converged) {
        add_shapes(j, r.shapes, t);
        // A pinned tetrahedron may sit at 0 or 1; it has no placement or volume.
        std::vector<int> degenerate;
        for (int i = 0; i < r.shapes.size(); ++i)
            if (near_degenerate(r.shapes[i]))
                degenerate.push_back(i);
        if (degenerate.empty()) {
            add_developing(j, t, r.shapes);
            add_volume(j, solution_volume(r.shapes));
        } else {
            j["degenerate_tetrahedra"] = degenerate;
        }
    }
    return j;
}

int cmd_solve(const Options& o) {
    const Triangulation t = load(o);
    const auto edges = compute_edge_classes(t);
    const ConeTarget xi = target(o, static_cast<int>(edges.size()));
    const SolverConfig cfg = config(o, t.tetra_count);
    const SolveResult r = run_solve(o, t, xi, cfg);
    emit_json(o, solution_json(t, r, xi, "solve"));
    if (!r.converged) {
        std::cerr << "solve failed (" << to_string(r.status) << "): " << r.diagnostic << '\n';
        return kExitFailure;
    }
    auto& os = human(o);
    os << "converged in " << r.iterations << " iterations, residual " << std::setprecision(17) << r.residual_norm
       << '\n';
    print_shapes(os, r.shapes);
    return kExitOk;
}

int cmd_sweep(const Options& o) {
    const Triangulation t = load(o);
    const auto edges = compute_edge_classes(t);
    if (o.family.empty() || o.theta_grid.empty())
        throw InputError("sweep needs --family and --theta-grid");
    std::vector<int> k;
    {
        std::stringstream ss(o.family);
        std::string item;
        while (std::getline(ss, item, ','))
            k.push_back(std::stoi(item));
    }
    if (k.size() != edges.size())
        throw InputError("--family needs one integer exponent per edge");
    const auto grid = parse_angle_list(o.theta_grid);
    const SolverConfig cfg = config(o, t.tetra_count);
    const ShapeAssignment start = o.init.empty() ? ShapeAssignment::uniform(t.tetra_count, regular_shape())
                                                 : shape_list(o.init, t.tetra_count, "--init");
    const auto points = sweep_family(t, exponent_family(k), grid, cfg, start);

    auto& os = human(o);
    Json j = triangulation_json(t);
    j["command"] = "sweep";
    j["points"] = Json::array();
    bool all = true;
    for (const auto& p : points) {
        os << "theta " << std::setprecision(17) << p.theta << ": ";
        Json pj;
        pj["theta"] = p.theta;
        add_solve(pj, p.result, p.xi);
        if (p.result.converged) {
            os << "converged, residual " << p.result.residual_norm << '\n';
            print_shapes(os, p.result.shapes);
            pj["shapes"] = to_json(p.result.shapes.z);
        } else {
            all = false;
            os << "failed (" << to_string(p.result.status) << ")\n";
            std::cerr << "theta " << p.theta << ": " << p.result.diagnostic << '\n';
        }
        j["points"].push_back(pj);
    }
    emit_json(o, j);
    return all ? kExitOk : kExitFailure;
}

int cmd_holonomy(const Options& o) {
    const Triangulation t = load(o);
    if (o.shapes.empty())
        throw InputError("holonomy needs --shapes");
    const ShapeAssignment z = shape_list(o.shapes, t.tetra_count, "--shapes");
    const auto dc = develop_spanning_tree(t, z);
    const auto edges = compute_edge_classes(t);
    auto& os = human(o);
    os << std::setprecision(17);
    for (const auto& g : dc.generators) {
        const auto m = g.holonomy;
        os << "generator " << g.gluing.source.tet << ':' << g.gluing.source.face << " -> " << g.gluing.target.tet
           << ':' << g.gluing.target.face << " (" << g.gluing.perm.to_string() << ")  [" << cx(m.a()) << ", "
           << cx(m.b()) << "; " << cx(m.c()) << ", " << cx(m.d()) << "] up to sign, trace +-"
           << cx(trace(m).canonical()) << '\n';
    }
    for (const auto& e : edges) {
        const auto h = edge_holonomy_matrix(dc, t, edges, e.index);
        os << "edge e" << e.index << ": multiplier " << cx(h.multiplier) << ", h(e) "
           << cx(edge_holonomy(z, build_exponent_matrix(t, edges), e.index)) << ", trace +-"
           << cx(trace(h.matrix).canonical()) << '\n';
    }
    Json j = triangulation_json(t);
    j["command"] = "holonomy";
    add_shapes(j, z, t);
    add_developing(j, t, z);
    emit_json(o, j);
    return kExitOk;
}

int cmd_volume(const Options& o) {
    const Triangulation t = load(o);
    if (o.shapes.empty())
        throw InputError("volume needs --shapes");
    const ShapeAssignment z = shape_list(o.shapes, t.tetra_count, "--shapes");
    const auto v = solution_volume(z);
    const auto e = build_exponent_matrix(t);
    auto& os = human(o);
    os << std::setprecision(17);
    for (int i = 0; i < z.size(); ++i) {
        const auto a = dihedral_angles(z[i]);
        os << "  tetrahedron " << i << ": volume " << v.per_tetrahedron[i] << ", angles (" << a[0] << ", " << a[1]
           << ", " << a[2] << ")\n";
    }
    os << "total volume: " << v.total << '\n';
    const auto cones = cone_angles(z, e);
    for (int j = 0; j < e.edges(); ++j)
        os << "  cone angle at e" << j << ": " << cones[j] << '\n';
    if (!v.flat_tetrahedra.empty()) {
        os << "flat tetrahedra:";
        for (int i : v.flat_tetrahedra)
            os << ' ' << i;
        os << '\n';
    }
    if (!v.negatively_oriented.empty()) {
        os << "negatively oriented:";
        for (int i : v.negatively_oriented)
            os << ' ' << i;
        os << '\n';
    }
    Json j = triangulation_json(t);
    j["command"] = "volume";
    add_shapes(j, z, t);
    add_volume(j, v);
    j["cone_angles"] = cones;
    emit_json(o, j);
    return kExitOk;
}

int cmd_certify(const Options& o) {
    const Triangulation t = load(o);
    const auto edges = compute_edge_classes(t);
    const ConeTarget xi = target(o, static_cast<int>(edges.size()));
    const SolverConfig cfg = config(o, t.tetra_count);
    if (!xi.is_unit(cfg.unit_tol))
        throw InputError("certify needs unit-modulus targets");
    const SolveResult r = run_solve(o, t, xi, cfg);
    Json j = solution_json(t, r, xi, "certify");
    if (!r.converged) {
        emit_json(o, j);
        std::cerr << "no certificate, solve failed (" << to_string(r.status) << "): " << r.diagnostic << '\n';
        return kExitFailure;
    }
    const Certificate c = essential_edge_certificate(t, r, xi, cfg);
    add_certificate(j, c);
    emit_json(o, j);
    auto& os = human(o);
    os << "certificate: " << c.statement << '\n';
    os << "residual " << std::setprecision(17) << c.residual_norm << '\n';
    print_shapes(os, c.shapes);
    os << c.cover.summary();
    return kExitOk;
}

int cmd_regular(const Options& o) {
    const Triangulation t = load(o);
    const RegularSolution r = regular_solution(t);
    auto& os = human(o);
    os << std::setprecision(17);
    os << "shape: " << cx(regular_shape()) << " on every tetrahedron\n";
    for (int j = 0; j < r.xi.size(); ++j)
        os << "  xi" << j << " = " << cx(r.xi[j]) << '\n';
    os << "product of xi: " << cx(r.xi.product()) << '\n';
    os << "volume: " << r.volume << '\n';
    Json j = triangulation_json(t);
    j["command"] = "regular";
    add_shapes(j, r.shapes, t);
    j["xi"] = to_json(r.xi.xi);
    j["residual_norm"] = evaluate_residual(r.shapes, build_exponent_matrix(t), r.xi).norm();
    add_developing(j, t, r.shapes);
    add_volume(j, solution_volume(r.shapes));
    emit_json(o, j);
    return kExitOk;
}

int cmd_sample(const Options& o) {
    const Triangulation t = load(o);
    const SolverConfig cfg = config(o, t.tetra_count);
    const auto starts = random_starts(t.tetra_count, o.count, o.seed, cfg.guard);
    const auto sample = cone_locus_sample(t, starts, cfg);
    auto& os = human(o);
    os << std::setprecision(17);
    os << sample.points.size() << " points, " << sample.dropped << " starts dropped\n";
    Json j = triangulation_json(t);
    j["command"] = "sample";
    j["dropped"] = sample.dropped;
    j["points"] = Json::array();
    for (const auto& p : sample.points) {
        os << " ";
        for (int i = 0; i < p.shapes.size(); ++i)
            os << ' ' << cx(p.shapes[i]);
        os << "  |prod xi - 1| = " << std::abs(p.xi.product() - 1.0) << '\n';
        j["points"].push_back(Json{{"shapes", to_json(p.shapes.z)}, {"xi", to_json(p.xi.xi)}});
    }
    emit_json(o, j);
    return sample.points.empty() ? kExitFailure : kExitOk;
}

int cmd_export(const Options& o) {
    namespace fs = std::filesystem;
    fs::create_directories(o.out_dir);
    for (const auto& e : corpus_entries()) {
        const fs::path path = fs::path(o.out_dir) / (std::string(e.name) + ".tri");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write '" + path.string() + "'");
        out << e.text;
        std::cout << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const Options& o) {
    if (o.report_path.empty())
        throw InputError("verify needs --report");
    Json j;
    try {
        j = Json::parse(read_file(o.report_path));
    } catch (const Json::exception& e) {
        throw InputError(std::string("report is not valid JSON: ") + e.what());
    }
    const auto v = verify_report(j);
    for (const auto& s : v.passed)
        std::cout << "ok    " << s << '\n';
    for (const auto& s : v.failed)
        std::cout << "FAIL  " << s << '\n';
    if (!v.ok()) {
        std::cerr << v.failed.size() << " check(s) failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ideal triangulations: gluing and cone equations, holonomy, volume"};
    app.require_subcommand(1);
    Options o;

    auto add_input = [&](CLI::App* sub) {
        auto* f = sub->add_option("--file", o.file, "triangulation file");
        auto* c = sub->add_option("--corpus", o.corpus_name, "built-in triangulation name");
        f->excludes(c);
        sub->add_option("--json", o.json_path, "write a JSON report to this path ('-' for stdout)");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "convergence tolerance on the residual norm");
        sub->add_option("--max-iter", o.max_iter, "iteration limit");
        sub->add_option("--seed", o.seed, "seed for random starts");
        sub->add_option("--restarts", o.restarts, "random restarts after the first attempt");
        sub->add_option("--pin", o.pin, "hold tetrahedra fixed, e.g. 0:1");
    };

    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
    auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, fn);
        return sub;
    };

    add_input(add("info", "edge and vertex classes", cmd_info));
    add_input(add("equations", "gluing equations per edge", cmd_equations));
    {
        auto* s = add("solve", "solve h(e) = xi", cmd_solve);
        add_input(s);
        add_solver(s);
        s->add_option("--xi", o.xi, "comma list of targets, or 'ones'");
        s->add_option("--init", o.init, "comma list of starting shapes");
    }
    {
        auto* s = add("sweep", "continuation along xi(theta) = e^{i k theta}", cmd_sweep);
        add_input(s);
        add_solver(s);
        s->add_option("--family", o.family, "comma list of integer exponents k, one per edge");
        s->add_option("--theta-grid", o.theta_grid, "comma list of angles (numbers or multiples of pi)");
        s->add_option("--init", o.init, "starting shapes for the first grid point");
    }
    {
        auto* s = add("holonomy", "generator and edge holonomy matrices", cmd_holonomy);
        add_input(s);
        s->add_option("--shapes", o.shapes, "comma list of shapes");
    }
    {
        auto* s = add("volume", "volume, dihedral and cone angles", cmd_volume);
        add_input(s);
        s->add_option("--shapes", o.shapes, "comma list of shapes");
    }
    {
        auto* s = add("certify", "solve and certify that all edges are essential", cmd_certify);
        add_input(s);
        add_solver(s);
        s->add_option("--xi", o.xi, "comma list of unit-modulus targets, or 'ones'");
        s->add_option("--init", o.init, "comma list of starting shapes");
    }
    add_input(add("regular", "all tetrahedra regular", cmd_regular));
    {
        auto* s = add("sample", "sample the locus |h(e)| = 1", cmd_sample);
        add_input(s);
        add_solver(s);
        s->add_option("--count", o.count, "number of random starts");
    }
    add("export-corpus", "write the built-in triangulations as .tri files", cmd_export)
        ->add_option("--dir", o.out_dir, "output directory");
    add("verify", "re-check a JSON report", cmd_verify)->add_option("--report", o.report_path, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        for (const auto& [sub, fn] : commands)
            if (sub->parsed())
                return fn(o);
    } catch (const InvalidTriangulation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << '\n';
        return kExitInput;
    } catch (const UnknownCorpusEntry& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DegenerateShape& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NotConverged& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
