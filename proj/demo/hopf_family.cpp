// Walks the one-parameter family of cone structures on the one-tetrahedron
// Hopf triangulation and prints shapes, traces and volumes along the way.

#include <iomanip>
#include <iostream>
#include <numbers>

#include "idealtri/corpus.hpp"
#include "idealtri/developing.hpp"
#include "idealtri/geometry.hpp"
#include "idealtri/solver.hpp"

int main() {
    using namespace idealtri;
    const Triangulation t = corpus("hopf");
    const auto edges = compute_edge_classes(t);

    std::vector<double> grid;
    for (int k = 1; k <= 12; ++k)
        grid.push_back(k * std::numbers::pi / 12.0);

    std::cout << std::setprecision(10);
    for (const auto& p : sweep_family(t, exponent_family({1, 1, -2}), grid)) {
        if (!p.result.converged) {
            std::cout << "theta " << p.theta << ": " << p.result.diagnostic << '\n';
            continue;
        }
        const auto z = p.result.shapes;
        const auto dc = develop_spanning_tree(t, z);
        std::cout << "theta " << p.theta << "  z " << z[0] << "  generator traces";
        for (const auto& g : dc.generators)
            std::cout << " +-" << trace(g.holonomy).canonical();
        std::cout << "  e2 trace +-" << trace(edge_holonomy_matrix(dc, t, edges, 2).matrix).canonical()
                  << "  volume " << solution_volume(z).total << '\n';
    }
}
