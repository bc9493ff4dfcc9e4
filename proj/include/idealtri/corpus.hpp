#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "idealtri/errors.hpp"
#include "idealtri/io.hpp"

namespace idealtri {

struct CorpusEntry {
    std::string_view name;
    std::string_view summary;
    std::string_view text;  // canonical file contents
};

inline const std::array<CorpusEntry, 5>& corpus_entries() {
    static const std::array<CorpusEntry, 5> entries{{
        {"hopf", "one tetrahedron, edge degrees (1, 1, 4); S^3 with the Hopf link as edges",
         "tri v1\n"
         "tetrahedra 1\n"
         "glue 0 0 0 1 1023\n"
         "glue 0 2 0 3 0132\n"},
        {"trefoil", "one tetrahedron, edge degrees (1, 5); S^3 with the trefoil as one edge",
         "tri v1\n"
         "tetrahedra 1\n"
         "glue 0 0 0 1 1023\n"
         "glue 0 2 0 3 1230\n"},
        {"fig8_complement", "two tetrahedra, edge degrees (6, 6), torus cusp",
         "tri v1\n"
         "tetrahedra 2\n"
         "glue 0 0 1 0 0321\n"
         "glue 0 1 1 2 3201\n"
         "glue 0 2 1 1 2310\n"
         "glue 0 3 1 3 2103\n"},
        {"fig8_in_s3", "three tetrahedra, edge degrees (1, 5, 5, 7); S^3 with the figure-8 knot as the degree-one edge",
         "tri v1\n"
         "tetrahedra 3\n"
         "glue 0 0 1 0 0132\n"
         "glue 0 1 2 0 1023\n"
         "glue 0 2 0 3 0132\n"
         "glue 1 1 2 2 1230\n"
         "glue 1 2 2 1 3012\n"
         "glue 1 3 2 3 1023\n"},
        {"doubled_tetrahedron", "two tetrahedra glued along their boundaries, six edges of degree 2",
         "tri v1\n"
         "tetrahedra 2\n"
         "glue 0 0 1 1 1023\n"
         "glue 0 1 1 0 1023\n"
         "glue 0 2 1 2 1023\n"
         "glue 0 3 1 3 1023\n"},
    }};
    return entries;
}

inline const CorpusEntry& corpus_entry(std::string_view name) {
    for (const auto& e : corpus_entries())
        if (e.name == name)
            return e;
    throw UnknownCorpusEntry(std::string(name));
}

inline Triangulation corpus(std::string_view name) { return parse_triangulation(corpus_entry(name).text); }

inline std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& e : corpus_entries())
        out.emplace_back(e.name);
    return out;
}

}  // namespace idealtri
