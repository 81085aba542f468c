#pragma once

#include <sstream>
#include <string>

#include "dualrec/graph.hpp"
#include "dualrec/orientation.hpp"

namespace dualrec {

// Deterministic Graphviz output; directed when an orientation is supplied.
inline std::string export_dot(const FacetRidgeGraph& g,
                              const AcyclicOrientation* o = nullptr) {
    std::ostringstream out;
    out << (o ? "digraph G {\n" : "graph G {\n");
    for (int v = 0; v < g.n; ++v) out << "  " << v << ";\n";
    if (o) {
        std::vector<std::pair<int, int>> arcs;
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            arcs.emplace_back(o->tail(static_cast<int>(e)), o->head(static_cast<int>(e)));
        std::sort(arcs.begin(), arcs.end());
        for (auto [t, h] : arcs) out << "  " << t << " -> " << h << ";\n";
    } else {
        for (auto [u, v] : g.edges) out << "  " << u << " -- " << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace dualrec
