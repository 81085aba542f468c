#pragma once

#include <vector>

#include "dualrec/dualrec.hpp"

namespace fixtures {

using namespace dualrec;

// Octahedron boundary with a fixed facet labelling: the six vertex stars are
// {{0,1,2,3},{0,1,4,5},{0,3,4,7},{1,2,5,6},{2,3,6,7},{4,5,6,7}}, vertex j
// being the j-th of those stars and facet i consisting of the vertices whose
// stars contain i. Facet order is the labelling, so the complex is built
// order-preserving. Several expected values below are frozen against this
// labelling.
inline SimplicialComplex labeled_octahedron() {
    std::vector<Face> facets = {
        Face::of({0, 1, 2}), Face::of({0, 1, 3}), Face::of({0, 3, 4}),
        Face::of({0, 2, 4}), Face::of({1, 2, 5}), Face::of({1, 3, 5}),
        Face::of({3, 4, 5}), Face::of({2, 4, 5}),
    };
    return build_complex_keep_order(3, facets);
}

inline std::vector<int> octahedron_shelling_order() { return {0, 1, 4, 5, 2, 6, 7, 3}; }

inline std::vector<VertexSet> octahedron_vertex_stars() {
    return {VertexSet::of({0, 1, 2, 3}), VertexSet::of({0, 1, 4, 5}),
            VertexSet::of({0, 3, 4, 7}), VertexSet::of({1, 2, 5, 6}),
            VertexSet::of({2, 3, 6, 7}), VertexSet::of({4, 5, 6, 7})};
}

// The good acyclic orientation of the octahedron graph induced by the
// shelling (edges point to the earlier facet).
inline AcyclicOrientation octahedron_orientation() {
    SimplicialComplex c = labeled_octahedron();
    ShellingOrder s = restriction_map(c, octahedron_shelling_order());
    return shelling_to_orientation(c, s);
}

// Cube graph with the octahedron fixture's facet labels.
inline FacetRidgeGraph labeled_cube_graph() {
    return facet_ridge_graph(labeled_octahedron());
}

inline FacetRidgeGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return FacetRidgeGraph(n, std::move(edges));
}

inline FacetRidgeGraph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return FacetRidgeGraph(n, std::move(edges));
}

// Small shellable sphere fixtures used across the property suites.
inline std::vector<SimplicialComplex> small_sphere_fixtures() {
    return {
        simplex_boundary(3),
        simplex_boundary(4),
        cycle_sphere(5),
        cycle_sphere(6),
        labeled_octahedron(),
        cyclic_polytope_boundary(5, 3),
        cyclic_polytope_boundary(6, 3),
        stacked_sphere(3, 2, 1),
    };
}

} // namespace fixtures
