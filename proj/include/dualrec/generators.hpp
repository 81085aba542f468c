#pragma once

#include <vector>

#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/rng.hpp"

namespace dualrec {

// Deterministic constructors for shellable sphere families. Vertex ids are
// 1-based to match the usual labelling of these complexes.

// All d-subsets of {1..d+1}: the boundary of the d-simplex.
inline SimplicialComplex simplex_boundary(int d) {
    require(d >= 2, "BadParameter", "simplex_boundary needs d >= 2");
    require(d + 1 < Face::capacity, "BadParameter", "vertex ids are capped at 64");
    Face all;
    for (int v = 1; v <= d + 1; ++v) all.add(v);
    std::vector<Face> facets;
    all.for_each([&](int v) {
        Face f = all;
        f.remove(v);
        facets.push_back(f);
    });
    return build_complex(d, facets);
}

// Facets are the transversals of d antipodal vertex pairs {i+1, d+i+1}:
// the boundary of the d-dimensional cross-polytope, 2^d facets. Facet number
// b picks the "far" vertex of pair i exactly when bit i of b is set, so the
// facet-ridge graph is the d-cube graph on facet indices.
inline SimplicialComplex cross_polytope_boundary(int d) {
    require(d >= 2, "BadParameter", "cross_polytope_boundary needs d >= 2");
    require(2 * d < Face::capacity, "BadParameter", "vertex ids are capped at 64");
    require(d <= 6, "BadParameter", "cross_polytope_boundary supports d <= 6 (64 facets)");
    std::vector<Face> facets;
    for (int b = 0; b < (1 << d); ++b) {
        Face f;
        for (int i = 0; i < d; ++i) f.add((b >> i & 1) ? d + i + 1 : i + 1);
        facets.push_back(f);
    }
    return build_complex(d, facets);
}

// The n-cycle as a simplicial 1-sphere: facets {i, i+1 mod n} on {1..n}.
inline SimplicialComplex cycle_sphere(int n) {
    require(n >= 3, "BadParameter", "cycle_sphere needs n >= 3");
    require(n < Face::capacity, "BadParameter", "vertex ids are capped at 64");
    std::vector<Face> facets;
    for (int i = 1; i <= n; ++i)
        facets.push_back(Face::of({i, i % n + 1}));
    return build_complex(2, facets);
}

// Gale evenness by direct subset scan: S is a facet of the cyclic polytope
// C(n, d) iff every two elements not in S have an even number of elements of
// S strictly between them.
inline SimplicialComplex cyclic_polytope_boundary(int n, int d) {
    require(n > d && d >= 2, "BadParameter", "cyclic_polytope_boundary needs n > d >= 2");
    require(n <= 20, "BadParameter", "cyclic_polytope_boundary supports n <= 20");
    Face ground;
    for (int v = 1; v <= n; ++v) ground.add(v);
    std::vector<Face> facets;
    for_each_k_subset(ground, d, [&](Face s) {
        std::vector<int> outside = (ground - s).to_vector();
        for (std::size_t a = 0; a + 1 < outside.size(); ++a)
            for (std::size_t b = a + 1; b < outside.size(); ++b) {
                int between = 0;
                s.for_each([&](int v) {
                    if (v > outside[a] && v < outside[b]) ++between;
                });
                if (between % 2 != 0) return;
            }
        facets.push_back(s);
    });
    return build_complex(d, facets);
}

// Starts from the simplex boundary and repeatedly replaces a facet, picked by
// the seeded generator, with the d facets coning its boundary over a fresh
// vertex. The picked facet is erased in place and the new facets appended in
// ascending order of the replaced vertex.
inline SimplicialComplex stacked_sphere(int d, int steps, std::uint64_t seed) {
    require(d >= 2, "BadParameter", "stacked_sphere needs d >= 2");
    require(steps >= 0, "BadParameter", "steps must be non-negative");
    require(d + 1 + steps < Face::capacity, "BadParameter", "vertex ids are capped at 64");
    std::vector<Face> facets = simplex_boundary(d).facets();
    Lcg rng(seed);
    int fresh = d + 1;
    for (int s = 0; s < steps; ++s) {
        auto pick = rng.below(static_cast<std::uint32_t>(facets.size()));
        Face t = facets[pick];
        facets.erase(facets.begin() + pick);
        ++fresh;
        t.for_each([&](int v) {
            Face f = t;
            f.remove(v);
            f.add(fresh);
            facets.push_back(f);
        });
    }
    return build_complex(d, facets);
}

} // namespace dualrec
