#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dualrec/dualrec.hpp"
#include "fixtures.hpp"

using namespace dualrec;

TEST_CASE("free-vertex predicate on the labelled octahedron") {
    FacetRidgeGraph h = fixtures::labeled_cube_graph();
    // vertex 4 (0-based 3) is free in H[V \ {1,2}] witnessed by the star
    // {3,4,7,8} (0-based {2,3,6,7}) of the 2-frame rooted at 3
    VertexSet w = VertexSet::first_n(8) - VertexSet::of({0, 1});
    CHECK(is_free_vertex(h, w, 3, VertexSet::of({2, 3, 6, 7})));
    // with 4 and 3 still present, 8 is not free off the same witness
    CHECK_FALSE(is_free_vertex(h, w, 7, VertexSet::of({2, 3, 6, 7})));
    // a witness not fully inside the working set never frees anything
    CHECK_FALSE(is_free_vertex(h, w - VertexSet::single(6), 3, VertexSet::of({2, 3, 6, 7})));
}

TEST_CASE("reconstruct the 1-sphere directly") {
    FacetRidgeGraph c5 = fixtures::cycle_graph(5);
    ReconstructedComplex rc = reconstruct(c5);
    CHECK(rc.complex.d() == 2);
    CHECK(rc.complex.facet_count() == 5);
    CHECK(facet_ridge_graph(rc.complex) == c5);
    CHECK(verify_roundtrip(cycle_sphere(7)));
}

TEST_CASE("reconstruct K4 into the tetrahedron boundary") {
    ReconstructedComplex rc = reconstruct(fixtures::complete_graph(4));
    CHECK(rc.complex.d() == 3);
    CHECK(rc.complex.facet_count() == 4);
    CHECK(rc.vertex_stars.size() == 4);
    CHECK(verify_roundtrip(simplex_boundary(3)));
}

TEST_CASE("reconstruct the cube graph into the octahedron") {
    ReconstructedComplex rc = reconstruct(fixtures::labeled_cube_graph());
    CHECK(rc.complex.d() == 3);
    CHECK(rc.complex.facet_count() == 8);
    std::vector<VertexSet> stars = rc.vertex_stars;
    std::sort(stars.begin(), stars.end(), lex_less<VertexSetTag>);
    std::vector<VertexSet> expect = fixtures::octahedron_vertex_stars();
    std::sort(expect.begin(), expect.end(), lex_less<VertexSetTag>);
    CHECK(stars == expect);

    // level tables at completion equal the face-star systems of the output
    CHECK(star_system(rc.complex, 2).sets == expect);
}

TEST_CASE("round trips across the fixture families") {
    for (const SimplicialComplex& c : fixtures::small_sphere_fixtures())
        CHECK(verify_roundtrip(c));
    CHECK(verify_roundtrip(cross_polytope_boundary(4)));
    CHECK(verify_roundtrip(simplex_boundary(5)));
    CHECK(verify_roundtrip(cyclic_polytope_boundary(7, 4)));
    CHECK(verify_roundtrip(stacked_sphere(4, 2, 0)));
}

TEST_CASE("reconstructed star systems equal the ground truth on every level") {
    // facet indices are shared, so the face-star systems must agree level by
    // level, not just at the vertices
    for (const SimplicialComplex& c :
         {cross_polytope_boundary(4), cyclic_polytope_boundary(7, 4), simplex_boundary(5)}) {
        ReconstructedComplex rc = reconstruct(facet_ridge_graph(c));
        for (int k = 2; k <= c.d() - 1; ++k)
            CHECK(star_system(rc.complex, k).sets == star_system(c, k).sets);
    }
    // in d=4 the propagated level-3 members are the vertex stars: for the
    // 4-dimensional cross-polytope each is an induced 3-cube
    ReconstructedComplex rc4 = reconstruct(facet_ridge_graph(cross_polytope_boundary(4)));
    FacetRidgeGraph q4 = facet_ridge_graph(rc4.complex);
    for (VertexSet s : star_system(rc4.complex, 3).sets) {
        CHECK(s.count() == 8);
        CHECK(induced_regular(q4, s, 3));
        CHECK(induced_connected(q4, s));
    }
}

namespace {

bool rebuild_from_shelling_matches(const SimplicialComplex& c) {
    auto s = find_shelling(c);
    if (!s) return false;
    AcyclicOrientation o = shelling_to_orientation(c, *s);
    ReconstructedComplex rc = reconstruct_with_orientation(facet_ridge_graph(c), o);
    std::vector<VertexSet> truth;
    c.vertex_support().for_each([&](int v) { truth.push_back(star(c, Face::single(v))); });
    std::sort(truth.begin(), truth.end(), lex_less<VertexSetTag>);
    std::vector<VertexSet> got = rc.vertex_stars;
    std::sort(got.begin(), got.end(), lex_less<VertexSetTag>);
    return truth == got;
}

} // namespace

TEST_CASE("the engine scales past the orientation search when one is supplied") {
    // the graph-only bottleneck is minimizing f; the reconstruction stages
    // themselves are polynomial, so a shelling-derived orientation lets much
    // larger instances round-trip
    CHECK(verify_roundtrip(stacked_sphere(5, 2, 0))); // graph-only, d=5
    CHECK(rebuild_from_shelling_matches(cross_polytope_boundary(5))); // 32 facets
    CHECK(rebuild_from_shelling_matches(stacked_sphere(3, 24, 7)));   // 52 facets
    CHECK(rebuild_from_shelling_matches(cyclic_polytope_boundary(9, 4))); // 27 facets
}

TEST_CASE("reconstruction is orientation independent") {
    for (const SimplicialComplex& c : {simplex_boundary(3), fixtures::labeled_octahedron()}) {
        FacetRidgeGraph g = facet_ridge_graph(c);
        GoodOrientations all = find_good_orientations(g, OrientationMode::All);
        REQUIRE(!all.orientations.empty());
        ReconstructedComplex first = reconstruct_with_orientation(g, all.orientations.front());
        for (const AcyclicOrientation& o : all.orientations)
            CHECK(reconstruct_with_orientation(g, o) == first);
    }
}

TEST_CASE("peeling is order independent") {
    for (const SimplicialComplex& c :
         {fixtures::labeled_octahedron(), cyclic_polytope_boundary(6, 3),
          cross_polytope_boundary(4), stacked_sphere(3, 3, 4)}) {
        FacetRidgeGraph g = facet_ridge_graph(c);
        GoodOrientations one = find_good_orientations(g, OrientationMode::One);
        ReconstructedComplex base = reconstruct_with_orientation(g, one.orientations.front());
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Lcg rng(seed);
            CHECK(reconstruct_with_orientation(g, one.orientations.front(), &rng) == base);
        }
    }
}

TEST_CASE("inputs outside the promised class are flagged") {
    SECTION("K33 is triangle-free and fails during reconstruction") {
        FacetRidgeGraph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                {2, 3}, {2, 4}, {2, 5}});
        CHECK_THROWS_MATCHES(reconstruct(k33), Error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("InconsistentInput")));
    }
    SECTION("the Petersen graph is 3-regular but not a sphere graph") {
        std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                                  {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                                  {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
        FacetRidgeGraph petersen(10, std::move(edges));
        CHECK_THROWS_MATCHES(reconstruct(petersen), Error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("InconsistentInput")));
    }
    SECTION("irregular graphs are rejected up front") {
        FacetRidgeGraph path(3, {{0, 1}, {1, 2}});
        CHECK_THROWS_MATCHES(reconstruct(path), Error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("NotRegular")));
    }
    SECTION("disconnected graphs are rejected up front") {
        FacetRidgeGraph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
        CHECK_THROWS_MATCHES(reconstruct(two), Error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("Disconnected")));
    }
    SECTION("empty graphs are rejected") {
        CHECK_THROWS_MATCHES(reconstruct(FacetRidgeGraph(0, {})), Error,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::StartsWith("EmptyGraph")));
    }
}

TEST_CASE("perturbed sphere graphs never crash the pipeline") {
    // random double-edge swaps keep the graph 3-regular; the result is
    // usually not a sphere graph, and reconstruct must either succeed (the
    // output is validated against the input) or raise a known domain error
    FacetRidgeGraph base = facet_ridge_graph(stacked_sphere(3, 4, 2));
    Lcg rng(123);
    int successes = 0, rejections = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::pair<int, int>> edges = base.edges;
        for (int swap = 0; swap < 1 + trial % 4; ++swap) {
            auto a = edges[rng.below(static_cast<std::uint32_t>(edges.size()))];
            auto b = edges[rng.below(static_cast<std::uint32_t>(edges.size()))];
            std::pair<int, int> c{std::min(a.first, b.second), std::max(a.first, b.second)};
            std::pair<int, int> d{std::min(b.first, a.second), std::max(b.first, a.second)};
            if (a == b || c.first == c.second || d.first == d.second) continue;
            bool dup = false;
            for (auto e : edges)
                if (e == c || e == d) dup = true;
            if (dup) continue;
            edges.erase(std::find(edges.begin(), edges.end(), a));
            edges.erase(std::find(edges.begin(), edges.end(), b));
            edges.push_back(c);
            edges.push_back(d);
        }
        FacetRidgeGraph g(base.n, edges);
        try {
            ReconstructedComplex rc = reconstruct(g);
            CHECK(facet_ridge_graph(rc.complex) == g);
            ++successes;
        } catch (const Error& e) {
            bool known = e.code() == "InconsistentInput" || e.code() == "NotRegular" ||
                         e.code() == "Disconnected" || e.code() == "SearchBudgetExceeded";
            CHECK(known);
            ++rejections;
        }
    }
    CHECK(successes + rejections == 60);
    CHECK(successes > 0);  // the unperturbed swaps keep some graphs intact
    CHECK(rejections > 0); // and most perturbations break the promise
}

TEST_CASE("reconstruction report carries the peel provenance") {
    FacetRidgeGraph g = fixtures::labeled_cube_graph();
    ReconstructReport rep;
    ReconstructedComplex rc = reconstruct(g, SearchBudget(100'000'000), &rep);
    CHECK(rep.d == 3);
    CHECK(rep.minimum_f == 27);
    CHECK(rep.peel_order.size() == 8);
    CHECK(rep.stages.size() == 7); // stages for positions 2..8
    CHECK(facet_ridge_graph(rc.complex) == g);
}
