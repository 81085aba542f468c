#include <catch2/catch_amalgamated.hpp>

#include "dualrec/dualrec.hpp"
#include "fixtures.hpp"

using namespace dualrec;

TEST_CASE("simplex boundary") {
    CHECK(simplex_boundary(3).facet_count() == 4);
    CHECK(facet_ridge_graph(simplex_boundary(3)).edges.size() == 6); // K4
    CHECK(simplex_boundary(2).facet_count() == 3);
    CHECK(simplex_boundary(5).f_vector().total == 63); // 2^6 - 1
    CHECK_THROWS_MATCHES(simplex_boundary(1), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("BadParameter")));
}

TEST_CASE("cross-polytope boundary") {
    SECTION("octahedron") {
        SimplicialComplex oct = cross_polytope_boundary(3);
        CHECK(oct.facet_count() == 8);
        CHECK(oct.f_vector().total == 27);
    }
    SECTION("square") { CHECK(cross_polytope_boundary(2).facet_count() == 4); }
    SECTION("facet-ridge graph is the d-cube graph") {
        for (int d = 2; d <= 4; ++d) {
            SimplicialComplex c = cross_polytope_boundary(d);
            CHECK(c.facet_count() == (1 << d));
            // facet index b picks far vertices by the bits of b, so facets are
            // adjacent exactly when their indices differ in one bit
            FacetRidgeGraph g = facet_ridge_graph(c);
            std::vector<std::pair<int, int>> expect;
            for (int a = 0; a < (1 << d); ++a)
                for (int b = a + 1; b < (1 << d); ++b)
                    if (std::popcount(static_cast<unsigned>(a ^ b)) == 1)
                        expect.emplace_back(a, b);
            std::sort(expect.begin(), expect.end());
            CHECK(g.edges == expect);
        }
    }
}

TEST_CASE("cycle spheres") {
    CHECK(cycle_sphere(5).facet_count() == 5);
    CHECK(cycle_sphere(3).facet_count() == 3);
    CHECK(cycle_sphere(4).facet_count() == 4);
    CHECK_THROWS(cycle_sphere(2));
}

TEST_CASE("cyclic polytope boundaries via Gale evenness") {
    SECTION("C(5,3)") {
        SimplicialComplex c = cyclic_polytope_boundary(5, 3);
        CHECK(c.facet_count() == 6);
        CHECK(c.facets() == build_complex(3, {{1, 2, 3}, {1, 2, 5}, {1, 3, 4}, {1, 4, 5},
                                              {2, 3, 5}, {3, 4, 5}})
                                .facets());
        CHECK(boundary_and_classify(c).classification == Classification::SphereCandidate);
    }
    SECTION("C(d+1,d) is the simplex boundary") {
        for (int d = 2; d <= 5; ++d)
            CHECK(cyclic_polytope_boundary(d + 1, d).facets() == simplex_boundary(d).facets());
    }
    SECTION("C(7,4)") {
        SimplicialComplex c = cyclic_polytope_boundary(7, 4);
        CHECK(c.facet_count() == 14);
        CHECK(boundary_and_classify(c).classification == Classification::SphereCandidate);
    }
}

TEST_CASE("stacked spheres") {
    SECTION("zero steps is the simplex boundary") {
        CHECK(stacked_sphere(3, 0, 7).facets() == simplex_boundary(3).facets());
    }
    SECTION("one step subdivides one facet") {
        SimplicialComplex c = stacked_sphere(3, 1, 0);
        CHECK(c.facet_count() == 6);
        CHECK(c.f_vector().counts == std::vector<std::int64_t>{1, 5, 9, 6});
    }
    SECTION("deterministic under a fixed seed") {
        CHECK(stacked_sphere(3, 5, 42).facets() == stacked_sphere(3, 5, 42).facets());
        CHECK(stacked_sphere(4, 3, 1).facets() == stacked_sphere(4, 3, 1).facets());
    }
    SECTION("facet count formula") {
        for (int steps = 0; steps <= 5; ++steps)
            CHECK(stacked_sphere(3, steps, 0).facet_count() == 4 + 2 * steps);
        for (int steps = 0; steps <= 3; ++steps)
            CHECK(stacked_sphere(4, steps, 2).facet_count() == 5 + 3 * steps);
    }
    SECTION("always a sphere candidate") {
        for (int seed = 0; seed < 3; ++seed)
            CHECK(boundary_and_classify(stacked_sphere(3, 4, seed)).classification ==
                  Classification::SphereCandidate);
    }
}
