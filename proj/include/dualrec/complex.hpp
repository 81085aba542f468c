#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_set>
#include <vector>

#include "dualrec/errors.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/smallset.hpp"

namespace dualrec {

// Face counts per dimension, from -1 (the empty face) to d-1.
struct FVector {
    std::vector<std::int64_t> counts; // counts[i] = number of (i-1)-dimensional faces
    std::int64_t total = 0;

    std::int64_t faces_of_dim(int dim) const {
        std::size_t i = static_cast<std::size_t>(dim + 1);
        return i < counts.size() ? counts[i] : 0;
    }
};

/**
 * Pure (d-1)-dimensional abstract simplicial complex stored as its facet
 * list. Faces are bitmask sets of vertex ids (< 64). Immutable after
 * construction; the full face set is materialized lazily and cached, so
 * membership queries and stars/links are cheap.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    int d() const { return d_; }
    int facet_count() const { return static_cast<int>(facets_.size()); }
    const std::vector<Face>& facets() const { return facets_; }
    Face facet(int i) const { return facets_[static_cast<std::size_t>(i)]; }

    Face vertex_support() const { return support_; }
    int vertex_count() const { return support_.count(); }

    bool has_face(Face f) const {
        cache();
        return cache_->all.count(f.bits) != 0;
    }

    const std::vector<std::vector<Face>>& faces_by_dim() const {
        cache();
        return cache_->by_dim;
    }

    FVector f_vector() const {
        cache();
        FVector fv;
        fv.counts.reserve(cache_->by_dim.size());
        for (const auto& layer : cache_->by_dim) {
            fv.counts.push_back(static_cast<std::int64_t>(layer.size()));
            fv.total += static_cast<std::int64_t>(layer.size());
        }
        return fv;
    }

    friend SimplicialComplex build_complex(int d, const std::vector<Face>& facets);
    friend SimplicialComplex build_complex_keep_order(int d, const std::vector<Face>& facets);

private:
    struct FaceCache {
        std::once_flag flag;
        std::unordered_set<std::uint64_t> all;
        std::vector<std::vector<Face>> by_dim; // index i holds faces of dim i-1
    };

    // copies share the cache box, so the enumeration runs once per complex
    void cache() const {
        FaceCache& c = *cache_;
        std::call_once(c.flag, [this, &c] {
            c.by_dim.resize(static_cast<std::size_t>(d_) + 1);
            for (Face t : facets_) {
                for_each_subset(t, [&](Face s) {
                    if (c.all.insert(s.bits).second)
                        c.by_dim[static_cast<std::size_t>(s.count())].push_back(s);
                });
            }
            for (auto& layer : c.by_dim) std::sort(layer.begin(), layer.end(), lex_less<FaceTag>);
        });
    }

    int d_ = 0;
    std::vector<Face> facets_;
    Face support_;
    std::shared_ptr<FaceCache> cache_ = std::make_shared<FaceCache>();
};

// Keeps the facet order as given (reconstruction needs facet index i to stay
// aligned with graph vertex i); validates sizes and distinctness.
inline SimplicialComplex build_complex_keep_order(int d, const std::vector<Face>& facets) {
    require(d >= 0, "BadParameter", "facet size must be non-negative");
    SimplicialComplex c;
    c.d_ = d;
    c.facets_ = facets;
    for (Face f : c.facets_) {
        require(f.count() == d, "NonUniformFacet", "facet has wrong number of vertices");
        c.support_ |= f;
    }
    std::vector<Face> probe = facets;
    std::sort(probe.begin(), probe.end());
    require(std::adjacent_find(probe.begin(), probe.end()) == probe.end(), "DuplicateFacet",
            "repeated facet");
    return c;
}

// Normalizes and validates a facet list: every facet has exactly d vertices,
// all facets distinct, facets sorted lexicographically. Vertex ids are
// preserved as given.
inline SimplicialComplex build_complex(int d, const std::vector<Face>& facets) {
    SimplicialComplex c = build_complex_keep_order(d, facets);
    std::sort(c.facets_.begin(), c.facets_.end(), lex_less<FaceTag>);
    return c;
}

inline SimplicialComplex build_complex(int d, const std::vector<std::vector<int>>& facets) {
    std::vector<Face> fs;
    fs.reserve(facets.size());
    for (const auto& lst : facets) {
        Face f;
        for (int v : lst) {
            require(v >= 0 && v < Face::capacity, "BadParameter",
                    "vertex id out of range (ids are capped at 64)");
            require(!f.test(v), "BadParameter", "repeated vertex inside a facet");
            f.add(v);
        }
        fs.push_back(f);
    }
    return build_complex(d, fs);
}

// Indices of the facets containing sigma.
inline VertexSet star(const SimplicialComplex& c, Face sigma) {
    require(c.has_face(sigma) || sigma.empty(), "FaceNotInComplex", "star of a non-face");
    VertexSet s;
    for (int i = 0; i < c.facet_count(); ++i)
        if (c.facet(i).contains(sigma)) s.add(i);
    return s;
}

// The link of sigma: facets are T \ sigma over the facets T of its star.
inline SimplicialComplex link(const SimplicialComplex& c, Face sigma) {
    VertexSet st = star(c, sigma);
    std::vector<Face> fs;
    st.for_each([&](int i) { fs.push_back(c.facet(i) - sigma); });
    return build_complex(c.d() - sigma.count(), fs);
}

// Vertices are facet indices; (i, j) is an edge iff the facets share a ridge.
inline FacetRidgeGraph facet_ridge_graph(const SimplicialComplex& c) {
    require(c.facet_count() <= VertexSet::capacity, "BadParameter",
            "facet-ridge graph supports at most 64 facets");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < c.facet_count(); ++i)
        for (int j = i + 1; j < c.facet_count(); ++j)
            if ((c.facet(i) & c.facet(j)).count() == c.d() - 1) edges.emplace_back(i, j);
    return FacetRidgeGraph(c.facet_count(), std::move(edges));
}

enum class Classification { SphereCandidate, BallCandidate, Neither };

inline const char* to_string(Classification cl) {
    switch (cl) {
        case Classification::SphereCandidate: return "sphere-candidate";
        case Classification::BallCandidate: return "ball-candidate";
        default: return "neither";
    }
}

struct BoundaryReport {
    bool is_pseudomanifold = false;
    std::vector<Face> boundary_ridges; // ridges contained in exactly one facet
    Classification classification = Classification::Neither;
};

// Purely combinatorial: pseudomanifold iff every ridge lies in at most two
// facets and the facet-ridge graph is connected. The labels make no claim
// about homeomorphism type.
inline BoundaryReport boundary_and_classify(const SimplicialComplex& c) {
    BoundaryReport r;
    std::vector<std::pair<Face, int>> ridge_count;
    {
        std::unordered_set<std::uint64_t> seen;
        for (Face t : c.facets()) {
            t.for_each([&](int v) {
                Face ridge = t;
                ridge.remove(v);
                if (seen.insert(ridge.bits).second) ridge_count.emplace_back(ridge, 0);
            });
        }
    }
    bool at_most_two = true;
    for (auto& [ridge, cnt] : ridge_count) {
        for (Face t : c.facets())
            if (t.contains(ridge)) ++cnt;
        if (cnt > 2) at_most_two = false;
        if (cnt == 1) r.boundary_ridges.push_back(ridge);
    }
    std::sort(r.boundary_ridges.begin(), r.boundary_ridges.end(), lex_less<FaceTag>);
    r.is_pseudomanifold = at_most_two && c.facet_count() > 0 &&
                          facet_ridge_graph(c).is_connected();
    if (!r.is_pseudomanifold)
        r.classification = Classification::Neither;
    else if (r.boundary_ridges.empty())
        r.classification = Classification::SphereCandidate;
    else
        r.classification = Classification::BallCandidate;
    return r;
}

} // namespace dualrec
