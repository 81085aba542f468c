#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "dualrec/errors.hpp"
#include "dualrec/smallset.hpp"

namespace dualrec {

// Undirected simple graph on {0..n-1}. When built from a simplicial sphere
// the vertices are facet indices and the graph is connected and d-regular.
struct FacetRidgeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // u < v, sorted
    std::vector<VertexSet> adj;

    FacetRidgeGraph() = default;

    FacetRidgeGraph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_) {
        require(n >= 0 && n <= VertexSet::capacity, "BadParameter",
                "graph order must be between 0 and 64");
        for (auto& [u, v] : edges_) {
            require(u != v, "BadParameter", "loop edge");
            if (u > v) std::swap(u, v);
            require(u >= 0 && v < n, "BadParameter", "edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        require(std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end(),
                "BadParameter", "duplicate edge");
        edges = std::move(edges_);
        adj.assign(static_cast<std::size_t>(n), VertexSet{});
        for (auto [u, v] : edges) {
            adj[static_cast<std::size_t>(u)].add(v);
            adj[static_cast<std::size_t>(v)].add(u);
        }
    }

    VertexSet vertices() const { return VertexSet::first_n(n); }
    VertexSet neighbors(int v) const { return adj[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return neighbors(v).count(); }

    bool has_edge(int u, int v) const { return neighbors(u).test(v); }

    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
        require(it != edges.end() && *it == std::make_pair(u, v), "BadParameter",
                "no such edge");
        return static_cast<int>(it - edges.begin());
    }

    // Regular degree, or -1 if not regular.
    int regular_degree() const {
        if (n == 0) return -1;
        int d = degree(0);
        for (int v = 1; v < n; ++v)
            if (degree(v) != d) return -1;
        return d;
    }

    bool is_connected() const {
        if (n == 0) return false;
        VertexSet seen = VertexSet::single(0);
        VertexSet frontier = seen;
        while (!frontier.empty()) {
            VertexSet next;
            frontier.for_each([&](int v) { next |= neighbors(v); });
            next = next - seen;
            seen |= next;
            frontier = next;
        }
        return seen == vertices();
    }

    friend bool operator==(const FacetRidgeGraph& a, const FacetRidgeGraph& b) {
        return a.n == b.n && a.edges == b.edges;
    }
};

// Edges of the subgraph induced by `domain`.
inline std::vector<std::pair<int, int>> induced_edges(const FacetRidgeGraph& g, VertexSet domain) {
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : g.edges)
        if (domain.test(u) && domain.test(v)) out.emplace_back(u, v);
    return out;
}

inline bool induced_connected(const FacetRidgeGraph& g, VertexSet domain) {
    if (domain.empty()) return false;
    VertexSet seen = VertexSet::single(domain.min());
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        VertexSet next;
        frontier.for_each([&](int v) { next |= g.neighbors(v) & domain; });
        next = next - seen;
        seen |= next;
        frontier = next;
    }
    return seen == domain;
}

// True when every vertex of `domain` has exactly k neighbors inside it.
inline bool induced_regular(const FacetRidgeGraph& g, VertexSet domain, int k) {
    bool ok = true;
    domain.for_each([&](int v) { ok = ok && (g.neighbors(v) & domain).count() == k; });
    return ok;
}

} // namespace dualrec
