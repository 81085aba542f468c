#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <thread>
#include <vector>

#include "dualrec/budget.hpp"
#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/rng.hpp"
#include "dualrec/smallset.hpp"

namespace dualrec {

// K_{1,k} subgraph: a root together with k of its neighbors.
struct KFrame {
    int root = 0;
    VertexSet leaves;

    VertexSet vertex_set() const { return leaves | VertexSet::single(root); }
    int k() const { return leaves.count(); }

    friend bool operator==(const KFrame& a, const KFrame& b) {
        return a.root == b.root && a.leaves == b.leaves;
    }
    friend bool operator<(const KFrame& a, const KFrame& b) {
        return a.root != b.root ? a.root < b.root : a.leaves.bits < b.leaves.bits;
    }
};

struct KFrameHash {
    std::size_t operator()(const KFrame& f) const noexcept {
        return std::hash<std::uint64_t>{}(
            (f.leaves.bits * 0x9e3779b97f4a7c15ull) ^ static_cast<std::uint64_t>(f.root));
    }
};

// Orientation of a facet-ridge graph. dir[e] is 1 when edge (u, v) with
// u < v points u -> v. Acyclicity is a property checked by the consumers.
struct AcyclicOrientation {
    FacetRidgeGraph g;
    std::vector<std::uint8_t> dir;
    std::vector<VertexSet> in_nbrs;
    std::vector<VertexSet> out_nbrs;

    int head(int e) const { return dir[static_cast<std::size_t>(e)] ? g.edges[static_cast<std::size_t>(e)].second : g.edges[static_cast<std::size_t>(e)].first; }
    int tail(int e) const { return dir[static_cast<std::size_t>(e)] ? g.edges[static_cast<std::size_t>(e)].first : g.edges[static_cast<std::size_t>(e)].second; }

    int indegree(int v) const { return in_nbrs[static_cast<std::size_t>(v)].count(); }
    VertexSet in_neighbors(int v) const { return in_nbrs[static_cast<std::size_t>(v)]; }
    VertexSet out_neighbors(int v) const { return out_nbrs[static_cast<std::size_t>(v)]; }

    // Sinks of the subgraph induced by `domain`.
    VertexSet sinks_in(VertexSet domain) const {
        VertexSet s;
        domain.for_each([&](int v) {
            if (!out_neighbors(v).intersects(domain)) s.add(v);
        });
        return s;
    }
};

inline AcyclicOrientation make_orientation(const FacetRidgeGraph& g,
                                           std::vector<std::uint8_t> dir) {
    require(dir.size() == g.edges.size(), "BadParameter",
            "direction vector does not match edge count");
    AcyclicOrientation o;
    o.g = g;
    o.dir = std::move(dir);
    o.in_nbrs.assign(static_cast<std::size_t>(g.n), VertexSet{});
    o.out_nbrs.assign(static_cast<std::size_t>(g.n), VertexSet{});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        int h = o.dir[e] ? v : u;
        int t = o.dir[e] ? u : v;
        o.in_nbrs[static_cast<std::size_t>(h)].add(t);
        o.out_nbrs[static_cast<std::size_t>(t)].add(h);
    }
    return o;
}

inline bool is_acyclic(const AcyclicOrientation& o) {
    VertexSet remaining = o.g.vertices();
    while (!remaining.empty()) {
        VertexSet s = o.sinks_in(remaining);
        if (s.empty()) return false;
        remaining = remaining - s;
    }
    return true;
}

// f-score of an acyclic orientation: sum over vertices of 2^indegree,
// reported together with the indegree profile (h_0, ..., h_max).
struct FScore {
    std::uint64_t value = 0;
    std::vector<std::int64_t> profile;
};

inline FScore f_score(const AcyclicOrientation& o) {
    require(is_acyclic(o), "CyclicOrientation", "f-score is defined for acyclic orientations");
    FScore s;
    int maxdeg = 0;
    for (int v = 0; v < o.g.n; ++v) maxdeg = std::max(maxdeg, o.g.degree(v));
    s.profile.assign(static_cast<std::size_t>(maxdeg) + 1, 0);
    for (int v = 0; v < o.g.n; ++v) {
        int k = o.indegree(v);
        ++s.profile[static_cast<std::size_t>(k)];
        s.value += std::uint64_t{1} << k;
    }
    return s;
}

enum class OrientationMode { One, All };

struct GoodOrientations {
    std::uint64_t minimum = 0;                  // min f over acyclic orientations
    std::vector<AcyclicOrientation> orientations; // one minimizer, or all of them
    bool complete = false;                      // true iff `orientations` holds every minimizer
};

namespace detail {

// Exact minimum of f over acyclic orientations by dynamic programming over
// suffix vertex sets: placing v immediately before suffix S fixes its
// indegree at |N(v) & S|. Returns the minimum and one witness orientation
// (from a backtraced optimal order, edges pointing to the earlier vertex).
// Values fit 32 bits for every feasible n (f <= n 2^(n-1) < 2^31 at n <= 24).
inline GoodOrientations min_f_by_suffix_dp(const FacetRidgeGraph& g) {
    const int n = g.n;
    const std::size_t size = std::size_t{1} << n;
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> dp(size, kUnset);
    dp[0] = 0;
    for (std::size_t mask = 1; mask < size; ++mask) {
        std::uint32_t best = kUnset;
        for (std::uint64_t m = mask; m;) {
            int v = std::countr_zero(m);
            m &= m - 1;
            std::size_t rest = mask & ~(std::size_t{1} << v);
            std::uint32_t cand =
                dp[rest] + (std::uint32_t{1} << std::popcount(g.adj[static_cast<std::size_t>(v)].bits & rest));
            best = std::min(best, cand);
        }
        dp[mask] = best;
    }

    std::vector<int> pos(static_cast<std::size_t>(n), 0);
    std::size_t mask = size - 1;
    for (int p = 0; p < n; ++p) {
        for (std::uint64_t m = mask;; ) {
            int v = std::countr_zero(m);
            m &= m - 1;
            std::size_t rest = mask & ~(std::size_t{1} << v);
            std::uint32_t cand =
                dp[rest] + (std::uint32_t{1} << std::popcount(g.adj[static_cast<std::size_t>(v)].bits & rest));
            if (cand == dp[mask]) {
                pos[static_cast<std::size_t>(v)] = p;
                mask = rest;
                break;
            }
        }
    }

    std::vector<std::uint8_t> dir(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        dir[e] = pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)] ? 1 : 0;
    }
    GoodOrientations out;
    out.minimum = dp[size - 1];
    out.orientations.push_back(make_orientation(g, dir));
    out.complete = false;
    return out;
}

// f of the orientation induced by a vertex order (edges point to the earlier
// vertex); cheap incumbent seeds for the branch and bound.
inline std::uint64_t order_induced_f(const FacetRidgeGraph& g, const std::vector<int>& order) {
    VertexSet later = g.vertices();
    std::uint64_t f = 0;
    for (int v : order) {
        later.remove(v);
        f += std::uint64_t{1} << (g.neighbors(v) & later).count();
    }
    return f;
}

// Is there a directed path from `from` to `to` under the partial orientation
// given by per-vertex out-neighbor masks?
inline bool reaches(const std::vector<VertexSet>& out, int from, int to) {
    VertexSet seen = VertexSet::single(from);
    VertexSet frontier = seen;
    while (!frontier.empty()) {
        if (seen.test(to)) return true;
        VertexSet next;
        frontier.for_each([&](int v) { next |= out[static_cast<std::size_t>(v)]; });
        next = next - seen;
        seen |= next;
        frontier = next;
    }
    return seen.test(to);
}

struct BnbShared {
    std::atomic<std::uint64_t> incumbent{~std::uint64_t{0}};
    std::atomic<std::uint64_t> nodes{0};
    std::uint64_t node_cap = 0;
};

struct BnbResult {
    std::vector<std::pair<std::uint64_t, std::vector<std::uint8_t>>> hits;
};

// Branch and bound over edge directions in a fixed edge order with
// incremental cycle detection. The pruning bound is the running sum of
// 2^indegree, valid because indegrees only grow. Subtrees may run
// concurrently; stale incumbent reads only cost pruning, never correctness.
inline void bnb_walk(const FacetRidgeGraph& g,
                     const std::vector<std::pair<int, int>>& order, std::size_t depth,
                     std::vector<VertexSet>& out, std::vector<int>& indeg,
                     std::uint64_t bound, BnbShared& shared, BnbResult& res) {
    if (shared.nodes.fetch_add(1, std::memory_order_relaxed) >= shared.node_cap)
        fail("SearchBudgetExceeded", "acyclic orientation search");
    if (bound > shared.incumbent.load(std::memory_order_relaxed)) return;
    if (depth == order.size()) {
        // acyclic by construction; bound is the exact f-score here
        std::uint64_t prev = shared.incumbent.load(std::memory_order_relaxed);
        while (bound < prev &&
               !shared.incumbent.compare_exchange_weak(prev, bound, std::memory_order_relaxed)) {
        }
        std::vector<std::uint8_t> dir(g.edges.size());
        for (std::size_t e = 0; e < order.size(); ++e) {
            auto [u, v] = order[e]; // u < v
            int idx = g.edge_index(u, v);
            dir[static_cast<std::size_t>(idx)] = out[static_cast<std::size_t>(u)].test(v) ? 1 : 0;
        }
        res.hits.emplace_back(bound, std::move(dir));
        return;
    }
    auto [u, v] = order[depth];
    for (int way = 0; way < 2; ++way) {
        int a = way == 0 ? u : v; // tail
        int b = way == 0 ? v : u; // head
        if (reaches(out, b, a)) continue; // a -> b would close a directed cycle
        out[static_cast<std::size_t>(a)].add(b);
        ++indeg[static_cast<std::size_t>(b)];
        std::uint64_t nb = bound + (std::uint64_t{1} << (indeg[static_cast<std::size_t>(b)] - 1));
        bnb_walk(g, order, depth + 1, out, indeg, nb, shared, res);
        out[static_cast<std::size_t>(a)].remove(b);
        --indeg[static_cast<std::size_t>(b)];
    }
}

inline GoodOrientations enumerate_minimizers(const FacetRidgeGraph& g, SearchBudget& budget,
                                             int jobs) {
    // vertex-grouped static edge order: finishes low vertices first so the
    // partial indegree sum tightens early
    std::vector<std::pair<int, int>> order = g.edges;
    std::sort(order.begin(), order.end(), [](auto a, auto b) {
        return std::make_pair(std::max(a.first, a.second), std::min(a.first, a.second)) <
               std::make_pair(std::max(b.first, b.second), std::min(b.first, b.second));
    });

    BnbShared shared;
    shared.node_cap = budget.cap() - budget.used();
    {
        // seed the incumbent with a few order-induced orientations; pruning
        // stays strictly-greater, so no minimizer is lost
        std::vector<int> vorder(static_cast<std::size_t>(g.n));
        for (int v = 0; v < g.n; ++v) vorder[static_cast<std::size_t>(v)] = v;
        std::uint64_t seed_f = order_induced_f(g, vorder);
        Lcg rng(1);
        for (int tries = 0; tries < 32; ++tries) {
            for (std::size_t i = vorder.size(); i > 1; --i)
                std::swap(vorder[i - 1], vorder[rng.below(static_cast<std::uint32_t>(i))]);
            seed_f = std::min(seed_f, order_induced_f(g, vorder));
        }
        shared.incumbent.store(seed_f);
    }
    std::vector<BnbResult> results;

    jobs = std::max(1, jobs);
    if (jobs == 1 || order.size() < 4) {
        results.emplace_back();
        std::vector<VertexSet> out(static_cast<std::size_t>(g.n));
        std::vector<int> indeg(static_cast<std::size_t>(g.n), 0);
        bnb_walk(g, order, 0, out, indeg, static_cast<std::uint64_t>(g.n), shared,
                 results.back());
    } else {
        // split on the first few edges; each task continues the same walk
        std::size_t split = std::min<std::size_t>(order.size(), 5);
        struct Prefix {
            std::vector<VertexSet> out;
            std::vector<int> indeg;
            std::uint64_t bound;
        };
        std::vector<Prefix> prefixes;
        std::vector<VertexSet> out0(static_cast<std::size_t>(g.n));
        std::vector<int> indeg0(static_cast<std::size_t>(g.n), 0);
        auto gen = [&](auto&& self, std::size_t depth, std::uint64_t bound) -> void {
            if (depth == split) {
                prefixes.push_back({out0, indeg0, bound});
                return;
            }
            auto [u, v] = order[depth];
            for (int way = 0; way < 2; ++way) {
                int a = way == 0 ? u : v;
                int b = way == 0 ? v : u;
                if (reaches(out0, b, a)) continue;
                out0[static_cast<std::size_t>(a)].add(b);
                ++indeg0[static_cast<std::size_t>(b)];
                self(self, depth + 1, bound + (std::uint64_t{1} << (indeg0[static_cast<std::size_t>(b)] - 1)));
                out0[static_cast<std::size_t>(a)].remove(b);
                --indeg0[static_cast<std::size_t>(b)];
            }
        };
        gen(gen, 0, static_cast<std::uint64_t>(g.n));
        results.resize(prefixes.size());
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::atomic<bool> exceeded{false};
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= prefixes.size() || exceeded.load()) return;
                    auto st = prefixes[i];
                    try {
                        bnb_walk(g, order, split, st.out, st.indeg, st.bound, shared,
                                 results[i]);
                    } catch (const Error&) {
                        exceeded.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (exceeded.load()) fail("SearchBudgetExceeded", "acyclic orientation search");
    }

    std::uint64_t m = shared.incumbent.load();
    require(m != ~std::uint64_t{0}, "EmptyGraph", "no acyclic orientation found");

    // discard entries recorded against a stale incumbent
    std::vector<std::vector<std::uint8_t>> dirs;
    for (auto& res : results)
        for (auto& [f, dir] : res.hits)
            if (f == m) dirs.push_back(std::move(dir));
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    GoodOrientations outp;
    outp.minimum = m;
    outp.complete = true;
    outp.orientations.reserve(dirs.size());
    for (auto& d : dirs) outp.orientations.push_back(make_orientation(g, std::move(d)));
    return outp;
}

constexpr int kSuffixDpMaxVertices = 24; // 2^24 u32 entries, 64 MiB transient

} // namespace detail

/**
 * Minimum of the f-score over all acyclic orientations of g, with either a
 * single minimizer or the complete deduplicated set of minimizers. For
 * facet-ridge graphs of shellable spheres the minimum equals the total face
 * count and the minimizers are exactly the good orientations.
 */
inline GoodOrientations find_good_orientations(const FacetRidgeGraph& g,
                                               OrientationMode mode,
                                               SearchBudget budget = SearchBudget(100'000'000),
                                               int jobs = 1) {
    require(g.n > 0, "EmptyGraph", "orientation search needs a non-empty graph");
    if (mode == OrientationMode::One && g.n <= detail::kSuffixDpMaxVertices)
        return detail::min_f_by_suffix_dp(g);
    GoodOrientations all = detail::enumerate_minimizers(g, budget, jobs);
    if (mode == OrientationMode::One && all.orientations.size() > 1) {
        all.orientations.resize(1);
        all.complete = false;
    }
    return all;
}

// Complex-aware goodness certificate: every face's star (all dimensions,
// including the empty face) must have exactly one sink in its induced
// subgraph.
inline bool is_good_orientation(const SimplicialComplex& c, const AcyclicOrientation& o) {
    require(facet_ridge_graph(c) == o.g, "GraphMismatch",
            "orientation does not belong to the facet-ridge graph of this complex");
    if (!is_acyclic(o)) return false;
    for (const auto& layer : c.faces_by_dim())
        for (Face sigma : layer)
            if (o.sinks_in(star(c, sigma)).count() != 1) return false;
    return true;
}

struct SinkPeel {
    std::vector<int> order;              // t_1 ... t_n, chosen sink first
    std::vector<VertexSet> sink_choices; // available sinks at each step
};

// Repeatedly removes the smallest sink of the remaining induced subgraph.
// For a good orientation the resulting facet order is a shelling.
inline SinkPeel sink_peel_order(const FacetRidgeGraph& g, const AcyclicOrientation& o,
                                VertexSet domain) {
    require(g == o.g, "GraphMismatch", "orientation belongs to a different graph");
    SinkPeel peel;
    VertexSet remaining = domain;
    while (!remaining.empty()) {
        VertexSet s = o.sinks_in(remaining);
        require(!s.empty(), "NotAcyclic", "no sink in the remaining induced subgraph");
        int pick = s.min();
        peel.order.push_back(pick);
        peel.sink_choices.push_back(s);
        remaining.remove(pick);
    }
    return peel;
}

inline SinkPeel sink_peel_order(const FacetRidgeGraph& g, const AcyclicOrientation& o) {
    return sink_peel_order(g, o, g.vertices());
}

// Checks (without re-running the peel) that each order entry is a sink of the
// graph induced by the not-yet-removed vertices.
inline bool is_sink_peel(const FacetRidgeGraph& g, const AcyclicOrientation& o,
                         const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != g.n) return false;
    VertexSet remaining = g.vertices();
    for (int v : order) {
        if (!remaining.test(v) || !o.sinks_in(remaining).test(v)) return false;
        remaining.remove(v);
    }
    return true;
}

// The frame rooted at t whose leaves are all in-neighbors of t; its face is
// the restriction face of T under any peel of this orientation.
inline KFrame restriction_frame(const AcyclicOrientation& o, int t) {
    return KFrame{t, o.in_neighbors(t)};
}

struct FacetInterval {
    Face restriction;
    Face facet;
};

// The Boolean intervals [R(T_i), T_i] with R(T_i) the intersection of T_i
// with all facets of in-neighbors. For a good orientation these intervals
// partition the face set; any violation raises NotGood.
inline std::vector<FacetInterval> partitioning_from_orientation(const SimplicialComplex& c,
                                                                const AcyclicOrientation& o) {
    require(facet_ridge_graph(c) == o.g, "GraphMismatch",
            "orientation does not belong to the facet-ridge graph of this complex");
    std::vector<FacetInterval> intervals;
    intervals.reserve(static_cast<std::size_t>(c.facet_count()));
    for (int i = 0; i < c.facet_count(); ++i) {
        Face r = c.facet(i);
        o.in_neighbors(i).for_each([&](int j) { r &= c.facet(j); });
        intervals.push_back({r, c.facet(i)});
    }
    for (const auto& layer : c.faces_by_dim())
        for (Face sigma : layer) {
            int owners = 0;
            for (const auto& iv : intervals)
                if (sigma.contains(iv.restriction) && iv.facet.contains(sigma)) ++owners;
            require(owners == 1, "NotGood",
                    "intervals do not partition the face set (orientation is not good)");
        }
    return intervals;
}

} // namespace dualrec
