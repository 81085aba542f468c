#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dualrec/budget.hpp"
#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/frames.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/orientation.hpp"
#include "dualrec/rng.hpp"

namespace dualrec {

// Freeness of a vertex inside the working graph G[w]: some known star set S
// must be live (S inside w) and swallow the closed neighborhood of t.
inline bool is_free_vertex(const FacetRidgeGraph& g, VertexSet w, int t, VertexSet s) {
    if (!w.contains(s) || !s.test(t)) return false;
    VertexSet closed = (g.neighbors(t) & w) | VertexSet::single(t);
    return s.contains(closed);
}

// Stars of discovered faces. Every face is addressed by its principal frame
// (root, in-leaves); levels 2..d-1 additionally index members by the per-root
// frame vertex sets so that any k-frame can be resolved to its owning star.
struct StarTables {
    std::vector<std::pair<KFrame, VertexSet>> entries; // insertion order, newest last
    std::unordered_map<KFrame, VertexSet, KFrameHash> by_frame;
    std::map<int, std::unordered_map<std::uint64_t, VertexSet>> levels;

    void record(const KFrame& frame, VertexSet star) {
        auto [it, inserted] = by_frame.emplace(frame, star);
        if (!inserted) {
            require(it->second == star, "InconsistentInput",
                    "conflicting stars recorded for one principal frame");
            return;
        }
        entries.emplace_back(frame, star);
    }

    void record_level_member(const FacetRidgeGraph& g, int k, VertexSet member) {
        auto& table = levels[k];
        member.for_each([&](int t) {
            VertexSet key = (g.neighbors(t) & member) | VertexSet::single(t);
            auto [it, inserted] = table.emplace(key.bits, member);
            require(inserted || it->second == member, "InconsistentInput",
                    "two level members claim the same frame");
        });
    }

    // The level-k member containing the given frame vertex set, if known.
    std::optional<VertexSet> level_lookup(int k, VertexSet frame_vertices) const {
        auto lvl = levels.find(k);
        if (lvl == levels.end()) return std::nullopt;
        auto it = lvl->second.find(frame_vertices.bits);
        if (it == lvl->second.end()) return std::nullopt;
        return it->second;
    }
};

struct ReconstructReport {
    int d = 0;
    std::uint64_t minimum_f = 0;
    std::vector<int> peel_order;
    struct Stage {
        int position = 0; // 1-based position in the peel order
        int root = 0;
        int k = 0;
        std::vector<int> peeled;
        std::vector<int> star;
    };
    std::vector<Stage> stages;   // outermost run only
    int max_recursion_depth = 0; // deepest link recursion reached
    double wall_seconds = 0.0;
};

namespace detail {

struct ReconContext {
    const FacetRidgeGraph& g;
    const AcyclicOrientation& o;
    Lcg* peel_rng = nullptr;          // when set, peels pick a random free vertex
    ReconstructReport* report = nullptr; // stages filled at recursion depth 0 only
    int depth = 0;
};

// Removes free vertices from w until none is left. Eligible witnesses are
// entries rooted strictly later in the peel order than the current stage
// (faces of later intervals). Deterministic mode scans witness sets newest
// first and vertices in increasing id; randomized mode draws uniformly from
// all free (witness, vertex) pairs.
inline std::vector<int> peel_free_vertices(const ReconContext& ctx, const StarTables& tables,
                                           const std::vector<int>& pos_of, int stage_pos,
                                           VertexSet& w) {
    std::vector<int> peeled;
    for (;;) {
        int pick = -1;
        std::vector<int> pool;
        for (std::size_t e = tables.entries.size(); e-- > 0;) {
            const KFrame& frame = tables.entries[e].first;
            const VertexSet s = tables.entries[e].second;
            if (pos_of[static_cast<std::size_t>(frame.root)] <= stage_pos) continue;
            if (!w.contains(s)) continue;
            bool done = false;
            s.for_each([&](int t) {
                if (done && !ctx.peel_rng) return;
                if (is_free_vertex(ctx.g, w, t, s)) {
                    if (ctx.peel_rng) {
                        pool.push_back(t);
                    } else if (!done) {
                        pick = t;
                        done = true;
                    }
                }
            });
            if (done && !ctx.peel_rng) break;
        }
        if (ctx.peel_rng && !pool.empty()) {
            std::sort(pool.begin(), pool.end());
            pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
            pick = pool[ctx.peel_rng->below(static_cast<std::uint32_t>(pool.size()))];
        }
        if (pick < 0) return peeled;
        w.remove(pick);
        peeled.push_back(pick);
    }
}

inline StarTables build_star_tables(const ReconContext& ctx, VertexSet domain);

// Base case for the first facet: the 2-frames not covered by the
// known level-2 members form the union of the unknown cycles through the
// global sink; maximal degree-2 paths between two of its neighbors stitch
// each cycle back together.
inline void stitch_first_facet_level2(const ReconContext& ctx, StarTables& tables,
                                      VertexSet domain, int t1) {
    const FacetRidgeGraph& g = ctx.g;
    VertexSet nbrs = g.neighbors(t1) & domain;

    std::vector<VertexSet> gu(static_cast<std::size_t>(g.n));
    domain.for_each([&](int r) {
        for_each_k_subset(g.neighbors(r) & domain, 2, [&](VertexSet leaves) {
            VertexSet key = leaves | VertexSet::single(r);
            if (tables.level_lookup(2, key)) return;
            leaves.for_each([&](int x) {
                gu[static_cast<std::size_t>(r)].add(x);
                gu[static_cast<std::size_t>(x)].add(r);
            });
        });
    });

    VertexSet branch;
    domain.for_each([&](int v) {
        if (gu[static_cast<std::size_t>(v)].count() > 2) branch.add(v);
    });
    require(branch == (nbrs | VertexSet::single(t1)), "InconsistentInput",
            "branch vertices of the uncovered 2-frame union are not the sink's neighborhood");

    std::map<std::pair<int, int>, VertexSet> cycles;
    nbrs.for_each([&](int a) {
        gu[static_cast<std::size_t>(a)].for_each([&](int w0) {
            if (w0 == t1) return;
            int prev = a, cur = w0;
            VertexSet inner;
            while (!branch.test(cur)) {
                inner.add(cur);
                VertexSet next = gu[static_cast<std::size_t>(cur)];
                next.remove(prev);
                require(next.count() == 1, "InconsistentInput",
                        "degree-2 path is not a path");
                prev = cur;
                cur = next.min();
            }
            if (cur == t1 || a > cur) return; // record each endpoint pair once
            VertexSet member = inner | VertexSet::of({t1, a, cur});
            auto [it, inserted] = cycles.emplace(std::make_pair(a, cur), member);
            require(inserted ? true : it->second == member, "StitchAmbiguity",
                    "two distinct paths share an endpoint pair");
        });
    });

    int want = nbrs.count() * (nbrs.count() - 1) / 2;
    require(static_cast<int>(cycles.size()) == want, "InconsistentInput",
            "pair-to-cycle stitching did not produce one cycle per neighbor pair");
    for (auto& [pair, member] : cycles) {
        tables.record_level_member(g, 2, member);
        tables.record(KFrame{t1, VertexSet::of({pair.first, pair.second})}, member);
    }

    // every 2-frame of the domain graph must now resolve
    domain.for_each([&](int r) {
        for_each_k_subset(g.neighbors(r) & domain, 2, [&](VertexSet leaves) {
            require(tables.level_lookup(2, leaves | VertexSet::single(r)).has_value(),
                    "InconsistentInput", "a 2-frame is not covered after stitching");
        });
    });
}

// Frame propagation for level k >= 3 inside the first facet: starting from
// the principal frame <t1; B>, the k-frame at a leaf is the union of its
// (k-1)-frames inside the level-(k-1) members of the subframes, which
// determines the whole member by closure.
inline void propagate_first_facet_level(const ReconContext& ctx, StarTables& tables,
                                        VertexSet domain, int t1, int k) {
    const FacetRidgeGraph& g = ctx.g;
    VertexSet nbrs = g.neighbors(t1) & domain;
    for_each_k_subset(nbrs, k, [&](VertexSet b) {
        std::unordered_map<int, VertexSet> frame_of; // vertex -> its k leaves in the member
        std::vector<int> queue{t1};
        frame_of[t1] = b;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int t = queue[qi];
            VertexSet leaves = frame_of[t];
            leaves.for_each([&](int tj) {
                VertexSet phi;
                leaves.for_each([&](int drop) {
                    if (drop == tj) return;
                    VertexSet sub = leaves | VertexSet::single(t);
                    sub.remove(drop);
                    auto member = tables.level_lookup(k - 1, sub);
                    require(member.has_value(), "FrameLookupMiss",
                            "level k-1 member missing during frame propagation");
                    phi |= g.neighbors(tj) & *member;
                });
                require(phi.count() == k, "NonRegularClosure",
                        "propagated frame does not have k leaves");
                auto [it, inserted] = frame_of.emplace(tj, phi);
                if (!inserted)
                    require(it->second == phi, "NonRegularClosure",
                            "conflicting frames propagated to one vertex");
                else
                    queue.push_back(tj);
            });
        }
        VertexSet member;
        for (auto& [v, leaves] : frame_of) member.add(v);
        for (auto& [v, leaves] : frame_of)
            require((g.neighbors(v) & member) == leaves, "NonRegularClosure",
                    "closure is not the k-regular span of its frames");
        tables.record_level_member(g, k, member);
        tables.record(KFrame{t1, b}, member);
    });
}

// Recursive core. domain induces the facet-ridge graph of a sphere of one
// dimension per regular degree; returns the stars of all of its faces.
inline StarTables build_star_tables(const ReconContext& ctx, VertexSet domain) {
    const FacetRidgeGraph& g = ctx.g;
    const AcyclicOrientation& o = ctx.o;
    StarTables tables;

    require(!domain.empty(), "InconsistentInput", "empty reconstruction domain");
    if (ctx.report && ctx.depth > ctx.report->max_recursion_depth)
        ctx.report->max_recursion_depth = ctx.depth;

    const int local_d = (g.neighbors(domain.min()) & domain).count();
    require(local_d >= 2, "InconsistentInput", "star subgraph of degree below 2");
    require(induced_regular(g, domain, local_d), "InconsistentInput",
            "star subgraph is not regular");
    require(induced_connected(g, domain), "InconsistentInput",
            "star subgraph is not connected");
    require(o.sinks_in(domain).count() == 1, "NoUniqueSink",
            "the induced subgraph does not have a unique sink");

    // stars of facets and ridges are immediate from the graph
    domain.for_each([&](int v) { tables.record(KFrame{v, {}}, VertexSet::single(v)); });
    for (auto [u, v] : induced_edges(g, domain)) {
        int head = o.in_neighbors(v).test(u) ? v : u;
        int tail = head == v ? u : v;
        tables.record(KFrame{head, VertexSet::single(tail)}, VertexSet::of({head, tail}));
    }

    if (local_d == 2) {
        int sink = o.sinks_in(domain).min();
        tables.record(KFrame{sink, o.in_neighbors(sink) & domain}, domain);
        return tables;
    }

    SinkPeel peel = sink_peel_order(g, o, domain);
    const int m = static_cast<int>(peel.order.size());
    std::vector<int> pos_of(static_cast<std::size_t>(g.n), -1);
    for (int p = 0; p < m; ++p) pos_of[static_cast<std::size_t>(peel.order[p])] = p;

    VertexSet star_union;
    std::vector<char> edge_covered(g.edges.size(), 0);
    auto cover_edges = [&](VertexSet s) {
        for (auto [u, v] : induced_edges(g, s))
            edge_covered[static_cast<std::size_t>(g.edge_index(u, v))] = 1;
    };

    for (int p = m - 1; p >= 1; --p) {
        int root = peel.order[static_cast<std::size_t>(p)];
        VertexSet in_n = o.in_neighbors(root) & domain;
        int k = in_n.count();

        VertexSet remaining;
        for (int q = p; q < m; ++q) remaining.add(peel.order[static_cast<std::size_t>(q)]);

        VertexSet star;
        std::vector<int> peeled;
        if (k <= 1) {
            star = in_n | VertexSet::single(root);
        } else {
            VertexSet w = remaining;
            peeled = peel_free_vertices(ctx, tables, pos_of, p, w);
            require(w.test(root) && w.contains(in_n) && induced_regular(g, w, k) &&
                        o.sinks_in(w) == VertexSet::single(root),
                    "PeelStuck",
                    "free-vertex peeling did not terminate at the restriction star");
            star = w;
        }
        tables.record(KFrame{root, in_n}, star);

        // the union of the known restriction stars must rebuild the whole
        // remaining induced graph, vertices and edges alike
        star_union |= star;
        cover_edges(star);
        require(star_union == remaining, "InconsistentInput",
                "known stars do not cover the remaining vertices");
        for (auto [u, v] : induced_edges(g, remaining))
            require(edge_covered[static_cast<std::size_t>(g.edge_index(u, v))] != 0,
                    "InconsistentInput", "known stars do not cover the remaining edges");

        if (k >= 2) {
            ReconContext sub{ctx.g, ctx.o, ctx.peel_rng, ctx.report, ctx.depth + 1};
            StarTables child = build_star_tables(sub, star);
            for (auto& [frame, s] : child.entries) tables.record(frame, s);
            for (auto& [ck, lvl] : child.levels)
                for (auto& [key, member] : lvl) {
                    auto [it, inserted] = tables.levels[ck].emplace(key, member);
                    require(inserted || it->second == member, "InconsistentInput",
                            "conflicting level members between link and ambient run");
                }
            tables.record_level_member(g, k, star);
        }

        if (ctx.report && ctx.depth == 0) {
            ReconstructReport::Stage st;
            st.position = p + 1;
            st.root = root;
            st.k = k;
            st.peeled = peeled;
            st.star = star.to_vector();
            ctx.report->stages.push_back(std::move(st));
        }
    }

    int t1 = peel.order[0];
    stitch_first_facet_level2(ctx, tables, domain, t1);
    for (int k = 3; k <= local_d - 1; ++k)
        propagate_first_facet_level(ctx, tables, domain, t1, k);
    tables.record(KFrame{t1, o.in_neighbors(t1) & domain}, domain);

    if (ctx.report && ctx.depth == 0) ctx.report->peel_order = peel.order;
    return tables;
}

} // namespace detail

struct ReconstructedComplex {
    SimplicialComplex complex;           // facet i corresponds to graph vertex i
    std::vector<VertexSet> vertex_stars; // per output vertex id, the facets containing it

    friend bool operator==(const ReconstructedComplex& a, const ReconstructedComplex& b) {
        return a.complex.facets() == b.complex.facets() && a.vertex_stars == b.vertex_stars;
    }
};

namespace detail {

inline ReconstructedComplex assemble_complex(const FacetRidgeGraph& g, int d,
                                             const StarTables& tables) {
    auto lvl = tables.levels.find(d - 1);
    require(lvl != tables.levels.end(), "AssemblyMismatch", "vertex-star level missing");
    std::vector<VertexSet> members;
    for (auto& [key, member] : lvl->second) members.push_back(member);
    std::sort(members.begin(), members.end(), lex_less<VertexSetTag>);
    members.erase(std::unique(members.begin(), members.end()), members.end());

    std::vector<Face> facets(static_cast<std::size_t>(g.n), Face{});
    for (std::size_t v = 0; v < members.size(); ++v) {
        require(static_cast<int>(v) < Face::capacity, "AssemblyMismatch",
                "too many reconstructed vertices");
        members[v].for_each([&](int i) { facets[static_cast<std::size_t>(i)].add(static_cast<int>(v)); });
    }
    for (Face f : facets)
        require(f.count() == d, "AssemblyMismatch",
                "a reconstructed facet does not have d vertices");

    ReconstructedComplex out;
    out.complex = build_complex_keep_order(d, facets);
    out.vertex_stars = std::move(members);
    require(facet_ridge_graph(out.complex) == g, "AssemblyMismatch",
            "reconstructed facet-ridge graph differs from the input");
    return out;
}

// The simplicial 1-sphere case: the graph is the complex. One output vertex
// per graph edge; facet i consists of the two edges at graph vertex i.
inline ReconstructedComplex reconstruct_cycle(const FacetRidgeGraph& g) {
    require(g.regular_degree() == 2 && g.is_connected(), "InconsistentInput",
            "a 1-sphere facet-ridge graph must be a single cycle");
    ReconstructedComplex out;
    std::vector<Face> facets(static_cast<std::size_t>(g.n), Face{});
    out.vertex_stars.reserve(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        facets[static_cast<std::size_t>(u)].add(static_cast<int>(e));
        facets[static_cast<std::size_t>(v)].add(static_cast<int>(e));
        out.vertex_stars.push_back(VertexSet::of({u, v}));
    }
    out.complex = build_complex_keep_order(2, facets);
    return out;
}

} // namespace detail

/**
 * Reconstructs the full combinatorial structure of a shellable simplicial
 * sphere from its facet-ridge graph under a fixed good acyclic orientation.
 * Exposed separately so that orientation-independence and randomized-peel
 * properties can be exercised; `reconstruct` is the everyday entry point.
 */
inline ReconstructedComplex reconstruct_with_orientation(const FacetRidgeGraph& g,
                                                         const AcyclicOrientation& o,
                                                         Lcg* peel_rng = nullptr,
                                                         ReconstructReport* report = nullptr) {
    int d = g.regular_degree();
    require(d >= 2, "NotRegular", "facet-ridge graphs of spheres are d-regular with d >= 2");
    if (d == 2) return detail::reconstruct_cycle(g);
    detail::ReconContext ctx{g, o, peel_rng, report, 0};
    StarTables tables = detail::build_star_tables(ctx, g.vertices());
    for (int k = 2; k <= d - 1; ++k) {
        std::vector<VertexSet> members;
        for (auto& [key, member] : tables.levels[k]) members.push_back(member);
        std::sort(members.begin(), members.end(), lex_less<VertexSetTag>);
        members.erase(std::unique(members.begin(), members.end()), members.end());
        require(is_k_system(g, members, k), "InconsistentInput",
                "a completed level table is not a k-system");
    }
    return detail::assemble_complex(g, d, tables);
}

inline ReconstructedComplex reconstruct(const FacetRidgeGraph& g,
                                        SearchBudget budget = SearchBudget(100'000'000),
                                        ReconstructReport* report = nullptr) {
    auto started = std::chrono::steady_clock::now();
    require(g.n > 0, "EmptyGraph", "cannot reconstruct from an empty graph");
    int d = g.regular_degree();
    require(d >= 0, "NotRegular", "input graph is not regular");
    require(d >= 2, "NotRegular", "facet-ridge graphs of spheres are d-regular with d >= 2");
    require(g.is_connected(), "Disconnected", "input graph is not connected");
    if (d == 2) return detail::reconstruct_cycle(g);

    GoodOrientations good = find_good_orientations(g, OrientationMode::One, budget);
    if (report) {
        report->d = d;
        report->minimum_f = good.minimum;
    }
    try {
        ReconstructedComplex out =
            reconstruct_with_orientation(g, good.orientations.front(), nullptr, report);
        if (report)
            report->wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
        return out;
    } catch (const Error& e) {
        if (e.code() == "SearchBudgetExceeded") throw;
        if (e.code() == "InconsistentInput") throw;
        fail("InconsistentInput", e.what());
    }
}

// Round trip: rebuild the complex from its facet-ridge graph and compare the
// vertex stars; facet indices are shared, so isomorphism reduces to star-set
// equality.
inline bool verify_roundtrip(const SimplicialComplex& c) {
    FacetRidgeGraph g = facet_ridge_graph(c);
    ReconstructedComplex rc = reconstruct(g);
    std::vector<VertexSet> truth;
    c.vertex_support().for_each(
        [&](int v) { truth.push_back(star(c, Face::single(v))); });
    std::sort(truth.begin(), truth.end(), lex_less<VertexSetTag>);
    std::vector<VertexSet> got = rc.vertex_stars;
    std::sort(got.begin(), got.end(), lex_less<VertexSetTag>);
    return truth == got && rc.complex.d() == c.d();
}

} // namespace dualrec
