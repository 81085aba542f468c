#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dualrec/budget.hpp"
#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/orientation.hpp"

namespace dualrec {

// Family of vertex sets whose induced subgraphs are k-regular and which
// together contain the vertex set of every k-frame exactly once.
struct KSystem {
    int k = 0;
    std::vector<VertexSet> sets; // canonically sorted

    void canonicalize() { std::sort(sets.begin(), sets.end(), lex_less<VertexSetTag>); }

    friend bool operator==(const KSystem& a, const KSystem& b) {
        return a.k == b.k && a.sets == b.sets;
    }
};

// One k-system per level k = 2 .. d-1.
struct CompatibleFamily {
    std::map<int, KSystem> levels;
};

inline std::vector<KFrame> enumerate_k_frames(const FacetRidgeGraph& g, int k) {
    std::vector<KFrame> frames;
    for (int v = 0; v < g.n; ++v)
        for_each_k_subset(g.neighbors(v), k,
                          [&](VertexSet leaves) { frames.push_back({v, leaves}); });
    return frames;
}

// The (d-k-1)-face determined by a k-frame: the intersection of the root
// facet with all leaf facets.
inline Face frame_face(const SimplicialComplex& c, const KFrame& f) {
    Face sigma = c.facet(f.root);
    f.leaves.for_each([&](int t) { sigma &= c.facet(t); });
    require(sigma.count() == c.d() - f.k(), "FaceEmptyMismatch",
            "frame intersection has the wrong size (input is not a sphere graph)");
    return sigma;
}

// The frame rooted at the unique sink of G[S], with the sink's neighbors
// inside S as leaves.
inline KFrame principal_frame(const AcyclicOrientation& o, VertexSet s) {
    VertexSet sinks = o.sinks_in(s);
    require(sinks.count() == 1, "NoUniqueSink",
            "induced subgraph does not have exactly one sink");
    int root = sinks.min();
    return KFrame{root, o.g.neighbors(root) & s};
}

// Stars of all (d-k-1)-dimensional faces, as facet-index sets. For a
// shellable sphere and 2 <= k <= d-1 this is a star-like k-system.
inline KSystem star_system(const SimplicialComplex& c, int k) {
    require(k >= 0 && k <= c.d(), "BadParameter", "level out of range");
    KSystem sys;
    sys.k = k;
    int dim = c.d() - k - 1;
    const auto& layers = c.faces_by_dim();
    std::size_t layer = static_cast<std::size_t>(dim + 1);
    if (layer < layers.size())
        for (Face sigma : layers[layer]) sys.sets.push_back(star(c, sigma));
    sys.canonicalize();
    return sys;
}

inline bool is_k_system(const FacetRidgeGraph& g, const std::vector<VertexSet>& sets, int k) {
    for (VertexSet s : sets)
        if (!induced_regular(g, s, k)) return false;
    for (const KFrame& f : enumerate_k_frames(g, k)) {
        int covering = 0;
        for (VertexSet s : sets)
            if (s.contains(f.vertex_set())) ++covering;
        if (covering != 1) return false;
    }
    return true;
}

namespace detail {

// All vertex sets inducing a connected k-regular subgraph, grown as closures
// of k-frames: while some vertex is short of degree k, branch on which of its
// missing neighbors joins the set; a vertex already at degree k may not gain
// further neighbors. Deduplicated via a memo on visited states.
inline std::vector<VertexSet> k_regular_candidates(const FacetRidgeGraph& g, int k,
                                                   SearchBudget& budget) {
    std::unordered_set<std::uint64_t> visited;
    std::vector<VertexSet> out;

    auto grow = [&](auto&& self, VertexSet s) -> void {
        if (!visited.insert(s.bits).second) return;
        budget.tick("k-system candidate growth");
        int deficient = -1;
        bool overfull = false;
        s.for_each([&](int v) {
            int deg = (g.neighbors(v) & s).count();
            if (deg > k) overfull = true;
            if (deg < k && deficient < 0) deficient = v;
        });
        if (overfull) return;
        if (deficient < 0) {
            out.push_back(s);
            return;
        }
        VertexSet options = g.neighbors(deficient) - s;
        options.for_each([&](int w) {
            // adding w may not push any of its neighbors beyond degree k
            if ((g.neighbors(w) & s).count() > k) return;
            bool blocked = false;
            (g.neighbors(w) & s).for_each([&](int x) {
                if ((g.neighbors(x) & s).count() >= k) blocked = true;
            });
            if (!blocked) {
                VertexSet next = s;
                next.add(w);
                self(self, next);
            }
        });
    };

    for (const KFrame& f : enumerate_k_frames(g, k)) grow(grow, f.vertex_set());
    std::sort(out.begin(), out.end(), lex_less<VertexSetTag>);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Frame-index bitset wide enough for any frame count.
struct CoverMask {
    std::vector<std::uint64_t> w;

    explicit CoverMask(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
    void add(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool intersects(const CoverMask& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    void merge(const CoverMask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    void subtract(const CoverMask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
};

} // namespace detail

/**
 * Every k-system of g with connected members, by exact cover over the
 * k-frames: members must cover each frame's vertex set exactly once.
 * (A member whose induced subgraph is disconnected is a disjoint union of
 * connected ones and can never be star-like, so nothing downstream is lost.)
 */
inline std::vector<KSystem> all_k_systems(const FacetRidgeGraph& g, int k,
                                          SearchBudget budget = SearchBudget(10'000'000)) {
    std::vector<KFrame> frames = enumerate_k_frames(g, k);
    std::vector<VertexSet> candidates = detail::k_regular_candidates(g, k, budget);
    const std::size_t nf = frames.size();

    std::vector<detail::CoverMask> covers;
    covers.reserve(candidates.size());
    for (VertexSet s : candidates) {
        detail::CoverMask m(nf);
        for (std::size_t i = 0; i < nf; ++i)
            if (s.contains(frames[i].vertex_set())) m.add(i);
        covers.push_back(std::move(m));
    }

    std::vector<KSystem> out;
    if (nf == 0) {
        out.push_back(KSystem{k, {}});
        return out;
    }

    detail::CoverMask covered(nf);
    std::vector<std::size_t> chosen;
    auto search = [&](auto&& self) -> void {
        budget.tick("k-system exact cover");
        // first uncovered frame; fail fast if nothing can cover it
        std::size_t target = nf;
        for (std::size_t i = 0; i < nf; ++i)
            if (!covered.test(i)) { target = i; break; }
        if (target == nf) {
            KSystem sys;
            sys.k = k;
            for (std::size_t c : chosen) sys.sets.push_back(candidates[c]);
            sys.canonicalize();
            out.push_back(std::move(sys));
            return;
        }
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (!covers[c].test(target) || covers[c].intersects(covered)) continue;
            covered.merge(covers[c]);
            chosen.push_back(c);
            self(self);
            chosen.pop_back();
            covered.subtract(covers[c]);
        }
    };
    search(search);
    return out;
}

// Star-like: every good acyclic orientation induces exactly one sink on every
// member. Requires the complete minimizer set unless the caller explicitly
// vouches for the list.
inline bool is_star_like(const FacetRidgeGraph& g, const KSystem& sys,
                         const GoodOrientations& good, bool trusted_complete = false) {
    require(good.complete || trusted_complete, "IncompleteOrientationSet",
            "star-likeness quantifies over all good orientations");
    for (const AcyclicOrientation& o : good.orientations) {
        require(o.g == g, "GraphMismatch", "orientation belongs to a different graph");
        for (VertexSet s : sys.sets)
            if (o.sinks_in(s).count() != 1) return false;
    }
    return true;
}

namespace detail {

// frame vertex set -> owning member, or nullopt if the family double-covers.
inline std::optional<std::unordered_map<std::uint64_t, VertexSet>>
coverage_lookup(const FacetRidgeGraph& g, const KSystem& sys) {
    std::unordered_map<std::uint64_t, VertexSet> table;
    for (VertexSet s : sys.sets) {
        bool ok = true;
        s.for_each([&](int t) {
            VertexSet key = (g.neighbors(t) & s) | VertexSet::single(t);
            auto [it, inserted] = table.emplace(key.bits, s);
            if (!inserted && it->second != s) ok = false;
        });
        if (!ok) return std::nullopt;
    }
    return table;
}

} // namespace detail

// Def-level compatibility: for every (k-1)-subframe of every k-frame, the
// covering member at level k-1 is contained in the covering member at level k.
inline bool is_compatible(const CompatibleFamily& family, const FacetRidgeGraph& g) {
    int d = g.regular_degree();
    require(d >= 2, "BadParameter", "compatibility is defined for regular graphs");
    for (int k = 2; k <= d - 1; ++k)
        require(family.levels.count(k) != 0, "MissingLevel",
                "family must provide every level 2 <= k <= d-1");
    for (int k = 3; k <= d - 1; ++k) {
        auto upper = detail::coverage_lookup(g, family.levels.at(k));
        auto lower = detail::coverage_lookup(g, family.levels.at(k - 1));
        if (!upper || !lower) return false;
        for (const KFrame& f : enumerate_k_frames(g, k)) {
            auto up = upper->find(f.vertex_set().bits);
            if (up == upper->end()) return false;
            bool ok = true;
            f.leaves.for_each([&](int drop) {
                VertexSet sub = f.vertex_set();
                sub.remove(drop);
                auto lo = lower->find(sub.bits);
                if (lo == lower->end() || !up->second.contains(lo->second)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

/**
 * Enumerates the k-systems of every level, keeps the star-like ones, and
 * assembles the compatible families. For the facet-ridge graph of a shellable
 * sphere exactly one family exists (the face-star systems); anything else
 * raises NotUnique.
 */
inline CompatibleFamily unique_compatible_family(const FacetRidgeGraph& g,
                                                 SearchBudget budget = SearchBudget(10'000'000)) {
    int d = g.regular_degree();
    require(d >= 2, "BadParameter", "oracle needs a regular graph");
    GoodOrientations good = find_good_orientations(g, OrientationMode::All,
                                                   SearchBudget(budget.cap()));

    std::vector<std::vector<KSystem>> starlike_per_level;
    for (int k = 2; k <= d - 1; ++k) {
        std::vector<KSystem> systems = all_k_systems(g, k, SearchBudget(budget.cap()));
        std::vector<KSystem> starlike;
        for (KSystem& s : systems)
            if (is_star_like(g, s, good)) starlike.push_back(std::move(s));
        starlike_per_level.push_back(std::move(starlike));
    }

    std::vector<CompatibleFamily> found;
    CompatibleFamily current;
    auto combine = [&](auto&& self, std::size_t level) -> void {
        if (level == starlike_per_level.size()) {
            if (is_compatible(current, g)) found.push_back(current);
            return;
        }
        for (const KSystem& s : starlike_per_level[level]) {
            current.levels[2 + static_cast<int>(level)] = s;
            self(self, level + 1);
        }
        current.levels.erase(2 + static_cast<int>(level));
    };
    combine(combine, 0);

    require(!found.empty(), "NotUnique", "no compatible family of star-like k-systems");
    require(found.size() == 1, "NotUnique", "multiple compatible families found");
    return found.front();
}

} // namespace dualrec
