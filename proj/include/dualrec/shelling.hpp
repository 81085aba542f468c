#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dualrec/budget.hpp"
#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/orientation.hpp"
#include "dualrec/rng.hpp"

namespace dualrec {

// A shelling together with its restriction map. restriction[f] is the
// restriction face of facet f (by facet index, not by position).
struct ShellingOrder {
    std::vector<int> order;
    std::vector<Face> restriction;
};

struct ShellingCheck {
    bool ok = false;
    int fail_index = -1; // first offending position (0-based) when !ok
};

namespace detail {

inline void check_permutation(const SimplicialComplex& c, const std::vector<int>& order) {
    require(static_cast<int>(order.size()) == c.facet_count(), "NotAPermutation",
            "order length does not match facet count");
    VertexSet seen;
    for (int f : order) {
        require(f >= 0 && f < c.facet_count() && !seen.test(f), "NotAPermutation",
                "order is not a permutation of the facet indices");
        seen.add(f);
    }
}

// Prefix condition at position i: the intersection with every earlier facet
// must lie inside an intersection that is a full ridge, and at least one
// earlier facet must share a ridge. Equivalent to the prefix union meeting
// the new facet in a pure (d-2)-dimensional complex.
inline bool prefix_attaches(const SimplicialComplex& c, const std::vector<int>& order,
                            std::size_t i) {
    Face ti = c.facet(order[i]);
    std::vector<Face> shared_ridges;
    for (std::size_t j = 0; j < i; ++j) {
        Face inter = ti & c.facet(order[j]);
        if (inter.count() == c.d() - 1) shared_ridges.push_back(inter);
    }
    if (shared_ridges.empty()) return false;
    for (std::size_t j = 0; j < i; ++j) {
        Face inter = ti & c.facet(order[j]);
        bool covered = false;
        for (Face r : shared_ridges)
            if (r.contains(inter)) { covered = true; break; }
        if (!covered) return false;
    }
    return true;
}

} // namespace detail

inline ShellingCheck is_shelling(const SimplicialComplex& c, const std::vector<int>& order) {
    detail::check_permutation(c, order);
    for (std::size_t i = 1; i < order.size(); ++i)
        if (!detail::prefix_attaches(c, order, i))
            return {false, static_cast<int>(i)};
    return {true, -1};
}

// R(T_i) = {v in T_i : T_i \ {v} lies in an earlier facet}; the intervals
// [R(T_i), T_i] partition the face set.
inline ShellingOrder restriction_map(const SimplicialComplex& c, const std::vector<int>& order) {
    require(is_shelling(c, order).ok, "NotAShelling", "restriction map of a non-shelling");
    ShellingOrder s;
    s.order = order;
    s.restriction.assign(static_cast<std::size_t>(c.facet_count()), Face{});
    for (std::size_t i = 0; i < order.size(); ++i) {
        Face ti = c.facet(order[i]);
        Face r;
        ti.for_each([&](int v) {
            Face ridge = ti;
            ridge.remove(v);
            for (std::size_t j = 0; j < i; ++j)
                if (c.facet(order[j]).contains(ridge)) {
                    r.add(v);
                    return;
                }
        });
        s.restriction[static_cast<std::size_t>(order[i])] = r;
    }
    return s;
}

// Backtracking search for a shelling. Candidates are facets sharing a ridge
// with the placed prefix (a necessary condition), tried in ascending index
// order, or shuffled when a seed is supplied. Returns nullopt only after an
// exhaustive search; running out of budget raises SearchBudgetExceeded.
inline std::optional<ShellingOrder> find_shelling(const SimplicialComplex& c,
                                                  SearchBudget budget = SearchBudget(10'000'000),
                                                  std::optional<std::uint64_t> shuffle_seed = {}) {
    const int n = c.facet_count();
    if (n == 0) return std::nullopt;
    FacetRidgeGraph g = facet_ridge_graph(c);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    Lcg rng(shuffle_seed.value_or(0));

    auto arrange = [&](std::vector<int> cand) {
        if (shuffle_seed)
            for (std::size_t i = cand.size(); i > 1; --i)
                std::swap(cand[i - 1], cand[rng.below(static_cast<std::uint32_t>(i))]);
        return cand;
    };

    VertexSet placed;
    VertexSet adjacent; // vertices sharing a ridge with the prefix
    auto dfs = [&](auto&& self) -> bool {
        if (static_cast<int>(order.size()) == n) return true;
        std::vector<int> cand =
            arrange(order.empty() ? g.vertices().to_vector() : (adjacent - placed).to_vector());
        for (int f : cand) {
            budget.tick("shelling search");
            order.push_back(f);
            if (order.size() == 1 || detail::prefix_attaches(c, order, order.size() - 1)) {
                VertexSet saved = adjacent;
                placed.add(f);
                adjacent |= g.neighbors(f);
                if (self(self)) return true;
                placed.remove(f);
                adjacent = saved;
            }
            order.pop_back();
        }
        return false;
    };
    if (!dfs(dfs)) return std::nullopt;
    return restriction_map(c, order);
}

// For spheres the reverse of a shelling is again a shelling.
inline bool reverse_order_check(const SimplicialComplex& c, const ShellingOrder& s) {
    std::vector<int> rev(s.order.rbegin(), s.order.rend());
    return is_shelling(c, rev).ok;
}

// Orients each facet-ridge edge from the later facet to the earlier one.
// The result is acyclic with unique global sink at the first facet, and good
// when the input is a shelling of a sphere.
inline AcyclicOrientation shelling_to_orientation(const SimplicialComplex& c,
                                                  const ShellingOrder& s) {
    require(is_shelling(c, s.order).ok, "NotAShelling",
            "orientation is defined for shellings only");
    FacetRidgeGraph g = facet_ridge_graph(c);
    std::vector<int> pos(static_cast<std::size_t>(c.facet_count()), 0);
    for (std::size_t p = 0; p < s.order.size(); ++p)
        pos[static_cast<std::size_t>(s.order[p])] = static_cast<int>(p);
    std::vector<std::uint8_t> dir(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        dir[e] = pos[static_cast<std::size_t>(u)] > pos[static_cast<std::size_t>(v)] ? 1 : 0;
    }
    return make_orientation(g, std::move(dir));
}

} // namespace dualrec
