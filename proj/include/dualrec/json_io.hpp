#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualrec/complex.hpp"
#include "dualrec/errors.hpp"
#include "dualrec/frames.hpp"
#include "dualrec/graph.hpp"
#include "dualrec/orientation.hpp"
#include "dualrec/reconstruct.hpp"
#include "dualrec/shelling.hpp"

namespace dualrec {

using json = nlohmann::ordered_json;

// Canonical complex format: {"d": int, "facets": [[int,...],...]} with each
// facet ascending and the facet list sorted lexicographically. Canonical
// documents round-trip byte-stably.
inline json complex_to_json(const SimplicialComplex& c) {
    std::vector<Face> facets = c.facets();
    std::sort(facets.begin(), facets.end(), lex_less<FaceTag>);
    json j;
    j["d"] = c.d();
    json arr = json::array();
    for (Face f : facets) arr.push_back(f.to_vector());
    j["facets"] = std::move(arr);
    return j;
}

inline SimplicialComplex complex_from_json(const json& j) {
    require(j.is_object() && j.contains("d") && j.contains("facets"), "BadParameter",
            "complex JSON must be {\"d\":int,\"facets\":[[int,...],...]}");
    try {
        std::vector<std::vector<int>> facets;
        for (const auto& f : j.at("facets")) facets.push_back(f.get<std::vector<int>>());
        return build_complex(j.at("d").get<int>(), facets);
    } catch (const nlohmann::json::exception& e) {
        fail("BadParameter", std::string("malformed complex JSON: ") + e.what());
    }
}

// Canonical graph format: {"n": int, "edges": [[u,v],...]} with u < v, sorted.
inline json graph_to_json(const FacetRidgeGraph& g) {
    json j;
    j["n"] = g.n;
    json arr = json::array();
    for (auto [u, v] : g.edges) arr.push_back({u, v});
    j["edges"] = std::move(arr);
    return j;
}

inline FacetRidgeGraph graph_from_json(const json& j) {
    require(j.is_object() && j.contains("n") && j.contains("edges"), "BadParameter",
            "graph JSON must be {\"n\":int,\"edges\":[[int,int],...]}");
    try {
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            auto v = e.get<std::vector<int>>();
            require(v.size() == 2, "BadParameter", "graph edge must have two endpoints");
            edges.emplace_back(v[0], v[1]);
        }
        return FacetRidgeGraph(j.at("n").get<int>(), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        fail("BadParameter", std::string("malformed graph JSON: ") + e.what());
    }
}

// Orientation as directed edges [tail, head], sorted.
inline json orientation_to_json(const AcyclicOrientation& o) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(o.g.edges.size());
    for (std::size_t e = 0; e < o.g.edges.size(); ++e)
        arcs.emplace_back(o.tail(static_cast<int>(e)), o.head(static_cast<int>(e)));
    std::sort(arcs.begin(), arcs.end());
    json j;
    json arr = json::array();
    for (auto [t, h] : arcs) arr.push_back({t, h});
    j["edges"] = std::move(arr);
    return j;
}

inline AcyclicOrientation orientation_from_json(const FacetRidgeGraph& g, const json& j) {
    require(j.is_object() && j.contains("edges"), "BadParameter",
            "orientation JSON must be {\"edges\":[[tail,head],...]}");
    std::vector<std::uint8_t> dir(g.edges.size(), 0);
    std::vector<char> seen(g.edges.size(), 0);
    for (const auto& e : j.at("edges")) {
        auto v = e.get<std::vector<int>>();
        require(v.size() == 2, "BadParameter", "directed edge must have two endpoints");
        int idx = g.edge_index(v[0], v[1]);
        dir[static_cast<std::size_t>(idx)] = v[0] < v[1] ? 1 : 0;
        seen[static_cast<std::size_t>(idx)] = 1;
    }
    require(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }),
            "BadParameter", "orientation must assign every edge");
    return make_orientation(g, std::move(dir));
}

inline json ksystem_to_json(const KSystem& sys) {
    json j;
    j["k"] = sys.k;
    json arr = json::array();
    for (VertexSet s : sys.sets) arr.push_back(s.to_vector());
    j["sets"] = std::move(arr);
    return j;
}

inline json shelling_to_json(const ShellingOrder& s) {
    json j;
    j["order"] = s.order;
    json arr = json::array(); // aligned with "order": restriction of order[i]
    for (int f : s.order)
        arr.push_back(s.restriction[static_cast<std::size_t>(f)].to_vector());
    j["restriction"] = std::move(arr);
    return j;
}

// FNV-1a over the canonical serialization; identifies the run input.
inline std::string content_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) h = (h ^ c) * 1099511628211ull;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json report_to_json(const ReconstructReport& r, const AcyclicOrientation& o,
                           const std::string& input_digest) {
    json j;
    j["input_digest"] = input_digest;
    j["d"] = r.d;
    j["minimum_f"] = r.minimum_f;
    j["orientation"] = orientation_to_json(o);
    j["peel_order"] = r.peel_order;
    json stages = json::array();
    for (const auto& st : r.stages) {
        json s;
        s["position"] = st.position;
        s["root"] = st.root;
        s["k"] = st.k;
        s["peeled"] = st.peeled;
        s["star"] = st.star;
        stages.push_back(std::move(s));
    }
    j["stages"] = std::move(stages);
    j["max_recursion_depth"] = r.max_recursion_depth;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline std::string dump_line(const json& j) { return j.dump() + "\n"; }

} // namespace dualrec
