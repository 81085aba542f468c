// Command-line front end: generate sphere fixtures, build facet-ridge graphs,
// search orientations and shellings, enumerate k-systems, and reconstruct
// complexes from graphs. Subcommands read JSON on stdin and write JSON on
// stdout; domain errors exit 1 with {"error":code,...} on stderr, usage
// errors exit 2.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dualrec/dualrec.hpp"

using namespace dualrec;

namespace {

json read_stdin_json() {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        fail("BadParameter", std::string("invalid JSON on stdin: ") + e.what());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"reconstruction of shellable simplicial spheres from facet-ridge graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a sphere fixture as complex JSON");
    std::string kind;
    int gen_d = 3, gen_n = 5, gen_steps = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", kind, "simplex|cross|cycle|cyclic|stacked")->required();
    gen->add_option("--d", gen_d, "facet size d");
    gen->add_option("--n", gen_n, "vertex count (cycle, cyclic)");
    gen->add_option("--steps", gen_steps, "stacking steps");
    gen->add_option("--seed", gen_seed, "PRNG seed (default 0)");

    // graph
    auto* graphcmd = app.add_subcommand("graph", "facet-ridge graph of a complex");
    bool graph_dot = false;
    graphcmd->add_flag("--dot", graph_dot, "emit Graphviz DOT instead of JSON");

    // orient
    auto* orient = app.add_subcommand("orient", "minimum-f acyclic orientations of a graph");
    bool orient_all = false, orient_one = false, orient_dot = false;
    std::uint64_t orient_budget = 100'000'000;
    int orient_jobs = 1;
    orient->add_flag("--all", orient_all, "enumerate every minimizer");
    orient->add_flag("--one", orient_one, "return a single minimizer (default)");
    orient->add_option("--budget", orient_budget, "search node cap");
    orient->add_option("--jobs", orient_jobs, "worker hint for the enumeration");
    orient->add_flag("--dot", orient_dot, "emit the first orientation as DOT");

    // shell
    auto* shell = app.add_subcommand("shell", "find a shelling of a complex");
    std::uint64_t shell_budget = 10'000'000;
    std::optional<std::uint64_t> shell_seed;
    shell->add_option("--budget", shell_budget, "search node cap");
    shell->add_option("--seed", shell_seed, "randomize the branch order");

    // systems
    auto* systems = app.add_subcommand("systems", "k-systems of a graph");
    int systems_k = 2;
    bool systems_all = false, systems_oracle = false;
    std::uint64_t systems_budget = 10'000'000;
    systems->add_option("--k", systems_k, "frame size k");
    systems->add_flag("--all", systems_all, "enumerate all k-systems (default)");
    systems->add_flag("--oracle", systems_oracle,
                      "unique compatible family of star-like systems");
    systems->add_option("--budget", systems_budget, "search node cap");

    // recon
    auto* recon = app.add_subcommand("recon", "reconstruct a complex from its graph");
    std::uint64_t recon_budget = 100'000'000;
    std::string report_path;
    recon->add_option("--budget", recon_budget, "search node cap");
    recon->add_option("--report", report_path, "write a provenance report to this file");

    // verify
    auto* verify = app.add_subcommand("verify", "round-trip check of a complex");
    std::string against = "-";
    verify->add_option("--against", against,
                       "complex to compare star sets with ('-' = self round trip)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2
    }

    if (*gen) {
        SimplicialComplex c;
        if (kind == "simplex") c = simplex_boundary(gen_d);
        else if (kind == "cross") c = cross_polytope_boundary(gen_d);
        else if (kind == "cycle") c = cycle_sphere(gen_n);
        else if (kind == "cyclic") c = cyclic_polytope_boundary(gen_n, gen_d);
        else if (kind == "stacked") c = stacked_sphere(gen_d, gen_steps, gen_seed);
        else fail("BadParameter", "unknown generator kind: " + kind);
        std::cout << dump_line(complex_to_json(c));
    } else if (*graphcmd) {
        FacetRidgeGraph g = facet_ridge_graph(complex_from_json(read_stdin_json()));
        if (graph_dot) std::cout << export_dot(g);
        else std::cout << dump_line(graph_to_json(g));
    } else if (*orient) {
        FacetRidgeGraph g = graph_from_json(read_stdin_json());
        OrientationMode mode = orient_all ? OrientationMode::All : OrientationMode::One;
        GoodOrientations good =
            find_good_orientations(g, mode, SearchBudget(orient_budget), orient_jobs);
        if (orient_dot) {
            std::cout << export_dot(g, &good.orientations.front());
        } else {
            json j;
            j["M"] = good.minimum;
            json arr = json::array();
            for (const AcyclicOrientation& o : good.orientations)
                arr.push_back(orientation_to_json(o));
            j["orientations"] = std::move(arr);
            std::cout << dump_line(j);
        }
    } else if (*shell) {
        SimplicialComplex c = complex_from_json(read_stdin_json());
        std::optional<ShellingOrder> s = find_shelling(c, SearchBudget(shell_budget), shell_seed);
        require(s.has_value(), "NotAShelling", "no shelling exists for this complex");
        std::cout << dump_line(shelling_to_json(*s));
    } else if (*systems) {
        FacetRidgeGraph g = graph_from_json(read_stdin_json());
        if (systems_oracle) {
            CompatibleFamily fam = unique_compatible_family(g, SearchBudget(systems_budget));
            json j;
            json levels = json::array();
            for (auto& [k, sys] : fam.levels) levels.push_back(ksystem_to_json(sys));
            j["levels"] = std::move(levels);
            std::cout << dump_line(j);
        } else {
            std::vector<KSystem> found = all_k_systems(g, systems_k, SearchBudget(systems_budget));
            json j;
            j["k"] = systems_k;
            json arr = json::array();
            for (const KSystem& sys : found) {
                json sets = json::array();
                for (VertexSet s : sys.sets) sets.push_back(s.to_vector());
                arr.push_back(std::move(sets));
            }
            j["systems"] = std::move(arr);
            std::cout << dump_line(j);
        }
    } else if (*recon) {
        FacetRidgeGraph g = graph_from_json(read_stdin_json());
        ReconstructReport rep;
        ReconstructedComplex rc = reconstruct(g, SearchBudget(recon_budget), &rep);
        if (!report_path.empty()) {
            GoodOrientations good = find_good_orientations(g, OrientationMode::One,
                                                           SearchBudget(recon_budget));
            std::ofstream out(report_path);
            require(out.good(), "BadParameter", "cannot open report file " + report_path);
            std::string digest = content_digest(dump_line(graph_to_json(g)));
            out << report_to_json(rep, good.orientations.front(), digest).dump(2) << "\n";
        }
        std::cout << dump_line(complex_to_json(rc.complex));
    } else if (*verify) {
        SimplicialComplex c = complex_from_json(read_stdin_json());
        bool ok = false;
        if (against == "-" || against.empty()) {
            ok = verify_roundtrip(c);
        } else {
            std::ifstream in(against);
            require(in.good(), "BadParameter", "cannot open " + against);
            json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                fail("BadParameter", std::string("invalid JSON in ") + against + ": " + e.what());
            }
            SimplicialComplex other = complex_from_json(j);
            auto stars = [](const SimplicialComplex& cc) {
                std::vector<VertexSet> st;
                cc.vertex_support().for_each(
                    [&](int v) { st.push_back(star(cc, Face::single(v))); });
                std::sort(st.begin(), st.end(), lex_less<VertexSetTag>);
                return st;
            };
            ok = c.d() == other.d() && stars(c) == stars(other);
        }
        json j;
        j["match"] = ok;
        std::cout << dump_line(j);
        return ok ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        json j;
        j["error"] = e.code();
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "InternalError";
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
