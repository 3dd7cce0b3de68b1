// posiplant command-line front end: graph generation, instance planting,
// verification, solving, and metric reporting.
//
// Exit codes: 0 success, 1 verification/generation failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "posiplant/io.hpp"
#include "posiplant/metrics.hpp"
#include "posiplant/planting.hpp"
#include "posiplant/rng.hpp"
#include "posiplant/samplers.hpp"
#include "posiplant/topology.hpp"

namespace fs = std::filesystem;
using namespace posiplant;

namespace {

unsigned defaultThreads() {
    if (const char* env = std::getenv("POSIPLANT_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != nullptr && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

EdgeSet makeGraph(const std::string& kind, int size, int tile, double density,
                  std::uint64_t seed) {
    if (kind == "chimera") return chimera(size, tile);
    if (kind == "pegasus") return pegasus(size);
    if (kind == "zephyr") return zephyr(size, tile);
    if (kind == "complete") return complete(size);
    if (kind == "random") return randomGraph(size, density, seed);
    throw ConfigError("unknown graph kind: " + kind);
}

void writeEdgeFile(const EdgeSet& g, const fs::path& out) {
    std::ostringstream body;
    writeEdgeList(g, body);
    writeFileAtomic(out, body.str());
}

// ---------------------------------------------------------------------------
// graph

struct GraphArgs {
    std::string kind;
    int size = 0;
    int tile = 4;
    double density = 0.3;
    std::uint64_t seed = 0;
    std::size_t defect_nodes = 0;
    std::size_t defect_edges = 0;
    std::uint64_t defect_seed = 0;
    bool defect_seed_set = false;
    std::string out;
};

int cmdGraph(const GraphArgs& a) {
    EdgeSet g = makeGraph(a.kind, a.size, a.tile, a.density, a.seed);
    if (a.defect_nodes > 0 || a.defect_edges > 0) {
        const std::uint64_t ds = a.defect_seed_set ? a.defect_seed : a.seed;
        g = applyDefects(g, a.defect_nodes, a.defect_edges, ds);
    }
    const fs::path out = a.out.empty()
                             ? fs::path(a.kind + std::to_string(a.size) + ".edges")
                             : fs::path(a.out);
    writeEdgeFile(g, out);
    std::cout << "nodes=" << g.activeNodes() << " edges=" << g.edges.size() << "\n";
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// plant

struct PlantArgs {
    int n = 0;
    std::string graph_path;
    std::string kind;
    int size = 0;
    int tile = 4;
    double density = 0.3;
    std::uint64_t graph_seed = 0;
    std::string planted = "random";
    std::vector<double> coeffs = {1.0, 2.0};
    std::size_t batch = 0;
    std::size_t max_clauses = 0;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    unsigned threads = 0;
    std::string out;
    std::string out_dir;
};

// Edge files may declare nodes that no surviving edge touches (defects, hand
// edits). Planting requires full coverage, so relabel the covered nodes
// densely and shrink the instance to them.
void compactToCovered(EdgeSet& g) {
    std::vector<char> covered(g.num_vars, 0);
    for (const auto& e : g.edges) covered[e.first] = covered[e.second] = 1;
    Var alive = 0;
    for (Var v = 0; v < g.num_vars; ++v) alive += covered[v];
    if (alive == g.num_vars) return;
    std::vector<Var> remap(g.num_vars, 0);
    Var next = 0;
    for (Var v = 0; v < g.num_vars; ++v)
        if (covered[v]) remap[v] = next++;
    for (auto& e : g.edges) {
        e.first = remap[e.first];
        e.second = remap[e.second];
    }
    std::cerr << "note: " << (g.num_vars - alive) << " of " << g.num_vars
              << " declared nodes have no incident edge; planting over the " << alive
              << " covered nodes after dense relabeling\n";
    g.num_vars = alive;
    g.inactive.clear();
    g.normalize();
}

struct GraphSource {
    std::optional<EdgeSet> edge_set; // absent = complete connectivity via -n
    Var num_vars = 0;
};

GraphSource resolvePlantGraph(const PlantArgs& a) {
    const int sources =
        (a.n > 0 ? 1 : 0) + (a.graph_path.empty() ? 0 : 1) + (a.kind.empty() ? 0 : 1);
    if (sources != 1)
        throw ConfigError("exactly one of -n, --graph, --kind must be given");
    if (a.n > 0) return {std::nullopt, static_cast<Var>(a.n)};

    EdgeSet g;
    if (!a.graph_path.empty()) {
        std::istringstream in(readFile(a.graph_path));
        g = readEdgeList(in);
        g.label = fs::path(a.graph_path).filename().string();
        compactToCovered(g);
    } else {
        if (a.size <= 0) throw ConfigError("--kind requires --size");
        g = makeGraph(a.kind, a.size, a.tile, a.density, a.graph_seed);
    }
    const Var n = g.num_vars;
    return {std::move(g), n};
}

Bitstring randomPlanted(Var n, std::uint64_t instance_seed) {
    Rng rng(Rng::derive(instance_seed, 1));
    Bitstring b(n);
    for (Var i = 0; i < n; ++i) b.set(i, rng.below(2) == 1);
    return b;
}

struct InstanceResult {
    std::string line;
    int error_code = 0; // 0 ok, 1 generation failure, 2 config error
    std::string error;
};

InstanceResult plantOne(const PlantArgs& a, const GraphSource& src, std::size_t index,
                        const fs::path& out_path) {
    InstanceResult r;
    try {
        PlantingConfig cfg;
        cfg.num_vars = src.num_vars;
        cfg.edge_set = src.edge_set;
        cfg.coefficient_pool = a.coeffs;
        cfg.seed = a.count == 1 ? a.seed : Rng::derive(a.seed, index);
        cfg.batch = a.batch;
        cfg.max_clauses = a.max_clauses;
        cfg.planted = a.planted == "random" ? randomPlanted(src.num_vars, cfg.seed)
                                            : Bitstring::fromString(a.planted);
        const PlantedInstance inst = plant(cfg);
        writeFileAtomic(out_path, instanceToJson(toInstanceData(inst)));
        std::ostringstream line;
        line << "wrote " << out_path.string() << " n=" << inst.qubo.numVars()
             << " clauses=" << inst.clause_count << " seed=" << inst.seed;
        r.line = line.str();
    } catch (const SparseGraphError& e) {
        r.error_code = 1;
        r.error = "instance " + std::to_string(index) + ": " + e.what();
    } catch (const std::exception& e) {
        r.error_code = 2;
        r.error = "instance " + std::to_string(index) + ": " + e.what();
    }
    return r;
}

int cmdPlant(const PlantArgs& a) {
    if (a.count == 0) throw ConfigError("--count must be at least 1");
    if (a.count > 1 && !a.out.empty())
        throw ConfigError("-o names a single file; use --out-dir with --count");
    const GraphSource src = resolvePlantGraph(a);

    std::vector<fs::path> paths(a.count);
    if (a.count == 1 && a.out_dir.empty()) {
        paths[0] = a.out.empty() ? fs::path("instance.json") : fs::path(a.out);
        if (paths[0].has_parent_path()) fs::create_directories(paths[0].parent_path());
    } else {
        const fs::path dir = a.out_dir.empty() ? fs::path(".") : fs::path(a.out_dir);
        fs::create_directories(dir);
        const std::size_t width =
            std::max<std::size_t>(4, std::to_string(a.count - 1).size());
        for (std::size_t i = 0; i < a.count; ++i) {
            std::string num = std::to_string(i);
            num.insert(0, width - num.size(), '0');
            paths[i] = dir / ("instance_" + num + ".json");
        }
        if (a.count == 1 && !a.out.empty()) paths[0] = dir / a.out;
    }

    unsigned threads = a.threads != 0 ? a.threads : defaultThreads();
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, a.count));
    std::vector<InstanceResult> results(a.count);
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= a.count) break;
            results[i] = plantOne(a, src, i, paths[i]);
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    bool any_config = false, any_generation = false;
    for (const auto& r : results) {
        if (r.error_code == 0) {
            std::cout << r.line << "\n";
        } else {
            std::cerr << "error: " << r.error << "\n";
            (r.error_code == 2 ? any_config : any_generation) = true;
        }
    }
    if (any_config) return 2;
    return any_generation ? 1 : 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string path;
    int cap = 24;
};

int cmdVerify(const VerifyArgs& a) {
    const InstanceData d = instanceFromJson(readFile(a.path));
    bool ok = true;
    auto check = [&ok](const std::string& name, bool pass, const std::string& detail) {
        std::cout << (pass ? "  pass  " : "  FAIL  ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        ok = ok && pass;
    };

    std::cout << a.path << ": n=" << d.qubo.numVars() << " clauses=" << d.clause_count
              << " seed=" << d.seed << " edge_set=" << d.edge_set_label << "\n";
    check("planted length", d.planted.size() == d.qubo.numVars(),
          std::to_string(d.planted.size()) + " bits for n=" +
              std::to_string(d.qubo.numVars()));

    const double e = eval(d.qubo, d.planted);
    check("planted energy", e == d.planted_energy,
          "eval=" + formatNumber(e) + " recorded=" + formatNumber(d.planted_energy));

    // The generator's offset bookkeeping guarantees the underlying posiform
    // (strictly positive terms, zero offset) vanishes at the planted point,
    // which is exactly eval == 0 including the recorded offset.
    check("posiform-zero", e == 0.0,
          "polynomial=" + formatNumber(e - d.qubo.offset()) +
              " offset=" + formatNumber(d.qubo.offset()));

    if (static_cast<int>(d.qubo.numVars()) <= a.cap) {
        const BruteForceResult b = bruteForce(d.qubo, a.cap);
        const bool unique = b.minimizers.size() == 1 && b.minimizers[0] == d.planted &&
                            b.min_energy == d.planted_energy;
        check("uniqueness", unique,
              "brute force: " + std::to_string(b.minimizers.size()) +
                  " minimizer(s), min=" + formatNumber(b.min_energy));
    } else {
        std::cout << "  pass  uniqueness (certified-by-construction, n > "
                  << a.cap << ")\n";
    }

    std::cout << (ok ? "VERIFIED" : "VERIFICATION FAILED") << "\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string instance_path;
    std::string sampler;
    int reads = 800;
    int sweeps = 1000;
    double beta_min = 0.0;
    double beta_max = 0.0;
    bool beta_min_set = false;
    bool beta_max_set = false;
    std::uint64_t seed = 0;
    int cap = 24;
    std::string out;
    std::string csv;
};

int cmdSolve(const SolveArgs& a) {
    const InstanceData d = instanceFromJson(readFile(a.instance_path));
    SamplerParams params;
    params.num_reads = a.reads;
    params.sweeps = a.sweeps;
    params.seed = a.seed;
    if (a.beta_min_set) params.beta_min = a.beta_min;
    if (a.beta_max_set) params.beta_max = a.beta_max;

    SampleSet s;
    if (a.sampler == "sa") {
        s = simulatedAnnealing(d.qubo, params);
    } else if (a.sampler == "greedy") {
        s = steepestDescent(d.qubo, params);
    } else {
        s = exhaustive(d.qubo, a.cap);
    }

    const fs::path in_path(a.instance_path);
    const fs::path out =
        a.out.empty()
            ? in_path.parent_path() / (in_path.stem().string() + "." + a.sampler + ".json")
            : fs::path(a.out);
    const std::string instance_id = in_path.filename().string();
    writeFileAtomic(out, sampleSetToJson(s, instance_id, d.planted_energy,
                                         d.qubo.numVars()));
    if (!a.csv.empty()) {
        std::ostringstream c;
        writeSampleCsv(s, c);
        writeFileAtomic(a.csv, c.str());
    }

    const double g = gsp(s, d.planted_energy);
    std::cout << "sampler=" << s.sampler << " reads=" << s.num_reads
              << " best_energy=" << formatNumber(s.bestEnergy())
              << " gsp=" << formatNumber(g)
              << " wall_time_s=" << formatNumber(s.wall_time_s) << "\n";
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
    std::vector<std::string> paths;
    std::string out = "report.csv";
};

int cmdEval(const EvalArgs& a) {
    std::vector<RunReportRow> rows;
    rows.reserve(a.paths.size());
    for (const auto& path : a.paths) {
        const SampleSetFile f = sampleSetFromJson(readFile(path));
        if (!f.planted_energy.has_value())
            throw ConfigError(path +
                              ": sample set lacks planted_energy; cannot compute GSP");
        RunReportRow r;
        r.instance = f.instance_id;
        r.sampler = f.samples.sampler;
        r.num_reads = f.samples.num_reads;
        r.p = gsp(f.samples, *f.planted_energy);
        r.total_time_s = f.samples.wall_time_s;
        r.tts_99 = tts99(r.total_time_s, r.num_reads, r.p);
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const RunReportRow& x, const RunReportRow& y) {
        return std::tie(x.instance, x.sampler) < std::tie(y.instance, y.sampler);
    });
    std::ostringstream csv;
    writeRunReport(rows, csv);
    writeFileAtomic(a.out, csv.str());
    std::cout << "wrote " << a.out << " (" << rows.size() << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"posiplant: QUBO instances with a provably unique planted optimum"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"chimera", "pegasus", "zephyr", "complete",
                                            "random"};

    GraphArgs ga;
    CLI::App* graph_cmd =
        app.add_subcommand("graph", "generate a connectivity graph as an edge list");
    graph_cmd->add_option("kind", ga.kind, "graph family")
        ->required()
        ->check(CLI::IsMember(kinds));
    graph_cmd->add_option("size", ga.size, "family size parameter (m or n)")->required();
    graph_cmd->add_option("--tile", ga.tile, "cell size t for chimera/zephyr");
    graph_cmd->add_option("--density", ga.density, "edge probability for random graphs");
    graph_cmd->add_option("--seed", ga.seed, "seed for random graphs");
    graph_cmd->add_option("--defect-nodes", ga.defect_nodes, "nodes to remove at random");
    graph_cmd->add_option("--defect-edges", ga.defect_edges,
                          "extra edges to remove at random");
    CLI::Option* dseed = graph_cmd->add_option("--defect-seed", ga.defect_seed,
                                               "seed for defect placement");
    graph_cmd->add_option("-o,--out", ga.out, "output path (default <kind><size>.edges)");

    PlantArgs pa;
    CLI::App* plant_cmd =
        app.add_subcommand("plant", "generate planted-optimum QUBO instances");
    plant_cmd->add_option("-n,--num-vars", pa.n,
                          "number of variables with unrestricted connectivity");
    plant_cmd->add_option("--graph", pa.graph_path, "edge-list file to plant over");
    plant_cmd->add_option("--kind", pa.kind, "generate the graph in process")
        ->check(CLI::IsMember(kinds));
    plant_cmd->add_option("--size", pa.size, "size parameter for --kind");
    plant_cmd->add_option("--tile", pa.tile, "cell size t for chimera/zephyr");
    plant_cmd->add_option("--density", pa.density, "edge probability for --kind random");
    plant_cmd->add_option("--graph-seed", pa.graph_seed, "seed for --kind random");
    plant_cmd->add_option("--planted", pa.planted,
                          "planted bitstring, or 'random' (per-instance seed)");
    plant_cmd->add_option("--coeffs", pa.coeffs, "posiform coefficient pool")
        ->delimiter(',');
    plant_cmd->add_option("--batch", pa.batch,
                          "clauses between uniqueness checks (default n)");
    plant_cmd->add_option("--max-clauses", pa.max_clauses,
                          "give up after this many clauses (default 100n)");
    plant_cmd->add_option("--seed", pa.seed, "master seed");
    plant_cmd->add_option("--count", pa.count, "number of instances (derived seeds)");
    plant_cmd->add_option("--threads", pa.threads,
                          "worker threads (default POSIPLANT_THREADS or all cores)");
    plant_cmd->add_option("-o,--out", pa.out, "output file for a single instance");
    plant_cmd->add_option("--out-dir", pa.out_dir, "output directory for --count");

    VerifyArgs va;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check an instance file's optimality certificate");
    verify_cmd->add_option("instance", va.path, "instance JSON file")->required();
    verify_cmd->add_option("--exhaustive-cap", va.cap,
                           "brute-force uniqueness up to this many variables");

    SolveArgs sa;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run a sampler on an instance");
    solve_cmd->add_option("instance", sa.instance_path, "instance JSON file")->required();
    solve_cmd->add_option("sampler", sa.sampler, "sa | greedy | exhaustive")
        ->required()
        ->check(CLI::IsMember({"sa", "greedy", "exhaustive"}));
    solve_cmd->add_option("--reads", sa.reads, "number of reads");
    solve_cmd->add_option("--sweeps", sa.sweeps, "annealing sweeps per read");
    CLI::Option* bmin = solve_cmd->add_option("--beta-min", sa.beta_min,
                                              "override hot inverse temperature");
    CLI::Option* bmax = solve_cmd->add_option("--beta-max", sa.beta_max,
                                              "override cold inverse temperature");
    solve_cmd->add_option("--seed", sa.seed, "sampler seed");
    solve_cmd->add_option("--cap", sa.cap, "variable cap for exhaustive");
    solve_cmd->add_option("-o,--out", sa.out,
                          "sample-set JSON path (default <instance>.<sampler>.json)");
    solve_cmd->add_option("--csv", sa.csv, "also write the sample set as CSV");

    EvalArgs ea;
    CLI::App* eval_cmd =
        app.add_subcommand("eval", "aggregate sample sets into a GSP/TTS report");
    eval_cmd->add_option("samplesets", ea.paths, "sample-set JSON files")->required();
    eval_cmd->add_option("-o,--out", ea.out, "report CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    ga.defect_seed_set = dseed->count() > 0;
    sa.beta_min_set = bmin->count() > 0;
    sa.beta_max_set = bmax->count() > 0;

    try {
        if (graph_cmd->parsed()) return cmdGraph(ga);
        if (plant_cmd->parsed()) return cmdPlant(pa);
        if (verify_cmd->parsed()) return cmdVerify(va);
        if (solve_cmd->parsed()) return cmdSolve(sa);
        if (eval_cmd->parsed()) return cmdEval(ea);
    } catch (const SparseGraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
