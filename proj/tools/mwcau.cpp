// Command-line driver: multiway evolution, causal graphs, reachability
// proofs, ZX simplification/equality, and the strategy benchmark. JSON is
// the source-of-truth format; DOT and GraphML are export-only.
//
// Exit codes: 0 success / proof found; 1 input error; 2 budget exhausted
// (partial output still written); 3 proof not found.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mwcau/bench.hpp"
#include "mwcau/causal.hpp"
#include "mwcau/export.hpp"
#include "mwcau/json_io.hpp"
#include "mwcau/log.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/prover.hpp"
#include "mwcau/zx.hpp"

namespace {

using namespace mwcau;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitNotFound = 3;

// ============================================================================
// File plumbing
// ============================================================================

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open file for writing");
    out << text;
}

std::vector<RewriteRule> load_rules(const std::string& path) {
    return rules_from_json(parse_json(read_file(path), path));
}

OpenHypergraph load_state(const std::string& path) {
    return state_from_json(parse_json(read_file(path), path));
}

// A ZX operand is a builtin name (cnot, id<N>) or a path to a diagram file.
ZXDiagram load_diagram(const std::string& spec) {
    if (spec == "cnot") return cnot();
    if (spec.size() > 2 && spec.rfind("id", 0) == 0 &&
        std::all_of(spec.begin() + 2, spec.end(), [](unsigned char c) { return std::isdigit(c); }))
        return identity_wires(std::stoul(spec.substr(2)));
    return zx_from_json(parse_json(read_file(spec), spec));
}

// ============================================================================
// Shared options
// ============================================================================

struct Common {
    std::string format = "json";
    std::string out;
    unsigned workers = 1;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"dot", "graphml", "json"}));
    cmd->add_option("--out", c.out, "Output path (default stdout)");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Random seed");
}

template <class Artifact, class ToJson, class ToDot, class ToGraphml>
std::string render(const Artifact& a, const std::string& format, ToJson to_json_fn, ToDot to_dot_fn,
                   ToGraphml to_graphml_fn) {
    if (format == "dot") return to_dot_fn(a);
    if (format == "graphml") return to_graphml_fn(a);
    return to_text(to_json_fn(a));
}

// ============================================================================
// Commands
// ============================================================================

struct EvolveArgs {
    Common common;
    std::string rules_path, init_path;
    int steps = 1;
    std::size_t max_states = 100000, max_events = 1000000;
};

int run_evolve(const EvolveArgs& a, bool causal_view) {
    std::vector<RewriteRule> rules = load_rules(a.rules_path);
    OpenHypergraph init = load_state(a.init_path);
    EvolveOptions opt;
    opt.max_states = a.max_states;
    opt.max_events = a.max_events;
    opt.workers = a.common.workers;
    log_info("evolving " + std::to_string(rules.size()) + " rule(s) for " +
             std::to_string(a.steps) + " step(s)");
    MultiwayGraph mw = evolve(rules, init, a.steps, opt);
    log_info("states: " + std::to_string(mw.states.size()) +
             ", events: " + std::to_string(mw.events.size()) +
             (mw.complete ? "" : " (budget exhausted)"));
    std::string text;
    if (causal_view) {
        CausalGraph cg = causal_graph(mw);
        text = render(cg, a.common.format, causal_to_json, causal_to_dot, causal_to_graphml);
    } else {
        text = render(mw, a.common.format, multiway_to_json, multiway_to_dot, multiway_to_graphml);
    }
    write_output(a.common.out, text);
    return mw.complete ? kExitOk : kExitBudget;
}

struct ProveArgs {
    Common common;
    std::string rules_path, from_path, to_path;
    std::string strategy = "causal";
    ProverConfig cfg;
};

// The proof is written in JSON and as a DOT rendering; --out names the
// basename (a known extension is stripped), --format adds GraphML on top.
int run_prove(const ProveArgs& a) {
    std::vector<RewriteRule> rules = load_rules(a.rules_path);
    OpenHypergraph from = load_state(a.from_path);
    OpenHypergraph to = load_state(a.to_path);
    ProverConfig cfg = a.cfg;
    cfg.strategy = a.strategy == "bfs" ? SearchStrategy::PlainBFS : SearchStrategy::CausalBestFirst;
    cfg.workers = a.common.workers;
    ProveResult r = prove_reachability(rules, from, to, cfg);
    log_info("prove: " + std::string(r.found ? "found" : "not found") + ", expansions " +
             std::to_string(r.stats.expansions) + ", states " +
             std::to_string(r.stats.states_seen));
    if (a.common.out.empty()) {
        write_output("", render(r.proof, a.common.format, proof_to_json, proof_to_dot,
                                proof_to_graphml));
    } else {
        std::string base = a.common.out;
        for (const char* ext : {".json", ".dot", ".graphml"}) {
            std::string e = ext;
            if (base.size() > e.size() && base.compare(base.size() - e.size(), e.size(), e) == 0) {
                base.resize(base.size() - e.size());
                break;
            }
        }
        write_output(base + ".json", to_text(proof_to_json(r.proof)));
        write_output(base + ".dot", proof_to_dot(r.proof));
        if (a.common.format == "graphml") write_output(base + ".graphml", proof_to_graphml(r.proof));
    }
    if (r.found) return kExitOk;
    return r.stats.budget_exhausted ? kExitBudget : kExitNotFound;
}

// The equality bridge only runs when the two descent normal forms differ;
// keep its default budget small so inequivalent inputs fail fast instead of
// crawling through the inverse-rule search space.
ProverConfig zx_default_config() {
    ProverConfig c;
    c.max_depth = 6;
    c.max_expansions = 2000;
    c.max_states = 20000;
    c.probe_max_states = 60;
    return c;
}

struct ZxArgs {
    Common common;
    std::string left, right;
    std::string proof_out;
    std::string strategy = "bfs";
    int max_arity = 4;
    ProverConfig cfg = zx_default_config();
};

int run_zx_simplify(const ZxArgs& a) {
    ZXDiagram d = load_diagram(a.left);
    SimplifyResult r = simplify(d, standard_rules(a.max_arity));
    log_info("simplify: " + std::to_string(d.spiders.size()) + " -> " +
             std::to_string(r.diagram.spiders.size()) + " spiders in " +
             std::to_string(r.path.size()) + " step(s)");
    write_output(a.common.out,
                 render(r.diagram, a.common.format, zx_to_json, zx_to_dot, zx_to_graphml));
    if (!a.proof_out.empty()) write_output(a.proof_out, to_text(proof_to_json(r.proof)));
    return r.complete ? kExitOk : kExitBudget;
}

int run_zx_prove(const ZxArgs& a, bool unitary) {
    ZXRuleSet rs = standard_rules(a.max_arity);
    ProverConfig cfg = a.cfg;
    cfg.strategy =
        a.strategy == "causal" ? SearchStrategy::CausalBestFirst : SearchStrategy::PlainBFS;
    cfg.workers = a.common.workers;
    EqualityResult r = unitary ? prove_unitary(load_diagram(a.left), rs, cfg)
                               : prove_equal(load_diagram(a.left), load_diagram(a.right), rs, cfg);
    log_info("zx prove: " + std::string(r.found ? "found" : "not found") + ", lemmas " +
             std::to_string(r.left_path.size() + r.right_path.size()));
    write_output(a.common.out,
                 render(r.proof, a.common.format, proof_to_json, proof_to_dot, proof_to_graphml));
    if (r.found) return kExitOk;
    return r.stats.budget_exhausted ? kExitBudget : kExitNotFound;
}

// The decoy suite steps its chains up to twelve times; leave depth headroom.
ProverConfig bench_default_config() {
    ProverConfig c;
    c.max_depth = 16;
    return c;
}

struct BenchArgs {
    Common common;
    std::size_t count = 5;
    bool no_decoys = false;
    ProverConfig cfg = bench_default_config();
};

void print_table(const CompareReport& report) {
    std::fprintf(stderr, "%-12s %12s %12s %8s %8s %10s %10s\n", "instance", "causal_exp", "bfs_exp",
                 "c_len", "b_len", "c_sec", "b_sec");
    for (const CompareRecord& rec : report.records)
        std::fprintf(stderr, "%-12s %12zu %12zu %8zu %8zu %10.4f %10.4f\n", rec.instance.c_str(),
                     rec.causal.expansions, rec.bfs.expansions, rec.causal.proof_length,
                     rec.bfs.proof_length, rec.causal.wall_seconds, rec.bfs.wall_seconds);
    std::fprintf(stderr,
                 "causal not worse on %zu/%zu, strictly fewer on %zu; mean expansion ratio "
                 "(bfs/causal) %.3f, mean length ratio %.3f\n",
                 report.causal_not_worse, report.records.size(), report.causal_strictly_fewer,
                 report.mean_expansion_ratio, report.mean_length_ratio);
}

int run_bench(const BenchArgs& a) {
    std::vector<ProveInstance> suite;
    if (!a.no_decoys) suite = decoy_suite();
    if (a.count > 0) {
        std::vector<ProveInstance> extra = random_suite(a.common.seed, a.count);
        suite.insert(suite.end(), extra.begin(), extra.end());
    }
    ProverConfig cfg = a.cfg;
    cfg.workers = a.common.workers;
    CompareReport report = compare_strategies(decoy_rules(), suite, cfg, cfg);
    Json j = report_to_json(report);
    j["seed"] = a.common.seed;
    j["random_count"] = a.count;
    print_table(report);
    write_output(a.common.out, to_text(j));
    return kExitOk;
}

}  // namespace

// ============================================================================
// Entry point
// ============================================================================

int main(int argc, char** argv) {
    CLI::App app{"Hypergraph rewriting: multiway evolution, causal structure, reachability "
                 "proofs, and ZX-diagram simplification"};
    app.require_subcommand(1);

    EvolveArgs ev;
    auto add_evolve_opts = [&](CLI::App* cmd) {
        cmd->add_option("--rules", ev.rules_path, "Rule file (JSON)")->required();
        cmd->add_option("--init", ev.init_path, "Initial state (JSON)")->required();
        cmd->add_option("--steps", ev.steps, "Evolution steps")->check(CLI::NonNegativeNumber);
        cmd->add_option("--max-states", ev.max_states, "State budget");
        cmd->add_option("--max-events", ev.max_events, "Event budget");
        add_common(cmd, ev.common);
    };
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "Expand a multiway evolution graph");
    add_evolve_opts(evolve_cmd);
    CLI::App* causal_cmd =
        app.add_subcommand("causal", "Evolve and export the causal graph of events");
    add_evolve_opts(causal_cmd);

    ProveArgs pv;
    CLI::App* prove_cmd = app.add_subcommand("prove", "Prove reachability between two states");
    prove_cmd->add_option("--rules", pv.rules_path, "Rule file (JSON)")->required();
    prove_cmd->add_option("--from", pv.from_path, "Source state (JSON)")->required();
    prove_cmd->add_option("--to", pv.to_path, "Goal state (JSON)")->required();
    prove_cmd->add_option("--strategy", pv.strategy, "Search strategy")
        ->check(CLI::IsMember({"causal", "bfs"}));
    prove_cmd->add_option("--max-depth", pv.cfg.max_depth, "Depth bound");
    prove_cmd->add_option("--max-states", pv.cfg.max_states, "State budget");
    prove_cmd->add_option("--max-expansions", pv.cfg.max_expansions, "Expansion budget");
    prove_cmd->add_flag("--lemmas", pv.cfg.lemma_generation, "Generate critical-pair lemmas");
    prove_cmd->add_flag("--inverse-rules", pv.cfg.enable_inverse_rules,
                        "Search with invertible rules in both directions");
    add_common(prove_cmd, pv.common);

    ZxArgs zx;
    CLI::App* zx_cmd = app.add_subcommand("zx", "ZX-diagram tooling");
    zx_cmd->require_subcommand(1);
    auto add_zx_opts = [&](CLI::App* cmd) {
        cmd->add_option("--max-arity", zx.max_arity, "Rule schema instantiation bound")
            ->check(CLI::Range(2, 8));
        cmd->add_option("--max-depth", zx.cfg.max_depth, "Bridge search depth bound");
        cmd->add_option("--max-expansions", zx.cfg.max_expansions, "Bridge expansion budget");
        cmd->add_option("--max-states", zx.cfg.max_states, "Bridge state budget");
        cmd->add_option("--strategy", zx.strategy, "Bridge search strategy")
            ->check(CLI::IsMember({"causal", "bfs"}));
        add_common(cmd, zx.common);
    };
    CLI::App* zx_simplify = zx_cmd->add_subcommand("simplify", "Greedy diagram simplification");
    zx_simplify->add_option("diagram", zx.left, "Diagram file or builtin (cnot, id<N>)")
        ->required();
    zx_simplify->add_option("--proof-out", zx.proof_out, "Also write the reduction proof (JSON)");
    add_zx_opts(zx_simplify);
    CLI::App* zx_equal = zx_cmd->add_subcommand("prove-equal", "Prove two diagrams equal");
    zx_equal->add_option("left", zx.left, "Diagram file or builtin")->required();
    zx_equal->add_option("right", zx.right, "Diagram file or builtin")->required();
    add_zx_opts(zx_equal);
    CLI::App* zx_unitary = zx_cmd->add_subcommand("prove-unitary", "Prove a gate unitary");
    zx_unitary->add_option("gate", zx.left, "Diagram file or builtin")->required();
    add_zx_opts(zx_unitary);

    BenchArgs bn;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Compare causal best-first against plain BFS");
    bench_cmd->add_option("--count", bn.count, "Seeded random instances to add");
    bench_cmd->add_flag("--no-decoys", bn.no_decoys, "Skip the designed decoy suite");
    bench_cmd->add_option("--max-depth", bn.cfg.max_depth, "Depth bound per instance");
    add_common(bench_cmd, bn.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (*evolve_cmd) return run_evolve(ev, false);
        if (*causal_cmd) return run_evolve(ev, true);
        if (*prove_cmd) return run_prove(pv);
        if (*zx_simplify) return run_zx_simplify(zx);
        if (*zx_equal) return run_zx_prove(zx, false);
        if (*zx_unitary) return run_zx_prove(zx, true);
        if (*bench_cmd) return run_bench(bn);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
