#pragma once

#include <random>
#include <string>
#include <vector>

#include "mwcau/hypergraph.hpp"
#include "mwcau/match.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/prover.hpp"
#include "mwcau/rewrite.hpp"

namespace mwcau {

// Benchmark rule pair: C extends a chain and drops a ternary marker edge,
// D converts a marker into an inert 4-ary edge. D-events never feed later
// events, so causal scoring deprioritizes the decoy branch that plain
// breadth-first search has to wade through.
inline std::vector<RewriteRule> decoy_rules() {
    RewriteRule c;
    c.name = "C";
    c.lhs.push_back(PatternEdge{{vterm(c, "x"), vterm(c, "y")}});
    c.rhs.push_back(PatternEdge{{vterm(c, "y"), vterm(c, "z")}});
    c.rhs.push_back(PatternEdge{{vterm(c, "x"), vterm(c, "y"), vterm(c, "x")}});

    RewriteRule d;
    d.name = "D";
    d.lhs.push_back(PatternEdge{{vterm(d, "a"), vterm(d, "b"), vterm(d, "c")}});
    d.rhs.push_back(PatternEdge{{vterm(d, "a"), vterm(d, "a"), vterm(d, "a"), vterm(d, "a")}});
    return {c, d};
}

inline OpenHypergraph decoy_init() {
    Hypergraph g;
    g.add_edge({0, 1});
    return as_open(g);
}

// The state after `level` chain extensions and no decoy conversions;
// reachable at depth exactly `level`.
inline OpenHypergraph decoy_goal(int level) {
    std::vector<RewriteRule> rules = decoy_rules();
    OpenHypergraph cur = decoy_init();
    for (int i = 0; i < level; ++i) {
        // the pure chain state always has exactly one binary edge, so C has
        // exactly one match
        std::vector<Match> ms = find_matches(rules[0], cur);
        cur = apply_match(rules[0], cur, ms.at(0)).result;
    }
    return cur;
}

inline std::vector<ProveInstance> decoy_suite(int min_level = 3, int max_level = 12) {
    std::vector<ProveInstance> out;
    for (int level = min_level; level <= max_level; ++level)
        out.push_back({"decoy-" + std::to_string(level), decoy_init(), decoy_goal(level)});
    return out;
}

// Seeded reachability instances over the decoy rules: random small hosts with
// goals drawn from their own short evolutions, so every instance is solvable
// within depth 2 by construction.
inline std::vector<ProveInstance> random_suite(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<RewriteRule> rules = decoy_rules();
    std::vector<ProveInstance> out;
    for (std::size_t k = 0; k < count; ++k) {
        Hypergraph h;
        VertexId verts = 2 + static_cast<VertexId>(rng() % 2);
        std::size_t edges = 1 + static_cast<std::size_t>(rng() % 2);
        for (std::size_t e = 0; e < edges; ++e)
            h.add_edge({static_cast<VertexId>(rng() % verts), static_cast<VertexId>(rng() % verts)});

        MultiwayGraph mw = evolve(rules, as_open(h), 2);
        int deepest = 0;
        for (const auto& [key, gen] : mw.generation) deepest = std::max(deepest, gen);
        CanonicalKey goal;
        for (const auto& [key, gen] : mw.generation)
            if (gen == deepest && (goal.empty() || key < goal)) goal = key;
        out.push_back({"random-" + std::to_string(k), as_open(h), mw.states.at(goal)});
    }
    return out;
}

}  // namespace mwcau
