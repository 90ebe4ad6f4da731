#pragma once

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mwcau/canonical.hpp"
#include "mwcau/causal.hpp"
#include "mwcau/compose.hpp"
#include "mwcau/hypergraph.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/rules.hpp"

namespace mwcau {

// ============================================================================
// Proof graphs
// ============================================================================

enum class ProofNodeKind { Axiom, CriticalPairLemma, SubstitutionLemma, Hypothesis };
enum class ProofEdgeKind { Substitution, DerivedInference };

inline const char* to_string(ProofNodeKind k) {
    switch (k) {
        case ProofNodeKind::Axiom: return "axiom";
        case ProofNodeKind::CriticalPairLemma: return "critical_pair_lemma";
        case ProofNodeKind::SubstitutionLemma: return "substitution_lemma";
        case ProofNodeKind::Hypothesis: return "hypothesis";
    }
    return "?";
}

inline const char* to_string(ProofEdgeKind k) {
    return k == ProofEdgeKind::Substitution ? "substitution" : "derived_inference";
}

struct ProofNode {
    std::size_t id = 0;
    ProofNodeKind kind = ProofNodeKind::Axiom;
    std::string statement;
    std::string rule_name;  // empty for Hypothesis nodes

    bool operator==(const ProofNode&) const = default;
};

struct ProofEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    ProofEdgeKind kind = ProofEdgeKind::Substitution;

    auto operator<=>(const ProofEdge&) const = default;
};

struct ProofGraph {
    std::vector<ProofNode> nodes;
    std::vector<ProofEdge> edges;

    bool operator==(const ProofGraph&) const = default;
};

// Structural well-formedness: ids are positional, the graph is a DAG,
// hypotheses are sinks, every substitution lemma is justified by exactly one
// rule node, and (in nontrivial proofs) every hypothesis traces back to an
// axiom. Throws Error with a reason on the first violation.
inline void validate_proof_graph(const ProofGraph& g) {
    const std::size_t n = g.nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        if (g.nodes[i].id != i) throw Error("proof graph: node ids must be positional");
    std::vector<std::vector<std::size_t>> in(n), out(n);
    for (const auto& e : g.edges) {
        if (e.from >= n || e.to >= n) throw Error("proof graph: edge endpoint out of range");
        if (e.from == e.to) throw Error("proof graph: self-loop");
        out[e.from].push_back(e.to);
        in[e.to].push_back(e.from);
    }

    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i) indeg[i] = in[i].size();
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push_back(i);
    std::size_t done = 0;
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop_front();
        ++done;
        for (std::size_t w : out[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    if (done != n) throw Error("proof graph: cycle detected");

    for (const auto& node : g.nodes) {
        if (node.kind == ProofNodeKind::Hypothesis && !out[node.id].empty())
            throw Error("proof graph: hypothesis must be a sink");
        if (node.kind == ProofNodeKind::SubstitutionLemma) {
            std::size_t justifications = 0;
            for (const auto& e : g.edges)
                if (e.to == node.id && e.kind == ProofEdgeKind::Substitution) {
                    ProofNodeKind src = g.nodes[e.from].kind;
                    if (src != ProofNodeKind::Axiom && src != ProofNodeKind::CriticalPairLemma)
                        throw Error("proof graph: substitution edge from a non-rule node");
                    ++justifications;
                }
            if (justifications != 1)
                throw Error("proof graph: substitution lemma needs exactly one justifying rule");
        }
    }

    if (n > 1) {
        for (const auto& node : g.nodes) {
            if (node.kind != ProofNodeKind::Hypothesis) continue;
            // walk in-edges backwards looking for an axiom
            std::set<std::size_t> seen{node.id};
            std::deque<std::size_t> work{node.id};
            bool grounded = false;
            while (!work.empty() && !grounded) {
                std::size_t v = work.front();
                work.pop_front();
                if (g.nodes[v].kind == ProofNodeKind::Axiom) grounded = true;
                for (std::size_t w : in[v])
                    if (seen.insert(w).second) work.push_back(w);
            }
            if (!grounded) throw Error("proof graph: hypothesis not reachable from any axiom");
        }
    }
}

// ============================================================================
// Prover configuration and results
// ============================================================================

enum class SearchStrategy { CausalBestFirst, PlainBFS };

struct ProverConfig {
    SearchStrategy strategy = SearchStrategy::CausalBestFirst;
    int max_depth = 8;
    std::size_t max_expansions = 100000;
    std::size_t max_states = 100000;
    bool lemma_generation = false;
    std::size_t max_lemmas = 8;
    std::size_t max_overlap_edges = 1;
    // Causal scores come from a bounded look-ahead evolution per expanded
    // state; the full future causal graph is not computable mid-search.
    int probe_depth = 2;
    std::size_t probe_max_states = 500;
    bool enable_inverse_rules = false;
    unsigned workers = 1;
};

struct ProverStats {
    std::size_t expansions = 0;   // states actually expanded before the goal appeared
    std::size_t states_seen = 0;  // distinct canonical states discovered
    bool budget_exhausted = false;
};

struct ProveResult {
    bool found = false;
    ProofGraph proof;
    std::vector<Event> path;                  // rewrite path, one event per step
    std::vector<OpenHypergraph> path_states;  // canonical reps; path.size()+1 entries when found
    std::vector<RewriteRule> working_rules;   // inputs plus generated lemmas and inverses
    ProverStats stats;
};

// ============================================================================
// Critical pairs, ranking, inverses
// ============================================================================

struct CriticalPair {
    RewriteRule rule;
    std::string parent1;
    std::string parent2;
    Overlap overlap;
};

// Every concurrent composition of an ordered rule pair over a unifiable
// rhs/lhs overlap of bounded size, deduplicated up to rule isomorphism.
// Emitted rules get unique names "<p1>*<p2>#<k>".
inline std::vector<CriticalPair> enumerate_critical_pairs_detailed(
    const std::vector<RewriteRule>& rules, std::size_t max_overlap_edges) {
    if (max_overlap_edges < 1) throw Error("enumerate_critical_pairs: maxOverlapEdges must be >= 1");
    std::vector<CriticalPair> out;
    std::set<std::string> seen;
    for (const auto& p1 : rules) {
        for (const auto& p2 : rules) {
            std::size_t k = 0;
            for (auto& cand : enumerate_concurrent_overlaps(p1, p2, max_overlap_edges)) {
                if (!seen.insert(rule_canonical_key(cand.rule)).second) continue;
                CriticalPair cp;
                cp.rule = std::move(cand.rule);
                cp.rule.name = p1.name + "*" + p2.name + "#" + std::to_string(k++);
                cp.parent1 = p1.name;
                cp.parent2 = p2.name;
                cp.overlap = std::move(cand.overlap);
                out.push_back(std::move(cp));
            }
        }
    }
    return out;
}

inline std::vector<RewriteRule> enumerate_critical_pairs(const std::vector<RewriteRule>& rules,
                                                         std::size_t max_overlap_edges) {
    std::vector<RewriteRule> out;
    for (auto& cp : enumerate_critical_pairs_detailed(rules, max_overlap_edges))
        out.push_back(std::move(cp.rule));
    return out;
}

// Orders candidates by the total causal out-degree of their events within a
// probe causal graph (descending), tie-broken by candidate canonical key.
// Candidates must carry unique names for the per-rule attribution to work.
inline std::vector<RewriteRule> rank_lemmas(std::vector<RewriteRule> candidates,
                                            const CausalGraph& probe) {
    std::vector<std::size_t> outdeg(probe.events.size(), 0);
    for (const auto& [a, b] : probe.causal_edges) ++outdeg[a];
    std::map<std::string, std::size_t> score;
    for (const Event& e : probe.events) score[e.rule_name] += outdeg[e.id];

    struct Entry {
        std::size_t score;
        std::string key;
        RewriteRule rule;
    };
    std::vector<Entry> entries;
    for (auto& c : candidates) {
        auto it = score.find(c.name);
        entries.push_back({it == score.end() ? 0 : it->second, rule_canonical_key(c), std::move(c)});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.key < b.key;
    });
    std::vector<RewriteRule> out;
    for (auto& e : entries) out.push_back(std::move(e.rule));
    return out;
}

// Right-to-left reading of a rule, for equational goals. Succeeds only when
// the inversion is faithful: every written label must be expressible as a
// matchable constraint (a sum of several phase variables is not), exact-degree
// guards transfer only to variables the rule keeps (consuming every host edge
// at v forward means v carries exactly its rhs edges afterwards), and
// distinctness is kept where the inverse lhs can still check it.
inline std::optional<RewriteRule> invert_rule(const RewriteRule& r) {
    if (r.rhs.empty()) return std::nullopt;  // inverse lhs would match vacuously
    RewriteRule inv;
    inv.name = r.name + "~";
    inv.lhs = r.rhs;
    inv.rhs = r.lhs;
    inv.var_names = r.var_names;
    for (const auto& [v, out] : r.rhs_labels) {
        LabelConstraint c;
        c.kind = out.kind;
        if (out.phase_vars.empty())
            c.phase = out.base;
        else if (out.phase_vars.size() == 1 && out.base == Phase::zero())
            c.phase_var = out.phase_vars[0];
        else
            return std::nullopt;
        inv.lhs_labels[v] = c;
    }
    for (const auto& [v, c] : r.lhs_labels) {
        LabelOutput out;
        out.kind = c.kind;
        if (c.phase)
            out.base = *c.phase;
        else
            out.phase_vars = {c.phase_var};
        inv.rhs_labels[v] = out;
    }
    std::set<VarIndex> inv_lhs_vars = RewriteRule::vars_of(inv.lhs);
    for (VarIndex v : r.exact_degree)
        if (inv_lhs_vars.count(v)) inv.exact_degree.insert(v);
    for (const auto& [a, b] : r.distinct)
        if (inv_lhs_vars.count(a) && inv_lhs_vars.count(b)) inv.distinct.insert({a, b});
    // A vertex the original rhs created fresh carries exactly the edges the
    // rhs gave it and differs from every other matched vertex; the inverse
    // must demand both or it matches configurations the rule never produced.
    std::set<VarIndex> base_lhs_vars = RewriteRule::vars_of(r.lhs);
    for (VarIndex v : inv_lhs_vars)
        if (!base_lhs_vars.count(v)) {
            inv.exact_degree.insert(v);
            for (VarIndex w : inv_lhs_vars)
                if (w != v) inv.add_distinct(v, w);
        }
    // Every phase variable the inverse writes must still be bound by one of
    // its own constraints, or application would face an unbound variable.
    std::set<std::string> bound;
    for (const auto& [v, c] : inv.lhs_labels)
        if (!c.phase_var.empty() && inv_lhs_vars.count(v)) bound.insert(c.phase_var);
    for (const auto& [v, out] : inv.rhs_labels)
        for (const auto& name : out.phase_vars)
            if (!bound.count(name)) return std::nullopt;
    try {
        inv.ensure_valid();
    } catch (const Error&) {
        return std::nullopt;
    }
    return inv;
}

// ============================================================================
// Reachability search
// ============================================================================

namespace detail {

// Causal out-degree of each one-step event from `key`, measured inside a
// bounded probe evolution rooted at that state.
struct ProbeScores {
    std::map<std::tuple<std::string, CanonicalKey, std::set<EdgeId>, std::set<EdgeId>>, std::size_t>
        out;
};

inline ProbeScores probe_scores(const std::vector<RewriteRule>& rules, const OpenHypergraph& rep,
                                const CanonicalKey& key, const ProverConfig& cfg) {
    EvolveOptions opt;
    opt.max_states = cfg.probe_max_states;
    opt.max_events = cfg.probe_max_states * 8;
    opt.workers = cfg.workers;
    CausalGraph cg = causal_graph(evolve(rules, rep, cfg.probe_depth, opt));
    std::vector<std::size_t> outdeg(cg.events.size(), 0);
    for (const auto& [a, b] : cg.causal_edges) ++outdeg[a];
    ProbeScores ps;
    for (const Event& e : cg.events)
        if (e.from_state == key && e.step == 1)
            ps.out[{e.rule_name, e.to_state, e.consumed, e.created}] = outdeg[e.id];
    return ps;
}

inline ProofGraph build_proof_graph(const std::vector<RewriteRule>& input_rules,
                                    const std::vector<CriticalPair>& lemmas,
                                    const std::vector<Event>& path, const std::string& goal_text) {
    ProofGraph g;
    auto add_node = [&](ProofNodeKind k, std::string stmt, std::string rule_name) {
        g.nodes.push_back({g.nodes.size(), k, std::move(stmt), std::move(rule_name)});
        return g.nodes.size() - 1;
    };

    if (path.empty()) {
        add_node(ProofNodeKind::Hypothesis, goal_text, "");
        return g;
    }

    std::map<std::string, std::size_t> node_of_rule;
    for (const auto& r : input_rules)
        node_of_rule[r.name] = add_node(ProofNodeKind::Axiom, rule_str(r), r.name);

    std::set<std::string> used;
    for (const Event& e : path) {
        used.insert(e.rule_name);
        if (!e.rule_name.empty() && e.rule_name.back() == '~')
            used.insert(e.rule_name.substr(0, e.rule_name.size() - 1));
    }
    for (const auto& cp : lemmas) {
        if (!used.count(cp.rule.name)) continue;
        std::size_t n = add_node(ProofNodeKind::CriticalPairLemma, rule_str(cp.rule), cp.rule.name);
        node_of_rule[cp.rule.name] = n;
        std::set<std::size_t> parents{node_of_rule.at(cp.parent1), node_of_rule.at(cp.parent2)};
        for (std::size_t p : parents) g.edges.push_back({p, n, ProofEdgeKind::DerivedInference});
    }

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t prev = none;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const Event& e = path[k];
        std::string slots;
        for (EdgeId c : e.consumed) slots += (slots.empty() ? "" : ",") + std::to_string(c);
        std::string stmt = "s" + std::to_string(k) + " =[" + e.rule_name + " @ {" + slots +
                           "}]=> s" + std::to_string(k + 1);
        std::size_t n = add_node(ProofNodeKind::SubstitutionLemma, std::move(stmt), e.rule_name);
        auto it = node_of_rule.find(e.rule_name);
        if (it == node_of_rule.end() && !e.rule_name.empty() && e.rule_name.back() == '~')
            it = node_of_rule.find(e.rule_name.substr(0, e.rule_name.size() - 1));
        if (it == node_of_rule.end()) throw Error("proof graph: no rule node for " + e.rule_name);
        g.edges.push_back({it->second, n, ProofEdgeKind::Substitution});
        if (prev != none) g.edges.push_back({prev, n, ProofEdgeKind::DerivedInference});
        prev = n;
    }
    std::size_t hyp = add_node(ProofNodeKind::Hypothesis, goal_text, "");
    g.edges.push_back({prev, hyp, ProofEdgeKind::DerivedInference});
    return g;
}

}  // namespace detail

inline ProveResult prove_reachability(const std::vector<RewriteRule>& rules,
                                      const OpenHypergraph& from, const OpenHypergraph& to,
                                      const ProverConfig& cfg = {}) {
    for (const auto& r : rules) r.ensure_valid();
    detail::require_variable_only(rules, "prove_reachability");
    from.ensure_valid();
    to.ensure_valid();

    ProveResult res;
    res.working_rules = rules;
    std::vector<CriticalPair> lemma_pool;

    if (cfg.lemma_generation) {
        std::vector<CriticalPair> pairs =
            enumerate_critical_pairs_detailed(rules, cfg.max_overlap_edges);
        std::vector<RewriteRule> candidates;
        std::vector<RewriteRule> probe_rules = rules;
        for (const auto& cp : pairs) {
            candidates.push_back(cp.rule);
            probe_rules.push_back(cp.rule);
        }
        EvolveOptions popt;
        popt.max_states = cfg.probe_max_states;
        popt.max_events = cfg.probe_max_states * 8;
        popt.workers = cfg.workers;
        CausalGraph probe = causal_graph(evolve(probe_rules, from, cfg.probe_depth, popt));
        std::vector<RewriteRule> ranked = rank_lemmas(std::move(candidates), probe);
        for (std::size_t i = 0; i < ranked.size() && i < cfg.max_lemmas; ++i) {
            for (const auto& cp : pairs)
                if (cp.rule.name == ranked[i].name) lemma_pool.push_back(cp);
            res.working_rules.push_back(std::move(ranked[i]));
        }
    }
    if (cfg.enable_inverse_rules) {
        std::vector<RewriteRule> inverses;
        for (const auto& r : res.working_rules)
            if (auto inv = invert_rule(r)) inverses.push_back(std::move(*inv));
        for (auto& r : inverses) res.working_rules.push_back(std::move(r));
    }

    detail::CanonState start = detail::canonical_state(from);
    detail::CanonState goal = detail::canonical_state(to);
    std::string goal_text = "goal: a state isomorphic to the target is reachable";

    if (start.key == goal.key) {
        res.found = true;
        res.path_states.push_back(std::move(start.rep));
        res.proof = detail::build_proof_graph(rules, lemma_pool, {}, goal_text);
        return res;
    }

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    struct NodeRec {
        CanonicalKey key;
        int depth = 0;
        std::size_t score = 0;
        std::size_t parent = none;
        Event via;
    };
    std::vector<NodeRec> arena;
    std::map<CanonicalKey, OpenHypergraph> reps;
    reps.emplace(start.key, std::move(start.rep));
    arena.push_back({start.key, 0, 0, none, {}});

    const bool causal = cfg.strategy == SearchStrategy::CausalBestFirst;
    std::deque<std::size_t> fifo;
    auto cmp = [&arena](std::size_t a, std::size_t b) {
        if (arena[a].score != arena[b].score) return arena[a].score < arena[b].score;
        if (arena[a].key != arena[b].key) return arena[a].key > arena[b].key;
        if (arena[a].depth != arena[b].depth) return arena[a].depth > arena[b].depth;
        return a > b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    std::set<CanonicalKey> visited;        // BFS: marked at generation time
    std::map<CanonicalKey, int> pushed_at; // best-first: shallowest depth enqueued
    if (causal) {
        pushed_at[start.key] = 0;
        heap.push(0);
    } else {
        visited.insert(start.key);
        fifo.push_back(0);
    }

    std::map<CanonicalKey, detail::ProbeScores> probe_cache;

    auto finish = [&](std::size_t parent_idx, Event last, OpenHypergraph goal_rep) {
        std::vector<std::size_t> chain;
        for (std::size_t i = parent_idx; i != none; i = arena[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        for (std::size_t i : chain) res.path_states.push_back(reps.at(arena[i].key));
        for (std::size_t i : chain)
            if (arena[i].parent != none) res.path.push_back(arena[i].via);
        res.path.push_back(std::move(last));
        res.path_states.push_back(std::move(goal_rep));
        for (std::size_t k = 0; k < res.path.size(); ++k) {
            res.path[k].id = k;
            res.path[k].step = static_cast<int>(k) + 1;
        }
        res.found = true;
        res.proof = detail::build_proof_graph(rules, lemma_pool, res.path, goal_text);
        res.stats.states_seen = reps.size();
    };

    bool budget = false;
    while (causal ? !heap.empty() : !fifo.empty()) {
        std::size_t idx;
        if (causal) {
            idx = heap.top();
            heap.pop();
            if (arena[idx].depth > pushed_at.at(arena[idx].key)) continue;  // superseded entry
        } else {
            idx = fifo.front();
            fifo.pop_front();
        }
        if (arena[idx].depth >= cfg.max_depth) continue;
        if (res.stats.expansions >= cfg.max_expansions) {
            budget = true;
            break;
        }
        ++res.stats.expansions;

        const NodeRec cur = arena[idx];  // copy: arena may reallocate below
        std::vector<detail::ProducedState> succ =
            detail::expand_state(res.working_rules, reps.at(cur.key));
        const detail::ProbeScores* ps = nullptr;
        if (causal && !succ.empty()) {
            auto it = probe_cache.find(cur.key);
            if (it == probe_cache.end())
                it = probe_cache
                         .emplace(cur.key, detail::probe_scores(res.working_rules, reps.at(cur.key),
                                                                cur.key, cfg))
                         .first;
            ps = &it->second;
        }

        for (auto& p : succ) {
            Event ev;
            ev.rule_name = p.rule_name;
            ev.from_state = cur.key;
            ev.to_state = p.to;
            ev.consumed = p.consumed;
            ev.created = p.created;
            ev.step = cur.depth + 1;
            if (p.to == goal.key) {
                finish(idx, std::move(ev), std::move(p.rep));
                return res;
            }
            if (!reps.count(p.to)) {
                if (reps.size() >= cfg.max_states) {
                    budget = true;
                    break;
                }
                reps.emplace(p.to, std::move(p.rep));
            }
            int ndepth = cur.depth + 1;
            if (ndepth >= cfg.max_depth) continue;  // never expandable; goal already tested
            if (causal) {
                std::size_t inc = 0;
                if (ps) {
                    auto f = ps->out.find({p.rule_name, p.to, p.consumed, p.created});
                    if (f != ps->out.end()) inc = f->second;
                }
                auto it = pushed_at.find(p.to);
                if (it == pushed_at.end() || ndepth < it->second) {
                    pushed_at[p.to] = ndepth;
                    arena.push_back({p.to, ndepth, cur.score + inc, idx, std::move(ev)});
                    heap.push(arena.size() - 1);
                }
            } else {
                if (visited.insert(p.to).second) {
                    arena.push_back({p.to, ndepth, 0, idx, std::move(ev)});
                    fifo.push_back(arena.size() - 1);
                }
            }
        }
        if (budget) break;
    }

    res.stats.budget_exhausted = budget;
    res.stats.states_seen = reps.size();
    return res;
}

inline ProveResult prove_reachability(const std::vector<RewriteRule>& rules, const Hypergraph& from,
                                      const Hypergraph& to, const ProverConfig& cfg = {}) {
    return prove_reachability(rules, as_open(from), as_open(to), cfg);
}

// ============================================================================
// Strategy comparison
// ============================================================================

struct ProveInstance {
    std::string name;
    OpenHypergraph from;
    OpenHypergraph to;
};

struct StrategyOutcome {
    bool found = false;
    bool budget_exhausted = false;
    std::size_t expansions = 0;
    std::size_t proof_length = 0;
    double wall_seconds = 0.0;
};

struct CompareRecord {
    std::string instance;
    StrategyOutcome causal;
    StrategyOutcome bfs;
};

struct CompareReport {
    std::vector<CompareRecord> records;
    std::size_t causal_not_worse = 0;       // instances with causal expansions <= bfs
    std::size_t causal_strictly_fewer = 0;  // instances with causal expansions < bfs
    double mean_expansion_ratio = 0.0;      // mean bfs/causal over solved instances
    double mean_length_ratio = 0.0;         // mean bfs/causal proof length
};

inline CompareReport compare_strategies(const std::vector<RewriteRule>& rules,
                                        const std::vector<ProveInstance>& instances,
                                        ProverConfig causal_cfg, ProverConfig bfs_cfg) {
    causal_cfg.strategy = SearchStrategy::CausalBestFirst;
    bfs_cfg.strategy = SearchStrategy::PlainBFS;
    CompareReport report;
    double exp_ratio_sum = 0.0, len_ratio_sum = 0.0;
    std::size_t exp_ratio_n = 0, len_ratio_n = 0;

    for (const auto& inst : instances) {
        auto run = [&](const ProverConfig& cfg) {
            StrategyOutcome o;
            auto t0 = std::chrono::steady_clock::now();
            ProveResult r = prove_reachability(rules, inst.from, inst.to, cfg);
            o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            o.found = r.found;
            o.budget_exhausted = r.stats.budget_exhausted;
            o.expansions = r.stats.expansions;
            o.proof_length = r.path.size();
            return o;
        };
        CompareRecord rec;
        rec.instance = inst.name;
        rec.causal = run(causal_cfg);
        rec.bfs = run(bfs_cfg);
        if (rec.causal.found && rec.bfs.found) {
            if (rec.causal.expansions <= rec.bfs.expansions) ++report.causal_not_worse;
            if (rec.causal.expansions < rec.bfs.expansions) ++report.causal_strictly_fewer;
            if (rec.causal.expansions > 0) {
                exp_ratio_sum +=
                    static_cast<double>(rec.bfs.expansions) / static_cast<double>(rec.causal.expansions);
                ++exp_ratio_n;
            }
            if (rec.causal.proof_length > 0) {
                len_ratio_sum += static_cast<double>(rec.bfs.proof_length) /
                                 static_cast<double>(rec.causal.proof_length);
                ++len_ratio_n;
            }
        }
        report.records.push_back(std::move(rec));
    }
    if (exp_ratio_n) report.mean_expansion_ratio = exp_ratio_sum / static_cast<double>(exp_ratio_n);
    if (len_ratio_n) report.mean_length_ratio = len_ratio_sum / static_cast<double>(len_ratio_n);
    return report;
}

}  // namespace mwcau
