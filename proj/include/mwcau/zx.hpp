#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mwcau/hypergraph.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/phase.hpp"
#include "mwcau/prover.hpp"
#include "mwcau/rules.hpp"

namespace mwcau {

// ============================================================================
// Diagrams
// ============================================================================

enum class SpiderColor { Z, X };

inline std::string to_string(SpiderColor c) { return c == SpiderColor::Z ? "Z" : "X"; }

inline std::optional<SpiderColor> parse_color(const std::string& s) {
    if (s == "Z") return SpiderColor::Z;
    if (s == "X") return SpiderColor::X;
    return std::nullopt;
}

inline SpiderColor other_color(SpiderColor c) {
    return c == SpiderColor::Z ? SpiderColor::X : SpiderColor::Z;
}

struct Spider {
    std::string id;
    SpiderColor color = SpiderColor::Z;
    Phase phase;  // multiple of pi

    bool operator==(const Spider&) const = default;
};

// An undirected string diagram: spiders plus a multiset of wires. Boundary
// points (the ordered input/output lists) are names disjoint from spider ids,
// and each must carry exactly one wire end. Parallel wires and self-loops are
// allowed.
struct ZXDiagram {
    std::vector<Spider> spiders;
    std::vector<std::pair<std::string, std::string>> wires;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    bool operator==(const ZXDiagram&) const = default;

    std::vector<std::string> validate() const {
        std::vector<std::string> violations;
        std::set<std::string> ids;
        for (const auto& s : spiders) {
            if (s.id.empty()) violations.push_back("spider with empty id");
            if (!ids.insert(s.id).second) violations.push_back("duplicate spider id " + s.id);
        }
        std::map<std::string, int> ends;  // boundary name -> wire end count
        for (const auto* side : {&inputs, &outputs})
            for (const auto& name : *side) {
                if (name.empty()) violations.push_back("boundary point with empty name");
                if (ids.count(name))
                    violations.push_back("boundary name " + name + " collides with a spider id");
                if (ends.count(name))
                    violations.push_back("duplicate boundary name " + name);
                ends[name] = 0;
            }
        for (const auto& [a, b] : wires)
            for (const auto& end : {a, b}) {
                if (ends.count(end))
                    ++ends[end];
                else if (!ids.count(end))
                    violations.push_back("wire endpoint " + end + " is not declared");
            }
        for (const auto& [name, n] : ends)
            if (n != 1)
                violations.push_back("boundary point " + name + " has " + std::to_string(n) +
                                     " wire ends, expected exactly 1");
        return violations;
    }

    void ensure_valid() const {
        auto v = validate();
        if (!v.empty()) throw ValidationError("diagram: " + v.front());
    }
};

// ============================================================================
// Encoding into open hypergraphs
// ============================================================================

// Spiders become labelled vertices, boundary points dummy vertices (inputs
// first, then outputs, in declaration order), wires undirected binary edges.
inline OpenHypergraph encode(const ZXDiagram& d) {
    d.ensure_valid();
    OpenHypergraph g;
    std::map<std::string, VertexId> at;
    for (const Spider& s : d.spiders) {
        VertexId v = g.graph.add_vertex();
        g.graph.set_label(v, VertexLabel{to_string(s.color), s.phase.str()});
        at[s.id] = v;
    }
    for (const auto* side : {&d.inputs, &d.outputs})
        for (const std::string& name : *side) {
            VertexId v = g.graph.add_vertex();
            g.dummies.insert(v);
            g.boundary.push_back(v);
            at[name] = v;
        }
    for (const auto& [a, b] : d.wires) g.graph.add_edge({at.at(a), at.at(b)}, /*directed=*/false);
    return g;
}

// Inverse of encode up to names: spiders are renumbered s0, s1, ... in vertex
// order and boundary points in0../out0.. following the boundary list, whose
// first n_inputs entries are taken as inputs.
inline ZXDiagram decode(const OpenHypergraph& g, std::size_t n_inputs) {
    if (n_inputs > g.boundary.size())
        throw ValidationError("decode: " + std::to_string(n_inputs) + " inputs requested but only " +
                              std::to_string(g.boundary.size()) + " boundary points present");
    ZXDiagram d;
    std::map<VertexId, std::string> name;
    for (const auto& [v, l] : g.graph.labels()) {
        auto color = parse_color(l.kind);
        if (!color) throw ValidationError("decode: vertex label kind " + l.kind + " is not a spider color");
        auto phase = Phase::parse(l.phase);
        if (!phase) throw ValidationError("decode: unparsable phase " + l.phase);
        Spider s{"s" + std::to_string(d.spiders.size()), *color, *phase};
        name[v] = s.id;
        d.spiders.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < g.boundary.size(); ++i) {
        std::string n = i < n_inputs ? "in" + std::to_string(i) : "out" + std::to_string(i - n_inputs);
        name[g.boundary[i]] = n;
        (i < n_inputs ? d.inputs : d.outputs).push_back(std::move(n));
    }
    for (VertexId v : g.graph.vertices())
        if (!name.count(v))
            throw ValidationError("decode: vertex " + std::to_string(v) +
                                  " is neither a spider nor a boundary point");
    for (const auto& e : g.graph.edges()) {
        if (e.directed || e.arity() != 2)
            throw ValidationError("decode: edge " + std::to_string(e.id) + " is not a wire");
        d.wires.emplace_back(name.at(e.vertices[0]), name.at(e.vertices[1]));
    }
    d.ensure_valid();
    return d;
}

// ============================================================================
// Builders
// ============================================================================

inline ZXDiagram identity_wires(std::size_t n) {
    ZXDiagram d;
    for (std::size_t i = 0; i < n; ++i) {
        d.inputs.push_back("in" + std::to_string(i));
        d.outputs.push_back("out" + std::to_string(i));
        d.wires.emplace_back(d.inputs.back(), d.outputs.back());
    }
    return d;
}

// Control on wire 0 through a Z spider, target on wire 1 through an X spider.
inline ZXDiagram cnot() {
    ZXDiagram d;
    d.spiders = {{"z0", SpiderColor::Z, Phase::zero()}, {"x0", SpiderColor::X, Phase::zero()}};
    d.inputs = {"in0", "in1"};
    d.outputs = {"out0", "out1"};
    d.wires = {{"in0", "z0"}, {"z0", "out0"}, {"in1", "x0"}, {"x0", "out1"}, {"z0", "x0"}};
    return d;
}

// d1 followed by d2: output i of d1 is soldered to input i of d2. Endpoints
// are renamed a.*/b.* to keep the two namespaces apart.
inline ZXDiagram compose(const ZXDiagram& d1, const ZXDiagram& d2) {
    d1.ensure_valid();
    d2.ensure_valid();
    if (d1.outputs.size() != d2.inputs.size())
        throw CompositionError("compose: " + std::to_string(d1.outputs.size()) +
                               " outputs cannot feed " + std::to_string(d2.inputs.size()) +
                               " inputs");
    ZXDiagram out;
    std::map<std::string, std::string> m1, m2;
    for (const Spider& s : d1.spiders) {
        out.spiders.push_back({"a." + s.id, s.color, s.phase});
        m1[s.id] = out.spiders.back().id;
    }
    for (const Spider& s : d2.spiders) {
        out.spiders.push_back({"b." + s.id, s.color, s.phase});
        m2[s.id] = out.spiders.back().id;
    }
    for (const std::string& n : d1.inputs) {
        out.inputs.push_back("a." + n);
        m1[n] = out.inputs.back();
    }
    for (const std::string& n : d2.outputs) {
        out.outputs.push_back("b." + n);
        m2[n] = out.outputs.back();
    }
    for (std::size_t i = 0; i < d1.outputs.size(); ++i) {
        std::string tok = "#" + std::to_string(i);
        m1[d1.outputs[i]] = tok;
        m2[d2.inputs[i]] = tok;
    }
    std::vector<std::pair<std::string, std::string>> wires;
    for (const auto& [a, b] : d1.wires) wires.emplace_back(m1.at(a), m1.at(b));
    for (const auto& [a, b] : d2.wires) wires.emplace_back(m2.at(a), m2.at(b));
    // Splice out each junction token; every token sits on exactly two wire
    // ends because boundary points carry exactly one wire each.
    for (std::size_t i = 0; i < d1.outputs.size(); ++i) {
        std::string tok = "#" + std::to_string(i);
        std::vector<std::pair<std::size_t, int>> occ;
        for (std::size_t w = 0; w < wires.size(); ++w) {
            if (wires[w].first == tok) occ.push_back({w, 0});
            if (wires[w].second == tok) occ.push_back({w, 1});
        }
        if (occ[0].first == occ[1].first)
            throw CompositionError("compose: gluing closes a wire loop with no spiders on it");
        std::string far1 = occ[0].second ? wires[occ[0].first].first : wires[occ[0].first].second;
        std::string far2 = occ[1].second ? wires[occ[1].first].first : wires[occ[1].first].second;
        wires[occ[0].first] = {far1, far2};
        wires.erase(wires.begin() + occ[1].first);
    }
    out.wires = std::move(wires);
    return out;
}

// Side-by-side parallel combination.
inline ZXDiagram tensor(const ZXDiagram& d1, const ZXDiagram& d2) {
    d1.ensure_valid();
    d2.ensure_valid();
    ZXDiagram out;
    std::map<std::string, std::string> m1, m2;
    for (const Spider& s : d1.spiders) {
        out.spiders.push_back({"a." + s.id, s.color, s.phase});
        m1[s.id] = out.spiders.back().id;
    }
    for (const Spider& s : d2.spiders) {
        out.spiders.push_back({"b." + s.id, s.color, s.phase});
        m2[s.id] = out.spiders.back().id;
    }
    auto take = [&](const std::vector<std::string>& names, std::map<std::string, std::string>& m,
                    const char* prefix, std::vector<std::string>& into) {
        for (const std::string& n : names) {
            into.push_back(prefix + n);
            m[n] = into.back();
        }
    };
    take(d1.inputs, m1, "a.", out.inputs);
    take(d2.inputs, m2, "b.", out.inputs);
    take(d1.outputs, m1, "a.", out.outputs);
    take(d2.outputs, m2, "b.", out.outputs);
    for (const auto& [a, b] : d1.wires) out.wires.emplace_back(m1.at(a), m1.at(b));
    for (const auto& [a, b] : d2.wires) out.wires.emplace_back(m2.at(a), m2.at(b));
    return out;
}

// ============================================================================
// Rewrite rules
// ============================================================================

struct ZXRuleSet {
    int max_arity = 4;
    std::vector<RewriteRule> rules;
};

namespace detail {

// Merge two adjacent same-colour spiders, phases adding. s keeps k extra legs
// and t keeps l; after the merge everything hangs off s. Both spiders take
// exact-degree guards so no wire is silently left behind, and no leg may bind
// t itself (t ends up bare and is pruned); a t-leg bound to s turns a second
// connecting wire into a self-loop, which is the correct residue.
inline RewriteRule zx_fusion_rule(SpiderColor c, int k, int l) {
    RewriteRule r;
    r.name = "fuse" + to_string(c) + "_" + std::to_string(k) + "_" + std::to_string(l);
    Term s = vterm(r, "s"), t = vterm(r, "t");
    r.lhs.push_back({{s, t}, false});
    std::vector<Term> legs;
    for (int i = 0; i < k; ++i) {
        Term u = vterm(r, "u" + std::to_string(i + 1));
        r.lhs.push_back({{s, u}, false});
        legs.push_back(u);
    }
    for (int j = 0; j < l; ++j) {
        Term v = vterm(r, "v" + std::to_string(j + 1));
        r.lhs.push_back({{t, v}, false});
        legs.push_back(v);
    }
    for (const Term& w : legs) r.rhs.push_back({{s, w}, false});
    r.lhs_labels[s.value] = {to_string(c), std::nullopt, "a"};
    r.lhs_labels[t.value] = {to_string(c), std::nullopt, "b"};
    r.rhs_labels[s.value] = {to_string(c), Phase::zero(), {"a", "b"}};
    r.exact_degree = {static_cast<VarIndex>(s.value), static_cast<VarIndex>(t.value)};
    r.add_distinct(s.value, t.value);
    for (const Term& w : legs) r.add_distinct(w.value, t.value);
    return r;
}

// Drop a phase-0 arity-2 spider, joining its two wires.
inline RewriteRule zx_identity_rule(SpiderColor c) {
    RewriteRule r;
    r.name = "id" + to_string(c);
    Term m = vterm(r, "m"), x = vterm(r, "x"), y = vterm(r, "y");
    r.lhs.push_back({{x, m}, false});
    r.lhs.push_back({{m, y}, false});
    r.rhs.push_back({{x, y}, false});
    r.lhs_labels[m.value] = {to_string(c), Phase::zero(), ""};
    r.exact_degree = {static_cast<VarIndex>(m.value)};
    r.add_distinct(x.value, m.value);
    r.add_distinct(y.value, m.value);
    return r;
}

// A phase-0 state of the opposite colour copies through a phase-0 spider of
// colour c with k further legs, leaving one copy per leg.
inline RewriteRule zx_copy_rule(SpiderColor c, int k) {
    RewriteRule r;
    r.name = "copy" + to_string(c) + "_" + std::to_string(k);
    Term st = vterm(r, "c"), z = vterm(r, "z");
    r.lhs.push_back({{st, z}, false});
    std::vector<Term> legs, copies;
    for (int i = 0; i < k; ++i) {
        Term u = vterm(r, "u" + std::to_string(i + 1));
        r.lhs.push_back({{z, u}, false});
        legs.push_back(u);
    }
    for (int i = 0; i < k; ++i) copies.push_back(vterm(r, "w" + std::to_string(i + 1)));
    for (int i = 0; i < k; ++i) r.rhs.push_back({{copies[i], legs[i]}, false});
    r.lhs_labels[st.value] = {to_string(other_color(c)), Phase::zero(), ""};
    r.lhs_labels[z.value] = {to_string(c), Phase::zero(), ""};
    for (const Term& w : copies) r.rhs_labels[w.value] = {to_string(other_color(c)), Phase::zero(), {}};
    r.exact_degree = {static_cast<VarIndex>(st.value), static_cast<VarIndex>(z.value)};
    r.add_distinct(st.value, z.value);
    for (const Term& u : legs) {
        r.add_distinct(u.value, z.value);
        r.add_distinct(u.value, st.value);
    }
    return r;
}

// Connected phase-0 Z and X spiders with two legs each commute into the
// four-spider complete bipartite form.
inline RewriteRule zx_bialgebra_rule() {
    RewriteRule r;
    r.name = "bialg";
    Term z = vterm(r, "z"), x = vterm(r, "x");
    Term u1 = vterm(r, "u1"), u2 = vterm(r, "u2");
    Term v1 = vterm(r, "v1"), v2 = vterm(r, "v2");
    r.lhs.push_back({{z, x}, false});
    r.lhs.push_back({{z, u1}, false});
    r.lhs.push_back({{z, u2}, false});
    r.lhs.push_back({{x, v1}, false});
    r.lhs.push_back({{x, v2}, false});
    Term p1 = vterm(r, "p1"), p2 = vterm(r, "p2");
    Term q1 = vterm(r, "q1"), q2 = vterm(r, "q2");
    r.rhs.push_back({{p1, u1}, false});
    r.rhs.push_back({{p2, u2}, false});
    r.rhs.push_back({{q1, v1}, false});
    r.rhs.push_back({{q2, v2}, false});
    for (const Term& p : {p1, p2})
        for (const Term& q : {q1, q2}) r.rhs.push_back({{p, q}, false});
    r.lhs_labels[z.value] = {"Z", Phase::zero(), ""};
    r.lhs_labels[x.value] = {"X", Phase::zero(), ""};
    for (const Term& p : {p1, p2}) r.rhs_labels[p.value] = {"X", Phase::zero(), {}};
    for (const Term& q : {q1, q2}) r.rhs_labels[q.value] = {"Z", Phase::zero(), {}};
    r.exact_degree = {static_cast<VarIndex>(z.value), static_cast<VarIndex>(x.value)};
    r.add_distinct(z.value, x.value);
    for (const Term& w : {u1, u2, v1, v2}) {
        r.add_distinct(w.value, z.value);
        r.add_distinct(w.value, x.value);
    }
    return r;
}

// A phase-0 Z-X pair joined by (at least) two parallel wires loses two of
// them; any further connections and legs stay put.
inline RewriteRule zx_hopf_rule() {
    RewriteRule r;
    r.name = "hopf";
    Term s = vterm(r, "s"), t = vterm(r, "t");
    r.lhs.push_back({{s, t}, false});
    r.lhs.push_back({{s, t}, false});
    r.lhs_labels[s.value] = {"Z", Phase::zero(), ""};
    r.lhs_labels[t.value] = {"X", Phase::zero(), ""};
    r.add_distinct(s.value, t.value);
    return r;
}

}  // namespace detail

// The standard simplification set, instantiated for every spider arity up to
// max_arity: fusion (both colours, unordered leg-count pairs; merging two
// bare arity-1 spiders is omitted because the merged spider would keep no
// wires and its residual scalar cannot be represented), identity removal,
// state copying, the bialgebra (needs arity 3), and the Hopf cancellation.
inline ZXRuleSet standard_rules(int max_arity = 4) {
    if (max_arity < 2) throw ValidationError("standard_rules: max_arity must be at least 2");
    ZXRuleSet out;
    out.max_arity = max_arity;
    for (SpiderColor c : {SpiderColor::Z, SpiderColor::X})
        for (int k = 0; k <= max_arity - 1; ++k)
            for (int l = k; l <= max_arity - 1; ++l)
                if (k + l >= 1) out.rules.push_back(detail::zx_fusion_rule(c, k, l));
    out.rules.push_back(detail::zx_identity_rule(SpiderColor::Z));
    out.rules.push_back(detail::zx_identity_rule(SpiderColor::X));
    for (SpiderColor c : {SpiderColor::Z, SpiderColor::X})
        for (int k = 0; k <= max_arity - 1; ++k) {
            // At k = 0 the instance is a bare state pair, identical for both
            // colours up to isomorphism; keep a single copy.
            if (k == 0 && c == SpiderColor::X) continue;
            out.rules.push_back(detail::zx_copy_rule(c, k));
        }
    if (max_arity >= 3) out.rules.push_back(detail::zx_bialgebra_rule());
    out.rules.push_back(detail::zx_hopf_rule());
    for (const auto& r : out.rules) r.ensure_valid();
    return out;
}

// ============================================================================
// Simplification
// ============================================================================

namespace detail {

struct Descent {
    CanonState state;
    std::vector<Event> path;
    std::vector<OpenHypergraph> states;
    bool complete = true;
};

// Steepest descent on the lexicographic (spider count, wire count) measure:
// apply the strictly-shrinking rewrite whose successor is smallest, stop when
// none applies. Working on canonical representatives makes the whole
// derivation a pure function of the input's isomorphism class.
inline Descent zx_descend(const std::vector<RewriteRule>& rules, CanonState start,
                          std::size_t max_steps) {
    auto measure = [](const OpenHypergraph& g) {
        return std::make_pair(g.graph.labels().size(), g.graph.edges().size());
    };
    Descent out;
    out.states.push_back(start.rep);
    CanonState cur = std::move(start);
    while (true) {
        if (out.path.size() >= max_steps) {
            out.complete = false;
            break;
        }
        auto now = measure(cur.rep);
        std::vector<ProducedState> cands = expand_state(rules, cur.rep);
        using Rank = std::tuple<std::pair<std::size_t, std::size_t>, CanonicalKey, std::string,
                                std::set<EdgeId>, std::set<EdgeId>>;
        const ProducedState* best = nullptr;
        Rank best_rank;
        for (const auto& c : cands) {
            auto m = measure(c.rep);
            if (m >= now) continue;
            Rank rk{m, c.to, c.rule_name, c.consumed, c.created};
            if (!best || rk < best_rank) {
                best = &c;
                best_rank = std::move(rk);
            }
        }
        if (!best) break;
        Event ev;
        ev.id = out.path.size();
        ev.rule_name = best->rule_name;
        ev.from_state = cur.key;
        ev.to_state = best->to;
        ev.consumed = best->consumed;
        ev.created = best->created;
        ev.step = static_cast<int>(out.path.size()) + 1;
        out.path.push_back(std::move(ev));
        cur = CanonState{best->to, best->rep, {}};
        out.states.push_back(cur.rep);
    }
    out.state = std::move(cur);
    return out;
}

inline std::vector<RewriteRule> zx_used_rules(const std::vector<RewriteRule>& rules,
                                              std::initializer_list<const std::vector<Event>*> paths) {
    std::set<std::string> used;
    for (const auto* path : paths)
        for (const Event& e : *path) {
            used.insert(e.rule_name);
            if (!e.rule_name.empty() && e.rule_name.back() == '~')
                used.insert(e.rule_name.substr(0, e.rule_name.size() - 1));
        }
    std::vector<RewriteRule> out;
    for (const auto& r : rules) {
        // Inverse applications hang off the base rule's axiom node.
        if (!r.name.empty() && r.name.back() == '~') continue;
        if (used.count(r.name)) out.push_back(r);
    }
    return out;
}

// Two derivation chains meeting at a common form: a statement chain s0..sn
// for the left side, t0..tm for the right, both feeding the hypothesis.
inline ProofGraph zx_join_proof(const std::vector<RewriteRule>& used_rules,
                                const std::vector<Event>& left, const std::vector<Event>& right,
                                const std::string& goal_text) {
    ProofGraph g;
    auto add_node = [&](ProofNodeKind k, std::string stmt, std::string rule_name) {
        g.nodes.push_back({g.nodes.size(), k, std::move(stmt), std::move(rule_name)});
        return g.nodes.size() - 1;
    };
    if (left.empty() && right.empty()) {
        add_node(ProofNodeKind::Hypothesis, goal_text, "");
        return g;
    }
    std::map<std::string, std::size_t> node_of_rule;
    for (const auto& r : used_rules)
        node_of_rule[r.name] = add_node(ProofNodeKind::Axiom, rule_str(r), r.name);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    auto chain = [&](const std::vector<Event>& path, char v) {
        std::size_t prev = none;
        for (std::size_t k = 0; k < path.size(); ++k) {
            const Event& e = path[k];
            std::string slots;
            for (EdgeId c : e.consumed) slots += (slots.empty() ? "" : ",") + std::to_string(c);
            std::string stmt = v + std::to_string(k) + " =[" + e.rule_name + " @ {" + slots +
                               "}]=> " + v + std::to_string(k + 1);
            std::size_t n = add_node(ProofNodeKind::SubstitutionLemma, std::move(stmt), e.rule_name);
            auto it = node_of_rule.find(e.rule_name);
            if (it == node_of_rule.end() && !e.rule_name.empty() && e.rule_name.back() == '~')
                it = node_of_rule.find(e.rule_name.substr(0, e.rule_name.size() - 1));
            if (it == node_of_rule.end()) throw Error("proof graph: no rule node for " + e.rule_name);
            g.edges.push_back({it->second, n, ProofEdgeKind::Substitution});
            if (prev != none) g.edges.push_back({prev, n, ProofEdgeKind::DerivedInference});
            prev = n;
        }
        return prev;
    };
    std::size_t lt = chain(left, 's');
    std::size_t rt = chain(right, 't');
    std::size_t hyp = add_node(ProofNodeKind::Hypothesis, goal_text, "");
    if (lt != none) g.edges.push_back({lt, hyp, ProofEdgeKind::DerivedInference});
    if (rt != none) g.edges.push_back({rt, hyp, ProofEdgeKind::DerivedInference});
    return g;
}

}  // namespace detail

struct SimplifyResult {
    ZXDiagram diagram;
    ProofGraph proof;
    std::vector<Event> path;
    std::vector<OpenHypergraph> path_states;  // canonical, path.size() + 1 entries
    bool complete = true;
};

inline SimplifyResult simplify(const ZXDiagram& d, const ZXRuleSet& rs,
                               std::size_t max_steps = 10000) {
    d.ensure_valid();
    for (const auto& r : rs.rules) r.ensure_valid();
    detail::Descent desc = detail::zx_descend(rs.rules, detail::canonical_state(encode(d)), max_steps);
    SimplifyResult out;
    out.diagram = decode(desc.state.rep, d.inputs.size());
    out.path = desc.path;
    out.path_states = desc.states;
    out.complete = desc.complete;
    std::string goal = "irreducible: " + std::to_string(out.diagram.spiders.size()) +
                       " spiders, " + std::to_string(out.diagram.wires.size()) + " wires";
    out.proof = detail::build_proof_graph(detail::zx_used_rules(rs.rules, {&desc.path}), {},
                                          desc.path, goal);
    return out;
}

// ============================================================================
// Diagram equality
// ============================================================================

struct EqualityResult {
    bool found = false;
    ProofGraph proof;
    std::vector<Event> left_path;   // d1 down to the join point
    std::vector<Event> right_path;  // d2 down to the join point
    std::vector<OpenHypergraph> left_states;
    std::vector<OpenHypergraph> right_states;
    std::vector<RewriteRule> working_rules;
    ProverStats stats;
};

// Joinability first: reduce both diagrams to their descent normal forms; if
// those coincide the two chains are the proof. Otherwise bridge the gap with
// the reachability prover running the rule set plus every faithful inverse,
// and splice the bridge onto the left chain.
inline EqualityResult prove_equal(const ZXDiagram& d1, const ZXDiagram& d2, const ZXRuleSet& rs,
                                  const ProverConfig& cfg = {}) {
    d1.ensure_valid();
    d2.ensure_valid();
    if (d1.inputs.size() != d2.inputs.size() || d1.outputs.size() != d2.outputs.size())
        throw ValidationError("prove_equal: boundary signatures differ (" +
                              std::to_string(d1.inputs.size()) + "->" +
                              std::to_string(d1.outputs.size()) + " vs " +
                              std::to_string(d2.inputs.size()) + "->" +
                              std::to_string(d2.outputs.size()) + ")");
    for (const auto& r : rs.rules) r.ensure_valid();
    detail::Descent L = detail::zx_descend(rs.rules, detail::canonical_state(encode(d1)), 10000);
    detail::Descent R = detail::zx_descend(rs.rules, detail::canonical_state(encode(d2)), 10000);
    EqualityResult out;
    out.left_path = L.path;
    out.right_path = R.path;
    out.left_states = L.states;
    out.right_states = R.states;
    out.working_rules = rs.rules;
    out.stats.budget_exhausted = !L.complete || !R.complete;
    std::string goal = "diagrams are equivalent: both sides rewrite to a common form";
    if (L.state.key == R.state.key) {
        out.found = true;
        out.proof = detail::zx_join_proof(detail::zx_used_rules(rs.rules, {&L.path, &R.path}),
                                          out.left_path, out.right_path, goal);
        return out;
    }
    ProverConfig pc = cfg;
    pc.enable_inverse_rules = true;
    ProveResult pr = prove_reachability(rs.rules, L.state.rep, R.state.rep, pc);
    bool descents_cut_short = out.stats.budget_exhausted;
    out.stats = pr.stats;
    out.stats.budget_exhausted |= descents_cut_short;
    if (!pr.found) return out;
    out.working_rules = pr.working_rules;
    for (Event e : pr.path) {
        e.id = out.left_path.size();
        e.step = static_cast<int>(out.left_path.size()) + 1;
        out.left_path.push_back(std::move(e));
    }
    out.left_states.insert(out.left_states.end(), pr.path_states.begin() + 1, pr.path_states.end());
    out.found = true;
    out.proof = detail::zx_join_proof(
        detail::zx_used_rules(out.working_rules, {&out.left_path, &out.right_path}), out.left_path,
        out.right_path, goal);
    return out;
}

// A gate composed with itself must reduce to bare wires. (The gates treated
// here are involutions, so this is the whole unitarity check.)
inline EqualityResult prove_unitary(const ZXDiagram& gate, const ZXRuleSet& rs,
                                    const ProverConfig& cfg = {}) {
    gate.ensure_valid();
    if (gate.inputs.size() != gate.outputs.size())
        throw ValidationError("prove_unitary: gate must have as many inputs as outputs");
    return prove_equal(compose(gate, gate), identity_wires(gate.inputs.size()), rs, cfg);
}

}  // namespace mwcau
