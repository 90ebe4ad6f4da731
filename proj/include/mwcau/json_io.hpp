#pragma once

// JSON serialization for every artifact the tooling reads or writes: states,
// rule files, ZX diagrams, proof graphs, multiway/causal graphs and benchmark
// reports. JSON is the source-of-truth format; parse(serialize(x)) == x for
// states, rules, diagrams and proofs. DOT / GraphML (export.hpp) are
// export-only views.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mwcau/causal.hpp"
#include "mwcau/hypergraph.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/prover.hpp"
#include "mwcau/rules.hpp"
#include "mwcau/zx.hpp"

namespace mwcau {

using Json = nlohmann::json;

// Malformed input: syntax errors carry origin:line:column, schema errors a
// description of the offending field.
class ParseError : public Error {
public:
    using Error::Error;
};

// ============================================================================
// Parsing with positional diagnostics
// ============================================================================

inline Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // nlohmann reports a byte offset; recover line and column for the
        // message since rule files are written by hand.
        std::size_t line = 1, col = 1;
        std::size_t stop = e.byte > 0 ? std::min(text.size(), e.byte - 1) : 0;
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + e.what());
    }
}

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(what + ": missing required field \"" + key + "\"");
    return j.at(key);
}

inline std::string dump_sorted(const Json& j) { return j.dump(2) + "\n"; }

inline Phase phase_or_throw(const std::string& s, const std::string& what) {
    auto p = Phase::parse(s);
    if (!p) throw ParseError(what + ": bad phase \"" + s + "\" (expected \"p\" or \"p/q\")");
    return *p;
}

inline SpiderColor color_or_throw(const std::string& s, const std::string& what) {
    auto c = parse_color(s);
    if (!c) throw ParseError(what + ": bad color \"" + s + "\" (expected Z or X)");
    return *c;
}

}  // namespace detail

// ============================================================================
// States (open hypergraphs)
// ============================================================================
//
// {
//   "vertices": [0, 1, 2],
//   "edges": [{"id": 0, "vertices": [0, 1], "directed": true}, ...],
//   "labels": [{"vertex": 0, "kind": "Z", "phase": "1/2"}, ...],
//   "dummies": [2],
//   "boundary": [2]
// }
//
// Only "edges" is required; vertices are inferred from incidences, edge ids
// default to their position, edges default to directed, and a graph with no
// dummies and no boundary is closed.

inline Json state_to_json(const OpenHypergraph& g) {
    Json j;
    j["vertices"] = Json::array();
    for (VertexId v : g.graph.vertices()) j["vertices"].push_back(v);
    j["edges"] = Json::array();
    for (const Hyperedge& e : g.graph.edges()) {
        Json je;
        je["id"] = e.id;
        je["vertices"] = e.vertices;
        je["directed"] = e.directed;
        j["edges"].push_back(std::move(je));
    }
    j["labels"] = Json::array();
    for (const auto& [v, lab] : g.graph.labels()) {
        Json jl;
        jl["vertex"] = v;
        jl["kind"] = lab.kind;
        jl["phase"] = lab.phase;
        j["labels"].push_back(std::move(jl));
    }
    j["dummies"] = Json::array();
    for (VertexId v : g.dummies) j["dummies"].push_back(v);
    j["boundary"] = g.boundary;
    return j;
}

inline OpenHypergraph state_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("state: expected a JSON object");
    OpenHypergraph g;
    if (j.contains("vertices"))
        for (const Json& v : j.at("vertices")) g.graph.add_vertex(v.get<VertexId>());
    EdgeId next_id = 0;
    for (const Json& je : detail::require(j, "edges", "state")) {
        std::vector<VertexId> verts;
        for (const Json& v : detail::require(je, "vertices", "state edge"))
            verts.push_back(v.get<VertexId>());
        for (VertexId v : verts) g.graph.add_vertex(v);
        bool directed = je.value("directed", true);
        EdgeId id = je.value("id", next_id);
        g.graph.add_edge_with_id(id, verts, directed);
        next_id = std::max(next_id, id) + 1;
    }
    if (j.contains("labels"))
        for (const Json& jl : j.at("labels")) {
            VertexId v = detail::require(jl, "vertex", "state label").get<VertexId>();
            if (!g.graph.vertices().count(v))
                throw ParseError("state: label on unknown vertex " + std::to_string(v));
            g.graph.set_label(v, VertexLabel{detail::require(jl, "kind", "state label"),
                                             jl.value("phase", "0")});
        }
    if (j.contains("dummies"))
        for (const Json& v : j.at("dummies")) {
            g.graph.add_vertex(v.get<VertexId>());
            g.dummies.insert(v.get<VertexId>());
        }
    if (j.contains("boundary"))
        for (const Json& v : j.at("boundary")) g.boundary.push_back(v.get<VertexId>());
    auto violations = g.validate();
    if (!violations.empty()) throw ParseError("state: " + violations.front());
    return g;
}

// ============================================================================
// Rules
// ============================================================================
//
// {
//   "name": "chain",
//   "vars": ["x", "y", "z", "w"],                     // optional: pins indices
//   "lhs": [{"terms": ["x", "y"]}, {"terms": ["x", "z"]}],
//   "rhs": [{"terms": ["x", "z"]}, {"terms": ["x", "w"]}, {"terms": ["w", "y"]}],
//   "lhs_labels": {"s": {"kind": "Z", "phase_var": "a"}},   // or "phase": "1/2"
//   "rhs_labels": {"s": {"kind": "Z", "base": "0", "phase_vars": ["a", "b"]}},
//   "exact_degree": ["s"],
//   "distinct": [["x", "y"]]
// }
//
// Terms are variable names (strings) or {"const": N} for concrete vertex ids.
// A rule file is {"rules": [...]} or a bare array.

inline Json term_to_json(const RewriteRule& r, const Term& t) {
    if (t.is_const) return Json{{"const", t.value}};
    return Json(r.var_names.at(t.value));
}

inline Json rule_to_json(const RewriteRule& r) {
    Json j;
    j["name"] = r.name;
    j["vars"] = r.var_names;
    auto side = [&](const std::vector<PatternEdge>& es) {
        Json out = Json::array();
        for (const PatternEdge& e : es) {
            Json je;
            je["terms"] = Json::array();
            for (const Term& t : e.terms) je["terms"].push_back(term_to_json(r, t));
            if (!e.directed) je["directed"] = false;
            out.push_back(std::move(je));
        }
        return out;
    };
    j["lhs"] = side(r.lhs);
    j["rhs"] = side(r.rhs);
    if (!r.lhs_labels.empty()) {
        Json jl = Json::object();
        for (const auto& [v, c] : r.lhs_labels) {
            Json jc;
            jc["kind"] = c.kind;
            if (c.phase)
                jc["phase"] = c.phase->str();
            else
                jc["phase_var"] = c.phase_var;
            jl[r.var_names.at(v)] = std::move(jc);
        }
        j["lhs_labels"] = std::move(jl);
    }
    if (!r.rhs_labels.empty()) {
        Json jl = Json::object();
        for (const auto& [v, o] : r.rhs_labels) {
            Json jo;
            jo["kind"] = o.kind;
            jo["base"] = o.base.str();
            jo["phase_vars"] = o.phase_vars;
            jl[r.var_names.at(v)] = std::move(jo);
        }
        j["rhs_labels"] = std::move(jl);
    }
    if (!r.exact_degree.empty()) {
        Json je = Json::array();
        for (VarIndex v : r.exact_degree) je.push_back(r.var_names.at(v));
        j["exact_degree"] = std::move(je);
    }
    if (!r.distinct.empty()) {
        Json jd = Json::array();
        for (const auto& [a, b] : r.distinct)
            jd.push_back(Json::array({r.var_names.at(a), r.var_names.at(b)}));
        j["distinct"] = std::move(jd);
    }
    return j;
}

inline RewriteRule rule_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("rule: expected a JSON object");
    RewriteRule r;
    r.name = detail::require(j, "name", "rule").get<std::string>();
    if (j.contains("vars"))
        for (const Json& v : j.at("vars")) r.var(v.get<std::string>());
    auto parse_term = [&](const Json& jt) {
        if (jt.is_string()) {
            Term t;
            t.value = r.var(jt.get<std::string>());
            return t;
        }
        if (jt.is_object() && jt.contains("const"))
            return Term{true, jt.at("const").get<std::uint32_t>()};
        throw ParseError("rule " + r.name + ": term must be a variable name or {\"const\": N}");
    };
    auto parse_side = [&](const Json& js, const char* tag) {
        std::vector<PatternEdge> out;
        if (!js.is_array()) throw ParseError("rule " + r.name + ": " + tag + " must be an array");
        for (const Json& je : js) {
            PatternEdge e;
            for (const Json& jt : detail::require(je, "terms", "rule " + r.name + " pattern edge"))
                e.terms.push_back(parse_term(jt));
            e.directed = je.value("directed", true);
            out.push_back(std::move(e));
        }
        return out;
    };
    r.lhs = parse_side(detail::require(j, "lhs", "rule " + r.name), "lhs");
    r.rhs = parse_side(detail::require(j, "rhs", "rule " + r.name), "rhs");
    auto var_of = [&](const std::string& n) {
        auto v = r.find_var(n);
        if (!v) throw ParseError("rule " + r.name + ": unknown variable \"" + n + "\"");
        return *v;
    };
    if (j.contains("lhs_labels"))
        for (const auto& [name, jc] : j.at("lhs_labels").items()) {
            LabelConstraint c;
            c.kind = detail::require(jc, "kind", "rule " + r.name + " label").get<std::string>();
            if (jc.contains("phase"))
                c.phase = detail::phase_or_throw(jc.at("phase").get<std::string>(),
                                                 "rule " + r.name + " label");
            else
                c.phase_var = detail::require(jc, "phase_var", "rule " + r.name + " label")
                                  .get<std::string>();
            r.lhs_labels[var_of(name)] = std::move(c);
        }
    if (j.contains("rhs_labels"))
        for (const auto& [name, jo] : j.at("rhs_labels").items()) {
            LabelOutput o;
            o.kind = detail::require(jo, "kind", "rule " + r.name + " label").get<std::string>();
            o.base = detail::phase_or_throw(jo.value("base", "0"), "rule " + r.name + " label");
            if (jo.contains("phase_vars"))
                for (const Json& pv : jo.at("phase_vars")) o.phase_vars.push_back(pv.get<std::string>());
            r.rhs_labels[var_of(name)] = std::move(o);
        }
    if (j.contains("exact_degree"))
        for (const Json& v : j.at("exact_degree")) r.exact_degree.insert(var_of(v.get<std::string>()));
    if (j.contains("distinct"))
        for (const Json& jp : j.at("distinct")) {
            if (!jp.is_array() || jp.size() != 2)
                throw ParseError("rule " + r.name + ": distinct entries are pairs");
            r.add_distinct(var_of(jp.at(0).get<std::string>()), var_of(jp.at(1).get<std::string>()));
        }
    auto violations = r.validate();
    if (!violations.empty()) throw ParseError("rule " + r.name + ": " + violations.front());
    return r;
}

inline Json rules_to_json(const std::vector<RewriteRule>& rules) {
    Json j;
    j["rules"] = Json::array();
    for (const RewriteRule& r : rules) j["rules"].push_back(rule_to_json(r));
    return j;
}

inline std::vector<RewriteRule> rules_from_json(const Json& j) {
    const Json& arr = j.is_array() ? j : detail::require(j, "rules", "rule file");
    if (!arr.is_array()) throw ParseError("rule file: \"rules\" must be an array");
    std::vector<RewriteRule> out;
    std::set<std::string> names;
    for (const Json& jr : arr) {
        out.push_back(rule_from_json(jr));
        if (!names.insert(out.back().name).second)
            throw ParseError("rule file: duplicate rule name \"" + out.back().name + "\"");
    }
    return out;
}

// ============================================================================
// ZX diagrams
// ============================================================================
//
// {
//   "spiders": [{"id": "s0", "color": "Z", "phase": "1/2"}, ...],
//   "wires": [["s0", "in0"], ...],
//   "inputs": ["in0"],
//   "outputs": ["out0"]
// }
//
// Phases are rational multiples of pi written "p" or "p/q".

inline Json zx_to_json(const ZXDiagram& d) {
    Json j;
    j["spiders"] = Json::array();
    for (const Spider& s : d.spiders) {
        Json js;
        js["id"] = s.id;
        js["color"] = to_string(s.color);
        js["phase"] = s.phase.str();
        j["spiders"].push_back(std::move(js));
    }
    j["wires"] = Json::array();
    for (const auto& [a, b] : d.wires) j["wires"].push_back(Json::array({a, b}));
    j["inputs"] = d.inputs;
    j["outputs"] = d.outputs;
    return j;
}

inline ZXDiagram zx_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("zx diagram: expected a JSON object");
    ZXDiagram d;
    if (j.contains("spiders"))
        for (const Json& js : j.at("spiders")) {
            Spider s;
            s.id = detail::require(js, "id", "zx spider").get<std::string>();
            s.color = detail::color_or_throw(
                detail::require(js, "color", "zx spider").get<std::string>(), "zx spider");
            s.phase = detail::phase_or_throw(js.value("phase", "0"), "zx spider");
            d.spiders.push_back(std::move(s));
        }
    if (j.contains("wires"))
        for (const Json& jw : j.at("wires")) {
            if (!jw.is_array() || jw.size() != 2)
                throw ParseError("zx diagram: wires are pairs of endpoint ids");
            d.wires.emplace_back(jw.at(0).get<std::string>(), jw.at(1).get<std::string>());
        }
    if (j.contains("inputs"))
        for (const Json& v : j.at("inputs")) d.inputs.push_back(v.get<std::string>());
    if (j.contains("outputs"))
        for (const Json& v : j.at("outputs")) d.outputs.push_back(v.get<std::string>());
    auto violations = d.validate();
    if (!violations.empty()) throw ParseError("zx diagram: " + violations.front());
    return d;
}

// ============================================================================
// Proof graphs
// ============================================================================

inline Json proof_to_json(const ProofGraph& g) {
    Json j;
    j["nodes"] = Json::array();
    for (const ProofNode& n : g.nodes) {
        Json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        jn["statement"] = n.statement;
        jn["rule"] = n.rule_name;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = Json::array();
    for (const ProofEdge& e : g.edges) {
        Json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["kind"] = to_string(e.kind);
        j["edges"].push_back(std::move(je));
    }
    return j;
}

inline ProofNodeKind parse_proof_node_kind(const std::string& s) {
    if (s == "axiom") return ProofNodeKind::Axiom;
    if (s == "critical_pair_lemma") return ProofNodeKind::CriticalPairLemma;
    if (s == "substitution_lemma") return ProofNodeKind::SubstitutionLemma;
    if (s == "hypothesis") return ProofNodeKind::Hypothesis;
    throw ParseError("proof graph: unknown node kind \"" + s + "\"");
}

inline ProofGraph proof_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("proof graph: expected a JSON object");
    ProofGraph g;
    for (const Json& jn : detail::require(j, "nodes", "proof graph")) {
        ProofNode n;
        n.id = detail::require(jn, "id", "proof node").get<std::size_t>();
        n.kind = parse_proof_node_kind(detail::require(jn, "kind", "proof node").get<std::string>());
        n.statement = jn.value("statement", "");
        n.rule_name = jn.value("rule", "");
        g.nodes.push_back(std::move(n));
    }
    if (j.contains("edges"))
        for (const Json& je : j.at("edges")) {
            ProofEdge e;
            e.from = detail::require(je, "from", "proof edge").get<std::size_t>();
            e.to = detail::require(je, "to", "proof edge").get<std::size_t>();
            std::string k = je.value("kind", "substitution");
            if (k == "substitution")
                e.kind = ProofEdgeKind::Substitution;
            else if (k == "derived_inference")
                e.kind = ProofEdgeKind::DerivedInference;
            else
                throw ParseError("proof graph: unknown edge kind \"" + k + "\"");
            g.edges.push_back(e);
        }
    try {
        validate_proof_graph(g);
    } catch (const Error& e) {
        throw ParseError(std::string("proof graph: ") + e.what());
    }
    return g;
}

// ============================================================================
// Multiway evolutions and causal graphs (export)
// ============================================================================

inline Json event_to_json(const Event& e) {
    Json j;
    j["id"] = e.id;
    j["rule"] = e.rule_name;
    j["from"] = e.from_state;
    j["to"] = e.to_state;
    j["consumed"] = Json::array();
    for (EdgeId x : e.consumed) j["consumed"].push_back(x);
    j["created"] = Json::array();
    for (EdgeId x : e.created) j["created"].push_back(x);
    j["step"] = e.step;
    return j;
}

inline Json multiway_to_json(const MultiwayGraph& mw) {
    Json j;
    j["initial"] = mw.initial;
    j["steps"] = mw.steps;
    j["complete"] = mw.complete;
    j["states"] = Json::array();
    for (const auto& [key, rep] : mw.states) {
        Json js;
        js["key"] = key;
        js["generation"] = mw.generation.at(key);
        js["graph"] = state_to_json(rep);
        j["states"].push_back(std::move(js));
    }
    j["events"] = Json::array();
    for (const Event& e : mw.events) j["events"].push_back(event_to_json(e));
    return j;
}

inline Json causal_to_json(const CausalGraph& cg) {
    Json j;
    j["events"] = Json::array();
    for (const Event& e : cg.events) j["events"].push_back(event_to_json(e));
    j["causal_edges"] = Json::array();
    for (const auto& [a, b] : cg.causal_edges) j["causal_edges"].push_back(Json::array({a, b}));
    return j;
}

// ============================================================================
// Benchmark reports
// ============================================================================
//
// wall_seconds fields are the only non-deterministic content; consumers that
// compare runs strip them.

inline Json outcome_to_json(const StrategyOutcome& o) {
    Json j;
    j["found"] = o.found;
    j["budget_exhausted"] = o.budget_exhausted;
    j["expansions"] = o.expansions;
    j["proof_length"] = o.proof_length;
    j["wall_seconds"] = o.wall_seconds;
    return j;
}

inline Json report_to_json(const CompareReport& r) {
    Json j;
    j["records"] = Json::array();
    for (const CompareRecord& rec : r.records) {
        Json jr;
        jr["instance"] = rec.instance;
        jr["causal"] = outcome_to_json(rec.causal);
        jr["bfs"] = outcome_to_json(rec.bfs);
        j["records"].push_back(std::move(jr));
    }
    j["causal_not_worse"] = r.causal_not_worse;
    j["causal_strictly_fewer"] = r.causal_strictly_fewer;
    j["mean_expansion_ratio"] = r.mean_expansion_ratio;
    j["mean_length_ratio"] = r.mean_length_ratio;
    return j;
}

// Canonical textual form used for files and stdout.
inline std::string to_text(const Json& j) { return detail::dump_sorted(j); }

}  // namespace mwcau
