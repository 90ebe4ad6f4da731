#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwcau/hypergraph.hpp"
#include "mwcau/match.hpp"
#include "mwcau/rules.hpp"

namespace mwcau {

// Outcome of one rewrite: every assigned lhs instance consumed, one fresh
// edge per rhs pattern edge created. Vertices are never deleted here; those
// left without incidences become isolated (pruned by the state layer).
struct RewriteResult {
    OpenHypergraph result;
    std::set<EdgeId> consumed;
    std::set<EdgeId> created;
    std::set<VertexId> fresh_vertices;
};

namespace detail {

inline void check_match(const RewriteRule& rule, const OpenHypergraph& host, const Match& m) {
    if (m.edge_assignment.size() != rule.lhs.size())
        throw MatchError("match arity mismatch for rule " + rule.name);
    std::set<EdgeId> seen;
    for (std::size_t i = 0; i < rule.lhs.size(); ++i) {
        const Hyperedge* he = host.graph.find_edge(m.edge_assignment[i]);
        if (!he)
            throw MatchError("stale match: edge " + std::to_string(m.edge_assignment[i]) +
                             " not in host");
        if (!seen.insert(he->id).second)
            throw MatchError("match assigns edge " + std::to_string(he->id) + " twice");
        const PatternEdge& pat = rule.lhs[i];
        if (he->directed != pat.directed || he->arity() != pat.terms.size())
            throw MatchError("match shape mismatch at lhs slot " + std::to_string(i));
        auto fits = [&](bool flipped) {
            for (std::size_t k = 0; k < pat.terms.size(); ++k) {
                VertexId hv =
                    flipped ? he->vertices[pat.terms.size() - 1 - k] : he->vertices[k];
                const Term& t = pat.terms[k];
                if (t.is_const) {
                    if (t.value != hv) return false;
                } else {
                    auto it = m.binding.find(t.value);
                    if (it == m.binding.end() || it->second != hv) return false;
                }
            }
            return true;
        };
        if (!fits(false) && !(pat.directed ? false : fits(true)))
            throw MatchError("binding does not map lhs slot " + std::to_string(i) +
                             " onto its host edge");
    }
}

}  // namespace detail

inline RewriteResult apply_match(const RewriteRule& rule, const OpenHypergraph& host,
                                 const Match& m) {
    rule.ensure_valid();
    detail::check_match(rule, host, m);

    RewriteResult r;
    r.result = host;
    // Fresh ids allocated before removal so created ids never collide with
    // consumed ones.
    VertexId next_v = r.result.graph.next_vertex_id();
    EdgeId next_e = r.result.graph.next_edge_id();

    for (EdgeId id : m.edge_assignment) {
        r.result.graph.remove_edge(id);
        r.consumed.insert(id);
    }

    std::map<VarIndex, VertexId> resolve(m.binding.begin(), m.binding.end());
    for (VarIndex v : rule.fresh_vars_in_order()) {
        resolve[v] = next_v;
        r.result.graph.add_vertex(next_v);
        r.fresh_vertices.insert(next_v);
        ++next_v;
    }

    for (const auto& pat : rule.rhs) {
        std::vector<VertexId> verts;
        for (const auto& t : pat.terms)
            verts.push_back(t.is_const ? t.value : resolve.at(t.value));
        r.result.graph.add_edge_with_id(next_e, std::move(verts), pat.directed);
        r.created.insert(next_e);
        ++next_e;
    }

    for (const auto& [v, o] : rule.rhs_labels) {
        Phase p = o.base;
        for (const auto& name : o.phase_vars) {
            auto it = m.phase_binding.find(name);
            if (it == m.phase_binding.end())
                throw MatchError("unbound phase variable " + name + " in rule " + rule.name);
            p = p + it->second;
        }
        r.result.graph.set_label(resolve.at(v), VertexLabel{o.kind, p.str()});
    }
    return r;
}

inline RewriteResult apply_match(const RewriteRule& rule, const Hypergraph& host,
                                 const Match& m) {
    return apply_match(rule, OpenHypergraph{host, {}, {}}, m);
}

// A rewrite together with its context, for independence tests.
struct AppliedRewrite {
    OpenHypergraph before;
    RewriteRule rule;
    Match match;
    RewriteResult res;
};

inline AppliedRewrite apply_rewrite(const RewriteRule& rule, const OpenHypergraph& host,
                                    const Match& m) {
    return AppliedRewrite{host, rule, m, apply_match(rule, host, m)};
}

inline AppliedRewrite apply_rewrite(const RewriteRule& rule, const Hypergraph& host,
                                    const Match& m) {
    return apply_rewrite(rule, OpenHypergraph{host, {}, {}}, m);
}

// True iff the second rewrite consumes nothing the first created, i.e. the
// pair commutes (the causal test fails). The second rewrite must have been
// applied to the first one's literal output (same edge ids).
inline bool sequentially_independent(const AppliedRewrite& e1, const AppliedRewrite& e2) {
    if (!(e2.before == e1.res.result))
        throw Error("sequentially_independent: e2 was not applied to e1's output");
    for (EdgeId id : e2.res.consumed)
        if (e1.res.created.count(id)) return false;
    return true;
}

}  // namespace mwcau
