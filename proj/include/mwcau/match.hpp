#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwcau/hypergraph.hpp"
#include "mwcau/phase.hpp"
#include "mwcau/rules.hpp"

namespace mwcau {

// A complete occurrence of a rule's lhs in a host. Variable binding need not
// be injective on vertices; the edge assignment is injective on edge
// instances. Phase bindings are populated only by label-constrained rules.
struct Match {
    std::string rule_name;
    std::map<VarIndex, VertexId> binding;
    std::map<std::string, Phase> phase_binding;
    std::vector<EdgeId> edge_assignment;  // lhs slot index -> host edge id

    auto operator<=>(const Match&) const = default;
};

namespace detail {

struct Matcher {
    const RewriteRule& rule;
    const OpenHypergraph& host;
    std::vector<const Hyperedge*> host_edges;  // sorted by id
    std::vector<std::optional<VertexId>> binding;
    std::map<std::string, Phase> phase_binding;
    std::set<EdgeId> used;
    std::vector<EdgeId> assignment;
    std::vector<Match> out;

    Matcher(const RewriteRule& r, const OpenHypergraph& h) : rule(r), host(h) {
        for (const auto& e : h.graph.edges()) host_edges.push_back(&e);
        std::sort(host_edges.begin(), host_edges.end(),
                  [](const Hyperedge* a, const Hyperedge* b) { return a->id < b->id; });
        binding.resize(r.var_names.size());
    }

    // Try binding one term to one host vertex; records undo entries.
    bool bind_term(const Term& t, VertexId hv, std::vector<VarIndex>& bound_here,
                   std::vector<std::string>& phases_here) {
        if (t.is_const) return t.value == hv;
        auto& slot = binding[t.value];
        if (slot) return *slot == hv;
        // Label constraint gate.
        auto it = rule.lhs_labels.find(t.value);
        if (it != rule.lhs_labels.end()) {
            const VertexLabel* l = host.graph.label(hv);
            if (!l || l->kind != it->second.kind) return false;
            auto hp = Phase::parse(l->phase);
            if (!hp) return false;
            if (it->second.phase) {
                if (*hp != *it->second.phase) return false;
            } else {
                auto pit = phase_binding.find(it->second.phase_var);
                if (pit != phase_binding.end()) {
                    if (pit->second != *hp) return false;
                } else {
                    phase_binding.emplace(it->second.phase_var, *hp);
                    phases_here.push_back(it->second.phase_var);
                }
            }
        }
        slot = hv;
        bound_here.push_back(t.value);
        return true;
    }

    void undo(const std::vector<VarIndex>& bound_here,
              const std::vector<std::string>& phases_here) {
        for (VarIndex v : bound_here) binding[v].reset();
        for (const auto& p : phases_here) phase_binding.erase(p);
    }

    bool try_edge(const PatternEdge& pat, const Hyperedge& he, bool flipped,
                  std::vector<VarIndex>& bound_here, std::vector<std::string>& phases_here) {
        for (std::size_t k = 0; k < pat.terms.size(); ++k) {
            VertexId hv = flipped ? he.vertices[pat.terms.size() - 1 - k] : he.vertices[k];
            if (!bind_term(pat.terms[k], hv, bound_here, phases_here)) {
                undo(bound_here, phases_here);
                bound_here.clear();
                phases_here.clear();
                return false;
            }
        }
        return true;
    }

    void search(std::size_t slot) {
        if (slot == rule.lhs.size()) {
            if (accept()) emit();
            return;
        }
        const PatternEdge& pat = rule.lhs[slot];
        for (const Hyperedge* he : host_edges) {
            if (used.count(he->id)) continue;
            if (he->directed != pat.directed || he->arity() != pat.terms.size()) continue;
            // Undirected pattern edges match in both orientations; skip the
            // flipped attempt when it is identical (host self-loop).
            int orientations = (!pat.directed && he->vertices[0] != he->vertices[1]) ? 2 : 1;
            for (int o = 0; o < orientations; ++o) {
                std::vector<VarIndex> bound_here;
                std::vector<std::string> phases_here;
                if (!try_edge(pat, *he, o == 1, bound_here, phases_here)) continue;
                used.insert(he->id);
                assignment.push_back(he->id);
                search(slot + 1);
                assignment.pop_back();
                used.erase(he->id);
                undo(bound_here, phases_here);
            }
        }
    }

    bool accept() const {
        for (const auto& [a, b] : rule.distinct) {
            if (a >= binding.size() || b >= binding.size()) continue;
            if (binding[a] && binding[b] && *binding[a] == *binding[b]) return false;
        }
        for (VarIndex v : rule.exact_degree) {
            if (v >= binding.size() || !binding[v]) continue;
            for (EdgeId e : host.graph.incident_edges(*binding[v]))
                if (!used.count(e)) return false;
        }
        return dummy_degrees_ok();
    }

    // The open-typing guard: a rewrite may touch a dummy vertex only if its
    // single incident edge is consumed and exactly one created edge
    // re-attaches it, so the boundary interface survives intact.
    bool dummy_degrees_ok() const {
        if (host.dummies.empty()) return true;
        std::map<VertexId, long> delta;  // dummy -> created - consumed incidences
        for (EdgeId id : used) {
            const Hyperedge* he = host.graph.find_edge(id);
            for (VertexId v : he->vertices)
                if (host.is_dummy(v)) delta[v] -= 1;
        }
        for (const auto& e : rule.rhs)
            for (const auto& t : e.terms) {
                VertexId hv;
                if (t.is_const)
                    hv = t.value;
                else if (t.value < binding.size() && binding[t.value])
                    hv = *binding[t.value];
                else
                    continue;  // fresh variable, never a dummy
                if (host.is_dummy(hv)) delta[hv] += 1;
            }
        for (const auto& [v, d] : delta)
            if (d != 0) return false;
        // Dummies stay unlabeled: reject if a bound variable with an rhs
        // label output sits on one.
        for (const auto& [v, o] : rule.rhs_labels)
            if (v < binding.size() && binding[v] && host.is_dummy(*binding[v])) return false;
        return true;
    }

    void emit() {
        Match m;
        m.rule_name = rule.name;
        for (VarIndex v = 0; v < binding.size(); ++v)
            if (binding[v]) m.binding[v] = *binding[v];
        m.phase_binding = phase_binding;
        m.edge_assignment = assignment;
        // Two orientations of an undirected edge can coincide after binding.
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
    }
};

}  // namespace detail

// Enumerates every match of the rule's lhs in the host, in deterministic
// order (lexicographic in the edge-assignment tuple, host edges by id).
inline std::vector<Match> find_matches(const RewriteRule& rule, const OpenHypergraph& host) {
    rule.ensure_valid();
    detail::Matcher m(rule, host);
    m.search(0);
    return std::move(m.out);
}

inline std::vector<Match> find_matches(const RewriteRule& rule, const Hypergraph& host) {
    return find_matches(rule, OpenHypergraph{host, {}, {}});
}

}  // namespace mwcau
