#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwcau/canonical.hpp"
#include "mwcau/hypergraph.hpp"
#include "mwcau/phase.hpp"

namespace mwcau {

using VarIndex = std::uint32_t;

// One endpoint of a pattern edge: either a variable (index into the rule's
// variable table) or a constant host vertex id (matches only itself).
struct Term {
    bool is_const = false;
    std::uint32_t value = 0;

    auto operator<=>(const Term&) const = default;
};

struct PatternEdge {
    std::vector<Term> terms;
    bool directed = true;

    auto operator<=>(const PatternEdge&) const = default;
};

// Requirement on the label of a matched vertex. Either a concrete phase or
// a named phase variable bound during matching (consistently across uses).
struct LabelConstraint {
    std::string kind;
    std::optional<Phase> phase;  // concrete, or
    std::string phase_var;       // bind; exactly one of the two is active

    auto operator<=>(const LabelConstraint&) const = default;
};

// Label written by the rhs: kind plus phase = base + sum of bound phase
// variables (a multiset; repeated names add twice).
struct LabelOutput {
    std::string kind;
    Phase base;
    std::vector<std::string> phase_vars;

    auto operator<=>(const LabelOutput&) const = default;
};

// A rewrite rule: consume one host edge instance per lhs pattern edge,
// create one fresh edge per rhs pattern edge. The interface consists of the
// variables shared by both sides; rhs-only variables create fresh vertices,
// lhs-only variables leave their vertices behind (possibly isolated).
struct RewriteRule {
    std::string name;
    std::vector<PatternEdge> lhs;
    std::vector<PatternEdge> rhs;
    std::vector<std::string> var_names;  // index -> name

    // Optional constraints used by labeled (spider) rewriting.
    std::map<VarIndex, LabelConstraint> lhs_labels;
    std::map<VarIndex, LabelOutput> rhs_labels;
    // Variables whose host vertex must have its complete incidence consumed
    // by the match (every incident host edge assigned to some lhs slot).
    std::set<VarIndex> exact_degree;
    // Pairs of variables that must bind distinct host vertices.
    std::set<std::pair<VarIndex, VarIndex>> distinct;

    VarIndex var(const std::string& n) {
        for (VarIndex i = 0; i < var_names.size(); ++i)
            if (var_names[i] == n) return i;
        var_names.push_back(n);
        return static_cast<VarIndex>(var_names.size() - 1);
    }

    // Stored normalized so rule equality does not depend on insertion order.
    void add_distinct(VarIndex a, VarIndex b) {
        distinct.insert({std::min(a, b), std::max(a, b)});
    }

    std::optional<VarIndex> find_var(const std::string& n) const {
        for (VarIndex i = 0; i < var_names.size(); ++i)
            if (var_names[i] == n) return i;
        return std::nullopt;
    }

    static std::set<VarIndex> vars_of(const std::vector<PatternEdge>& side) {
        std::set<VarIndex> out;
        for (const auto& e : side)
            for (const auto& t : e.terms)
                if (!t.is_const) out.insert(t.value);
        return out;
    }

    std::set<VarIndex> lhs_vars() const { return vars_of(lhs); }
    std::set<VarIndex> rhs_vars() const { return vars_of(rhs); }

    // The preserved interface K: variables on both sides.
    std::set<VarIndex> interface_vars() const {
        std::set<VarIndex> l = lhs_vars(), out;
        for (VarIndex v : rhs_vars())
            if (l.count(v)) out.insert(v);
        return out;
    }

    // rhs-only variables in order of first appearance (scanning rhs edges
    // left to right); fresh vertex ids are allocated in this order.
    std::vector<VarIndex> fresh_vars_in_order() const {
        std::set<VarIndex> l = lhs_vars(), seen;
        std::vector<VarIndex> out;
        for (const auto& e : rhs)
            for (const auto& t : e.terms)
                if (!t.is_const && !l.count(t.value) && seen.insert(t.value).second)
                    out.push_back(t.value);
        return out;
    }

    std::size_t rhs_occurrences(VarIndex v) const {
        std::size_t n = 0;
        for (const auto& e : rhs)
            for (const auto& t : e.terms)
                if (!t.is_const && t.value == v) ++n;
        return n;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> violations;
        auto check_side = [&](const std::vector<PatternEdge>& side, const char* tag) {
            for (const auto& e : side) {
                if (e.terms.empty())
                    violations.push_back(std::string(tag) + " pattern edge has arity 0");
                if (!e.directed && e.terms.size() != 2)
                    violations.push_back(std::string(tag) +
                                         " undirected pattern edge must have arity 2");
                for (const auto& t : e.terms)
                    if (!t.is_const && t.value >= var_names.size())
                        violations.push_back(std::string(tag) + " references unknown variable");
            }
        };
        check_side(lhs, "lhs");
        check_side(rhs, "rhs");
        std::set<VarIndex> l = lhs_vars(), r = rhs_vars();
        for (const auto& [v, c] : lhs_labels) {
            if (!l.count(v))
                violations.push_back("label constraint on non-lhs variable " + var_name(v));
            if (c.phase.has_value() == !c.phase_var.empty())
                violations.push_back("label constraint on " + var_name(v) +
                                     " must have exactly one of phase/phase_var");
        }
        for (const auto& [v, o] : rhs_labels)
            if (!r.count(v))
                violations.push_back("label output on non-rhs variable " + var_name(v));
        for (VarIndex v : exact_degree)
            if (!l.count(v))
                violations.push_back("exact-degree marker on non-lhs variable " + var_name(v));
        for (const auto& [a, b] : distinct)
            if (a == b) violations.push_back("distinct pair relates a variable to itself");
        return violations;
    }

    void ensure_valid() const {
        auto v = validate();
        if (!v.empty()) throw ValidationError("rule " + name + ": " + v.front());
    }

    std::string var_name(VarIndex v) const {
        return v < var_names.size() ? var_names[v] : ("?" + std::to_string(v));
    }

    bool operator==(const RewriteRule&) const = default;
};

// Convenience term constructors for programmatic rule assembly.
inline Term vterm(RewriteRule& r, const std::string& name) { return Term{false, r.var(name)}; }
inline Term cterm(VertexId v) { return Term{true, v}; }

inline std::string term_str(const RewriteRule& r, const Term& t) {
    return t.is_const ? std::to_string(t.value) : r.var_name(static_cast<VarIndex>(t.value));
}

// One-line display form, e.g. "grow: {(x,y)} => {(x,z),(z,y)}". Undirected
// edges use angle brackets; label constraints and outputs are appended.
inline std::string rule_str(const RewriteRule& r) {
    auto side = [&](const std::vector<PatternEdge>& edges) {
        std::string s = "{";
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (i) s += ",";
            s += edges[i].directed ? "(" : "<";
            for (std::size_t k = 0; k < edges[i].terms.size(); ++k) {
                if (k) s += ",";
                s += term_str(r, edges[i].terms[k]);
            }
            s += edges[i].directed ? ")" : ">";
        }
        return s + "}";
    };
    std::string s = r.name + ": " + side(r.lhs) + " => " + side(r.rhs);
    for (const auto& [v, c] : r.lhs_labels)
        s += " | " + r.var_name(v) + ":" + c.kind + "[" + (c.phase ? c.phase->str() : c.phase_var) +
             "]";
    for (const auto& [v, out] : r.rhs_labels) {
        s += " ! " + r.var_name(v) + ":" + out.kind + "[" + out.base.str();
        for (const auto& pv : out.phase_vars) s += "+" + pv;
        s += "]";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Rule identity up to variable renaming and edge reordering.
//
// The rule is encoded as a colored graph — variable/constant/phase-variable
// nodes, lhs/rhs edges tagged by side, label constraints and outputs attached
// through colors and auxiliary edges — and canonicalized. Equal keys iff the
// rules differ only by renaming and listing order.
// ---------------------------------------------------------------------------
inline CanonicalKey rule_canonical_key(const RewriteRule& rule) {
    detail::ColoredInput in;
    std::map<VarIndex, std::size_t> var_node;
    std::map<VertexId, std::size_t> const_node;
    std::map<std::string, std::size_t> pvar_node;

    auto add_node = [&](const std::string& color) {
        in.vertex_color_keys.push_back(color);
        return in.n++;
    };
    auto pvar = [&](const std::string& name) {
        auto it = pvar_node.find(name);
        if (it != pvar_node.end()) return it->second;
        return pvar_node[name] = add_node("pv");
    };

    std::set<VarIndex> all_vars;
    for (const auto& side : {rule.lhs, rule.rhs})
        for (const auto& e : side)
            for (const auto& t : e.terms)
                if (!t.is_const) all_vars.insert(t.value);

    for (VarIndex v : all_vars) {
        std::string color = "v";
        if (rule.exact_degree.count(v)) color += "!";
        if (auto it = rule.lhs_labels.find(v); it != rule.lhs_labels.end()) {
            color += "|L:" + detail::escape_color(it->second.kind);
            if (it->second.phase) color += "=" + it->second.phase->str();
        }
        if (auto it = rule.rhs_labels.find(v); it != rule.rhs_labels.end())
            color += "|R:" + detail::escape_color(it->second.kind) + "+" + it->second.base.str();
        var_node[v] = add_node(color);
    }

    auto term_node = [&](const Term& t) -> std::size_t {
        if (!t.is_const) return var_node.at(t.value);
        auto it = const_node.find(t.value);
        if (it != const_node.end()) return it->second;
        return const_node[t.value] = add_node("c:" + std::to_string(t.value));
    };

    auto add_side = [&](const std::vector<PatternEdge>& side, const std::string& tag) {
        for (const auto& e : side) {
            detail::ColoredInput::Edge ce;
            ce.directed = e.directed;
            ce.color_key = tag;
            for (const auto& t : e.terms) ce.verts.push_back(term_node(t));
            in.edges.push_back(std::move(ce));
        }
    };
    add_side(rule.lhs, "L");
    add_side(rule.rhs, "R");

    for (const auto& [v, c] : rule.lhs_labels)
        if (!c.phase_var.empty())
            in.edges.push_back({{var_node.at(v), pvar(c.phase_var)}, true, "lp"});
    for (const auto& [v, o] : rule.rhs_labels)
        for (const auto& name : o.phase_vars)
            in.edges.push_back({{var_node.at(v), pvar(name)}, true, "rp"});
    for (const auto& [a, b] : rule.distinct)
        if (var_node.count(a) && var_node.count(b))
            in.edges.push_back({{var_node.at(a), var_node.at(b)}, false, "ne"});

    detail::Canonicalizer canon(in);
    canon.run();
    return canon.certificate_bytes();
}

inline bool rules_isomorphic(const RewriteRule& a, const RewriteRule& b) {
    return rule_canonical_key(a) == rule_canonical_key(b);
}

}  // namespace mwcau
