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

// One aligned edge pair in a concurrent composition: pattern edge `rhs1` of
// the first rule is identified with pattern edge `lhs2` of the second.
// Undirected pairs may align reversed.
struct OverlapEntry {
    std::size_t rhs1 = 0;
    std::size_t lhs2 = 0;
    bool flipped = false;

    auto operator<=>(const OverlapEntry&) const = default;
};

using Overlap = std::vector<OverlapEntry>;

namespace detail {

// Union-find over both rules' variables; a class may pin a constant.
struct Unifier {
    std::vector<std::size_t> parent;
    std::vector<std::optional<VertexId>> constant;

    explicit Unifier(std::size_t n) : parent(n), constant(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (constant[a] && constant[b] && *constant[a] != *constant[b])
            throw CompositionError("overlap unifies two distinct constants");
        if (constant[b] && !constant[a]) std::swap(a, b);
        parent[b] = a;
    }

    void pin(std::size_t x, VertexId c) {
        x = find(x);
        if (constant[x] && *constant[x] != c)
            throw CompositionError("overlap unifies two distinct constants");
        constant[x] = c;
    }
};

// Phase value as an affine expression: exact base plus a multiset of phase
// variables (bound at match time).
struct PhaseExpr {
    Phase base;
    std::vector<std::string> vars;

    bool operator==(const PhaseExpr&) const = default;
};

inline std::set<std::string> phase_names(const RewriteRule& r) {
    std::set<std::string> out;
    for (const auto& [v, c] : r.lhs_labels)
        if (!c.phase_var.empty()) out.insert(c.phase_var);
    for (const auto& [v, o] : r.rhs_labels) out.insert(o.phase_vars.begin(), o.phase_vars.end());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parallel composition: disjoint union of the two rules with variables (and
// phase variables) renamed apart. Applying the result consumes one match of
// each side at once.
// ---------------------------------------------------------------------------
inline RewriteRule compose_parallel(const RewriteRule& p1, const RewriteRule& p2) {
    p1.ensure_valid();
    p2.ensure_valid();
    RewriteRule out;
    out.name = p1.name + "+" + p2.name;

    std::vector<VarIndex> map1(p1.var_names.size()), map2(p2.var_names.size());
    for (VarIndex v = 0; v < p1.var_names.size(); ++v) map1[v] = out.var(p1.var_names[v]);
    for (VarIndex v = 0; v < p2.var_names.size(); ++v) {
        std::string n = p2.var_names[v];
        while (out.find_var(n)) n += "'";
        map2[v] = out.var(n);
    }
    std::set<std::string> taken = detail::phase_names(p1);
    std::map<std::string, std::string> pmap;
    for (const std::string& n : detail::phase_names(p2)) {
        std::string r = n;
        while (taken.count(r)) r += "'";
        pmap[n] = r;
    }

    auto map_edge = [](const PatternEdge& pe, const std::vector<VarIndex>& vm) {
        PatternEdge e;
        e.directed = pe.directed;
        for (const Term& t : pe.terms)
            e.terms.push_back(t.is_const ? t : Term{false, vm[t.value]});
        return e;
    };
    for (const auto& pe : p1.lhs) out.lhs.push_back(map_edge(pe, map1));
    for (const auto& pe : p2.lhs) out.lhs.push_back(map_edge(pe, map2));
    for (const auto& pe : p1.rhs) out.rhs.push_back(map_edge(pe, map1));
    for (const auto& pe : p2.rhs) out.rhs.push_back(map_edge(pe, map2));

    for (const auto& [v, c] : p1.lhs_labels) out.lhs_labels[map1[v]] = c;
    for (const auto& [v, c] : p2.lhs_labels) {
        LabelConstraint cc = c;
        if (!cc.phase_var.empty()) cc.phase_var = pmap.at(cc.phase_var);
        out.lhs_labels[map2[v]] = cc;
    }
    for (const auto& [v, o] : p1.rhs_labels) out.rhs_labels[map1[v]] = o;
    for (const auto& [v, o] : p2.rhs_labels) {
        LabelOutput oo = o;
        for (auto& n : oo.phase_vars) n = pmap.at(n);
        out.rhs_labels[map2[v]] = oo;
    }
    for (VarIndex v : p1.exact_degree) out.exact_degree.insert(map1[v]);
    for (VarIndex v : p2.exact_degree) out.exact_degree.insert(map2[v]);
    for (const auto& [a, b] : p1.distinct) out.add_distinct(map1[a], map1[b]);
    for (const auto& [a, b] : p2.distinct) out.add_distinct(map2[a], map2[b]);
    return out;
}

// ---------------------------------------------------------------------------
// Concurrent composition along an overlap: the second rule's matched edges
// split into the overlap (consumed from what the first rule just created) and
// a residue (consumed from the surrounding host). One application of the
// result is equivalent to applying p1 then p2 with p2's match consuming
// exactly the overlapped created edges.
//
// Label handling: a second-rule constraint that lands on a vertex the first
// rule labels is discharged statically (its phase variable becomes an alias
// for the written phase expression); one landing on a surviving host vertex
// is carried over. Combinations that cannot be expressed as a single rule
// (e.g. a concrete phase test against an open phase sum) are rejected with
// CompositionError, as are overlaps that would break the exact-degree or
// distinctness guards.
// ---------------------------------------------------------------------------
inline RewriteRule compose_concurrent(const RewriteRule& p1, const RewriteRule& p2,
                                      const Overlap& overlap) {
    p1.ensure_valid();
    p2.ensure_valid();
    if (overlap.empty()) throw CompositionError("overlap must be nonempty");
    std::set<std::size_t> ov1, ov2;
    for (const auto& e : overlap) {
        if (e.rhs1 >= p1.rhs.size() || e.lhs2 >= p2.lhs.size())
            throw CompositionError("overlap index out of range");
        if (!ov1.insert(e.rhs1).second || !ov2.insert(e.lhs2).second)
            throw CompositionError("overlap is not injective");
        const PatternEdge& a = p1.rhs[e.rhs1];
        const PatternEdge& b = p2.lhs[e.lhs2];
        if (a.directed != b.directed || a.terms.size() != b.terms.size())
            throw CompositionError("overlapped edges have incompatible shape");
        if (e.flipped && a.directed)
            throw CompositionError("flipped overlap entry on a directed edge");
    }

    // Unify endpoint terms position by position.
    std::size_t n1 = p1.var_names.size();
    detail::Unifier uf(n1 + p2.var_names.size());
    auto node = [&](bool second, VarIndex v) { return (second ? n1 : 0) + v; };
    for (const auto& ov : overlap) {
        const auto& ta = p1.rhs[ov.rhs1].terms;
        const auto& tb = p2.lhs[ov.lhs2].terms;
        for (std::size_t k = 0; k < ta.size(); ++k) {
            const Term& a = ta[k];
            const Term& b = ov.flipped ? tb[tb.size() - 1 - k] : tb[k];
            if (a.is_const && b.is_const) {
                if (a.value != b.value)
                    throw CompositionError("overlap unifies two distinct constants");
            } else if (a.is_const) {
                uf.pin(node(true, b.value), a.value);
            } else if (b.is_const) {
                uf.pin(node(false, a.value), b.value);
            } else {
                uf.unite(node(false, a.value), node(true, b.value));
            }
        }
    }

    // A variable the first rule creates fresh always binds a brand-new
    // vertex, so its class has no other possible realization: reject classes
    // that pin it to a constant, merge it with another first-rule variable,
    // or consume from it with residue slots (host edges never reach a fresh
    // vertex).
    std::set<std::size_t> fresh_roots;
    {
        std::set<VarIndex> l1 = p1.lhs_vars(), all1 = l1;
        std::set<VarIndex> r1 = p1.rhs_vars();
        all1.insert(r1.begin(), r1.end());
        std::map<std::size_t, int> members;
        for (VarIndex v : all1) {
            std::size_t root = uf.find(node(false, v));
            ++members[root];
            if (!l1.count(v)) fresh_roots.insert(root);
        }
        for (std::size_t root : fresh_roots) {
            if (uf.constant[root])
                throw CompositionError("fresh-created vertex unified with a constant");
            if (members[root] > 1)
                throw CompositionError(
                    "fresh-created vertex unified with another first-rule vertex");
        }
        for (std::size_t j = 0; j < p2.lhs.size(); ++j) {
            if (ov2.count(j)) continue;
            for (const Term& t : p2.lhs[j].terms)
                if (!t.is_const && fresh_roots.count(uf.find(node(true, t.value))))
                    throw CompositionError("residue consumes from a fresh-created vertex");
        }
    }

    RewriteRule out;
    out.name = p1.name + "*" + p2.name;

    // Composed term for a unification class, materialized on first use. The
    // class keeps the name of its least member (first-rule names preferred).
    std::map<std::size_t, Term> class_term;
    auto composed_term = [&](bool second, const Term& t) -> Term {
        if (t.is_const) return t;
        std::size_t root = uf.find(node(second, t.value));
        auto it = class_term.find(root);
        if (it != class_term.end()) return it->second;
        if (uf.constant[root]) return class_term[root] = cterm(*uf.constant[root]);
        std::string name;
        for (VarIndex v = 0; v < p1.var_names.size() && name.empty(); ++v)
            if (uf.find(node(false, v)) == root) name = p1.var_names[v];
        for (VarIndex v = 0; v < p2.var_names.size() && name.empty(); ++v)
            if (uf.find(node(true, v)) == root) name = p2.var_names[v];
        while (out.find_var(name)) name += "'";
        return class_term[root] = vterm(out, name);
    };
    auto map_edge = [&](bool second, const PatternEdge& pe) {
        PatternEdge e;
        e.directed = pe.directed;
        for (const Term& t : pe.terms) e.terms.push_back(composed_term(second, t));
        return e;
    };

    for (const auto& pe : p1.lhs) out.lhs.push_back(map_edge(false, pe));
    for (std::size_t j = 0; j < p2.lhs.size(); ++j)
        if (!ov2.count(j)) out.lhs.push_back(map_edge(true, p2.lhs[j]));
    for (std::size_t i = 0; i < p1.rhs.size(); ++i)
        if (!ov1.count(i)) out.rhs.push_back(map_edge(false, p1.rhs[i]));
    for (const auto& pe : p2.rhs) out.rhs.push_back(map_edge(true, pe));

    std::set<VarIndex> lhs_occurs = RewriteRule::vars_of(out.lhs);
    std::set<VarIndex> rhs_occurs = RewriteRule::vars_of(out.rhs);

    // Phase variables renamed apart; p2 names only ever alias toward p1
    // names, which keeps the substitution acyclic.
    std::set<std::string> p1_phases = detail::phase_names(p1);
    std::map<std::string, std::string> pmap;
    for (const std::string& n : detail::phase_names(p2)) {
        std::string r = n;
        while (p1_phases.count(r)) r += "'";
        pmap[n] = r;
    }
    std::set<std::string> p2_phases;
    for (const auto& [k, v] : pmap) p2_phases.insert(v);

    std::map<std::string, detail::PhaseExpr> subst;
    auto expand = [&](const detail::PhaseExpr& e) {
        detail::PhaseExpr r{e.base, {}};
        std::vector<std::string> work(e.vars);
        std::size_t guard = 0;
        while (!work.empty()) {
            if (++guard > 10000) throw CompositionError("phase substitution does not terminate");
            std::string v = std::move(work.back());
            work.pop_back();
            auto it = subst.find(v);
            if (it == subst.end()) {
                r.vars.push_back(std::move(v));
            } else {
                r.base = r.base + it->second.base;
                work.insert(work.end(), it->second.vars.begin(), it->second.vars.end());
            }
        }
        std::sort(r.vars.begin(), r.vars.end());
        return r;
    };
    auto alias = [&](const std::string& name, detail::PhaseExpr expr) {
        auto it = subst.find(name);
        if (it != subst.end()) {
            if (!(expand(it->second) == expand(expr)))
                throw CompositionError("phase variable " + name +
                                       " resolves to conflicting expressions");
            return;
        }
        subst[name] = std::move(expr);
    };

    // A kept constraint guards the host label of a surviving vertex; merging
    // two on the same class either checks them against each other or aliases
    // one phase variable to the other.
    std::map<VarIndex, LabelConstraint> kept;
    auto keep_constraint = [&](const Term& t, LabelConstraint c) {
        if (t.is_const)
            throw CompositionError("label constraint lands on a constant vertex");
        auto it = kept.find(t.value);
        if (it == kept.end()) {
            kept[t.value] = std::move(c);
            return;
        }
        LabelConstraint& have = it->second;
        if (have.kind != c.kind)
            throw CompositionError("overlap merges label constraints of different kinds");
        if (have.phase && c.phase) {
            if (*have.phase != *c.phase)
                throw CompositionError("overlap merges conflicting concrete phases");
        } else if (have.phase) {
            alias(c.phase_var, {*have.phase, {}});
        } else if (c.phase) {
            alias(have.phase_var, {*c.phase, {}});
            have = std::move(c);
        } else if (have.phase_var != c.phase_var) {
            // Alias toward the p1 namespace, lexicographic within one.
            bool have_p2 = p2_phases.count(have.phase_var) > 0;
            bool c_p2 = p2_phases.count(c.phase_var) > 0;
            if (have_p2 != c_p2 ? have_p2 : have.phase_var > c.phase_var) {
                alias(have.phase_var, {Phase::zero(), {c.phase_var}});
                have = std::move(c);
            } else {
                alias(c.phase_var, {Phase::zero(), {have.phase_var}});
            }
        }
    };

    for (const auto& [v, c] : p1.lhs_labels) keep_constraint(composed_term(false, {false, v}), c);

    // The label each class carries right after p1's step, if p1 wrote one.
    std::map<VarIndex, std::pair<std::string, detail::PhaseExpr>> written;
    for (const auto& [v, o] : p1.rhs_labels) {
        Term t = composed_term(false, {false, v});
        if (t.is_const) throw CompositionError("label output lands on a constant vertex");
        written[t.value] = {o.kind, {o.base, o.phase_vars}};
    }

    for (const auto& [v, c0] : p2.lhs_labels) {
        LabelConstraint c = c0;
        if (!c.phase_var.empty()) c.phase_var = pmap.at(c.phase_var);
        Term t = composed_term(true, {false, v});
        if (!t.is_const && written.count(t.value)) {
            // Discharge against what p1 wrote.
            const auto& [kind, expr] = written[t.value];
            if (kind != c.kind)
                throw CompositionError("second rule expects kind " + c.kind +
                                       " where the first writes " + kind);
            detail::PhaseExpr got = expand(expr);
            if (c.phase) {
                if (!got.vars.empty() || got.base != *c.phase)
                    throw CompositionError(
                        "concrete phase test against an open phase expression");
            } else {
                alias(c.phase_var, got);
            }
        } else if (!t.is_const && lhs_occurs.count(t.value)) {
            keep_constraint(t, std::move(c));
        } else {
            // Fresh unlabeled vertex (or a constant): the constraint can
            // never be satisfied / carried.
            throw CompositionError("label constraint on variable " + p2.var_name(v) +
                                   " cannot be carried into the composition");
        }
    }

    for (const auto& [v, o] : p2.rhs_labels) {
        Term t = composed_term(true, {false, v});
        if (t.is_const) throw CompositionError("label output lands on a constant vertex");
        std::vector<std::string> renamed;
        for (const auto& n : o.phase_vars) renamed.push_back(pmap.at(n));
        written[t.value] = {o.kind, {o.base, renamed}};
    }

    for (auto& [cv, c] : kept) {
        if (!c.phase_var.empty()) {
            detail::PhaseExpr e = expand({Phase::zero(), {c.phase_var}});
            if (e.vars.empty()) {
                c.phase = e.base;
                c.phase_var.clear();
            } else if (e.vars.size() == 1 && e.base.is_zero()) {
                c.phase_var = e.vars[0];
            } else {
                throw CompositionError("constraint phase variable resolves to a compound sum");
            }
        }
        out.lhs_labels[cv] = std::move(c);
    }
    for (const auto& [cv, w] : written) {
        if (!rhs_occurs.count(cv))
            throw CompositionError("written label survives on a vertex the composition "
                                   "cannot re-emit");
        detail::PhaseExpr e = expand(w.second);
        out.rhs_labels[cv] = LabelOutput{w.first, e.base, e.vars};
    }

    // Exact-degree guards transfer only where one- and two-step matching
    // agree. A first-rule guard counts host edges consumed by the first
    // match alone, so its vertex must stay clear of the residue — including
    // match-time coincidences, which distinctness constraints rule out. A
    // second-rule guard additionally has to see every first-rule created
    // incidence inside the overlap.
    std::set<VarIndex> residue_vars;
    bool residue_has_const = false;
    for (std::size_t j = 0; j < p2.lhs.size(); ++j) {
        if (ov2.count(j)) continue;
        for (const Term& t : p2.lhs[j].terms) {
            Term ct = composed_term(true, t);
            if (ct.is_const)
                residue_has_const = true;
            else
                residue_vars.insert(ct.value);
        }
    }
    for (VarIndex v : p1.exact_degree) {
        Term t = composed_term(false, {false, v});
        if (t.is_const)
            throw CompositionError("exact-degree variable unified with a constant");
        if (residue_vars.count(t.value) || residue_has_const)
            throw CompositionError("exact-degree vertex of the first rule may be "
                                   "consumed from by the residue");
        for (VarIndex w : residue_vars)
            if (w != t.value) out.add_distinct(t.value, w);
        out.exact_degree.insert(t.value);
    }
    for (VarIndex v : p2.exact_degree) {
        Term t = composed_term(true, {false, v});
        if (t.is_const)
            throw CompositionError("exact-degree variable unified with a constant");
        for (std::size_t i = 0; i < p1.rhs.size(); ++i) {
            if (ov1.count(i)) continue;
            for (const Term& tt : p1.rhs[i].terms) {
                Term ct = composed_term(false, tt);
                if (ct.is_const)
                    throw CompositionError("exact-degree vertex of the second rule may "
                                           "collide with a constant created endpoint");
                if (ct == t)
                    throw CompositionError("exact-degree vertex of the second rule "
                                           "receives a non-overlapped created edge");
                // A surviving non-overlapped created edge must not land on
                // the guarded vertex by coincidence either. Fresh endpoints
                // cannot collide with it.
                if (lhs_occurs.count(ct.value) && lhs_occurs.count(t.value))
                    out.add_distinct(t.value, ct.value);
            }
        }
        if (lhs_occurs.count(t.value))
            out.exact_degree.insert(t.value);
        // Otherwise the vertex is fresh in the composition and the guard is
        // vacuous: its only incidences are the overlapped edges.
    }

    auto carry_distinct = [&](bool second, const std::set<std::pair<VarIndex, VarIndex>>& d) {
        for (const auto& [a, b] : d) {
            Term ta = composed_term(second, {false, a});
            Term tb = composed_term(second, {false, b});
            if (ta == tb)
                throw CompositionError("overlap collapses a distinctness requirement");
            if (ta.is_const && tb.is_const) continue;  // distinct constants: vacuous
            if (ta.is_const || tb.is_const)
                throw CompositionError("distinctness against a constant is not expressible");
            out.add_distinct(ta.value, tb.value);
        }
    };
    carry_distinct(false, p1.distinct);
    carry_distinct(true, p2.distinct);

    if (auto violations = out.validate(); !violations.empty())
        throw CompositionError("composition is not expressible as one rule: " +
                               violations.front());
    return out;
}

// ---------------------------------------------------------------------------
// All composable overlaps between rhs(p1) and lhs(p2) up to the given size,
// in deterministic order. Entries compose cleanly; rejected combinations are
// silently skipped. Duplicates up to rule isomorphism are not removed here.
// ---------------------------------------------------------------------------
struct OverlapCandidate {
    Overlap overlap;
    RewriteRule rule;
};

inline std::vector<OverlapCandidate> enumerate_concurrent_overlaps(
    const RewriteRule& p1, const RewriteRule& p2, std::size_t max_overlap_edges) {
    std::vector<OverlapEntry> cands;
    for (std::size_t i = 0; i < p1.rhs.size(); ++i)
        for (std::size_t j = 0; j < p2.lhs.size(); ++j) {
            const PatternEdge& a = p1.rhs[i];
            const PatternEdge& b = p2.lhs[j];
            if (a.directed != b.directed || a.terms.size() != b.terms.size()) continue;
            cands.push_back({i, j, false});
            if (!a.directed) cands.push_back({i, j, true});
        }

    std::vector<OverlapCandidate> out;
    Overlap cur;
    std::set<std::size_t> used1, used2;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!cur.empty()) {
            try {
                out.push_back({cur, compose_concurrent(p1, p2, cur)});
            } catch (const CompositionError&) {
            }
        }
        if (cur.size() >= max_overlap_edges) return;
        for (std::size_t c = start; c < cands.size(); ++c) {
            if (used1.count(cands[c].rhs1) || used2.count(cands[c].lhs2)) continue;
            used1.insert(cands[c].rhs1);
            used2.insert(cands[c].lhs2);
            cur.push_back(cands[c]);
            self(self, c + 1);
            cur.pop_back();
            used1.erase(cands[c].rhs1);
            used2.erase(cands[c].lhs2);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace mwcau
