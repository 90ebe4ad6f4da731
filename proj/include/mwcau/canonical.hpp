#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mwcau/hypergraph.hpp"

namespace mwcau {

// Result of canonicalization: a byte string identifying the isomorphism
// class (equal keys iff isomorphic, respecting labels, incidence order and
// open typing) together with the certified relabeling onto the canonical
// representative.
struct CanonicalForm {
    std::string key;
    std::map<VertexId, VertexId> vertex_map;     // original id -> canonical id
    std::map<EdgeId, std::size_t> edge_index;    // original edge id -> canonical index
};

using CanonicalKey = std::string;

namespace detail {

// Canonicalization works on a densified colored structure: vertices 0..n-1
// with string color keys, edges with a color ordinal and ordered (or
// unordered) incidence. Vertex/edge colors carry labels, dummy typing,
// boundary positions, or rule-side tags depending on the caller.
struct ColoredInput {
    std::size_t n = 0;
    std::vector<std::string> vertex_color_keys;           // per dense vertex
    struct Edge {
        std::vector<std::size_t> verts;                   // dense indices
        bool directed = true;
        std::string color_key;
    };
    std::vector<Edge> edges;
};

class Canonicalizer {
public:
    explicit Canonicalizer(const ColoredInput& in) : in_(in), n_(in.n) {
        // Color keys -> ordinals, by sorted key order (isomorphism-invariant).
        std::vector<std::string> vkeys = in.vertex_color_keys;
        std::sort(vkeys.begin(), vkeys.end());
        vkeys.erase(std::unique(vkeys.begin(), vkeys.end()), vkeys.end());
        vertex_color_table_ = vkeys;
        init_colors_.resize(n_);
        for (std::size_t v = 0; v < n_; ++v)
            init_colors_[v] = ordinal(vertex_color_table_, in.vertex_color_keys[v]);

        std::vector<std::string> ekeys;
        for (const auto& e : in.edges) ekeys.push_back(e.color_key);
        std::sort(ekeys.begin(), ekeys.end());
        ekeys.erase(std::unique(ekeys.begin(), ekeys.end()), ekeys.end());
        edge_color_table_ = ekeys;
        edge_colors_.resize(in.edges.size());
        for (std::size_t i = 0; i < in.edges.size(); ++i)
            edge_colors_[i] = ordinal(edge_color_table_, in.edges[i].color_key);

        incidence_.resize(n_);
        for (std::size_t i = 0; i < in.edges.size(); ++i)
            for (std::size_t p = 0; p < in.edges[i].verts.size(); ++p)
                incidence_[in.edges[i].verts[p]].push_back({i, p});
    }

    // Minimal certificate over the individualization-refinement tree, with
    // automorphism orbit pruning at each backtrack node.
    void run() {
        if (n_ == 0) {
            best_perm_.clear();
            best_cert_ = certificate({});
            return;
        }
        std::vector<std::size_t> colors = init_colors_;
        std::vector<std::size_t> path;
        search(colors, path);
    }

    const std::string& certificate_bytes() const { return best_cert_; }
    // Dense vertex -> canonical rank.
    const std::vector<std::size_t>& permutation() const { return best_perm_; }
    // Original edge position -> canonical edge index.
    const std::vector<std::size_t>& edge_permutation() const { return best_edge_index_; }

private:
    struct Slot {
        std::size_t edge;
        std::size_t pos;
    };

    static std::size_t ordinal(const std::vector<std::string>& table, const std::string& key) {
        return static_cast<std::size_t>(
            std::lower_bound(table.begin(), table.end(), key) - table.begin());
    }

    static void append_num(std::string& s, std::size_t x) {
        s += std::to_string(x);
        s += ',';
    }

    // One refinement pass: recolor each vertex by (old color, multiset of
    // incidence signatures). New ordinals follow sorted signature order so
    // the result is isomorphism-invariant.
    void refine(std::vector<std::size_t>& colors) const {
        for (;;) {
            std::vector<std::string> sigs(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                std::string sig;
                append_num(sig, colors[v]);
                std::vector<std::string> entries;
                for (const Slot& s : incidence_[v]) {
                    const auto& e = in_.edges[s.edge];
                    std::string ent;
                    if (e.directed) {
                        ent += 'D';
                        append_num(ent, edge_colors_[s.edge]);
                        append_num(ent, e.verts.size());
                        append_num(ent, s.pos);
                        for (std::size_t u : e.verts) append_num(ent, colors[u]);
                    } else {
                        std::size_t a = colors[e.verts[0]], b = colors[e.verts[1]];
                        ent += (e.verts[0] == e.verts[1]) ? 'S' : 'U';
                        append_num(ent, edge_colors_[s.edge]);
                        append_num(ent, std::min(a, b));
                        append_num(ent, std::max(a, b));
                    }
                    entries.push_back(std::move(ent));
                }
                std::sort(entries.begin(), entries.end());
                for (auto& e : entries) {
                    sig += e;
                    sig += '|';
                }
                sigs[v] = std::move(sig);
            }
            std::vector<std::string> uniq = sigs;
            std::sort(uniq.begin(), uniq.end());
            uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
            std::vector<std::size_t> next(n_);
            for (std::size_t v = 0; v < n_; ++v)
                next[v] = static_cast<std::size_t>(
                    std::lower_bound(uniq.begin(), uniq.end(), sigs[v]) - uniq.begin());
            if (count_colors(next) == count_colors(colors) && next == normalize(colors)) break;
            bool stable = count_colors(next) == count_colors(colors);
            colors = std::move(next);
            if (stable) break;
        }
    }

    static std::size_t count_colors(const std::vector<std::size_t>& colors) {
        std::vector<std::size_t> c = colors;
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c.size();
    }

    // Renumber colors to 0..k-1 preserving order, for stable comparisons.
    static std::vector<std::size_t> normalize(const std::vector<std::size_t>& colors) {
        std::vector<std::size_t> uniq = colors;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::size_t> out(colors.size());
        for (std::size_t i = 0; i < colors.size(); ++i)
            out[i] = static_cast<std::size_t>(
                std::lower_bound(uniq.begin(), uniq.end(), colors[i]) - uniq.begin());
        return out;
    }

    void search(std::vector<std::size_t> colors, std::vector<std::size_t>& path) {
        refine(colors);

        // Discrete partition: every vertex has a unique color.
        if (count_colors(colors) == n_) {
            leaf(colors);
            return;
        }

        // Target cell: smallest color value with more than one member.
        std::vector<std::size_t> norm = normalize(colors);
        std::size_t target = 0;
        std::vector<std::size_t> cell;
        for (std::size_t c = 0;; ++c) {
            cell.clear();
            for (std::size_t v = 0; v < n_; ++v)
                if (norm[v] == c) cell.push_back(v);
            if (cell.size() > 1) {
                target = c;
                break;
            }
        }
        (void)target;

        std::vector<std::size_t> tried;
        for (std::size_t v : cell) {
            if (in_orbit_of_tried(v, tried, path)) continue;
            tried.push_back(v);
            std::vector<std::size_t> branched = norm;
            // Individualize: give v a fresh color below its cell.
            for (std::size_t u = 0; u < n_; ++u) branched[u] = branched[u] * 2 + 1;
            branched[v] -= 1;
            path.push_back(v);
            search(branched, path);
            path.pop_back();
        }
    }

    bool in_orbit_of_tried(std::size_t v, const std::vector<std::size_t>& tried,
                           const std::vector<std::size_t>& path) const {
        if (tried.empty() || automorphisms_.empty()) return false;
        // Orbits of the subgroup generated by automorphisms fixing the path
        // pointwise: connected components of the union of generator graphs.
        std::vector<std::size_t> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& g : automorphisms_) {
            bool fixes = true;
            for (std::size_t p : path)
                if (g[p] != p) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (std::size_t x = 0; x < n_; ++x) {
                std::size_t a = find(x), b = find(g[x]);
                if (a != b) parent[a] = b;
            }
        }
        std::size_t rv = find(v);
        for (std::size_t u : tried)
            if (find(u) == rv) return true;
        return false;
    }

    void leaf(const std::vector<std::size_t>& colors) {
        // colors is discrete: rank by color value.
        std::vector<std::size_t> perm(n_);  // dense vertex -> canonical rank
        {
            std::vector<std::size_t> order(n_);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return colors[a] < colors[b]; });
            for (std::size_t rank = 0; rank < n_; ++rank) perm[order[rank]] = rank;
        }
        std::string cert = certificate(perm);
        if (!have_best_ || cert < best_cert_) {
            have_best_ = true;
            best_cert_ = std::move(cert);
            best_perm_ = perm;
            best_edge_index_ = edge_order_for(perm);
        } else if (cert == best_cert_) {
            // perm and best_perm_ induce the same canonical structure;
            // best_perm_^{-1} . perm is an automorphism.
            std::vector<std::size_t> inv(n_);
            for (std::size_t v = 0; v < n_; ++v) inv[best_perm_[v]] = v;
            std::vector<std::size_t> aut(n_);
            bool identity = true;
            for (std::size_t v = 0; v < n_; ++v) {
                aut[v] = inv[perm[v]];
                if (aut[v] != v) identity = false;
            }
            if (!identity) automorphisms_.push_back(std::move(aut));
        }
    }

    // Canonical edge record under a vertex ranking: (incidence sequence,
    // arity, edge color), undirected pairs normalized to sorted order.
    struct EdgeRec {
        std::vector<std::size_t> seq;
        std::size_t arity;
        std::size_t color;
        bool directed;
        std::size_t orig;

        bool operator<(const EdgeRec& o) const {
            if (seq != o.seq) return seq < o.seq;
            if (arity != o.arity) return arity < o.arity;
            if (color != o.color) return color < o.color;
            if (directed != o.directed) return directed < o.directed;
            return orig < o.orig;
        }
    };

    std::vector<EdgeRec> edge_records(const std::vector<std::size_t>& perm) const {
        std::vector<EdgeRec> recs;
        recs.reserve(in_.edges.size());
        for (std::size_t i = 0; i < in_.edges.size(); ++i) {
            const auto& e = in_.edges[i];
            EdgeRec r;
            for (std::size_t u : e.verts) r.seq.push_back(perm[u]);
            if (!e.directed && r.seq[0] > r.seq[1]) std::swap(r.seq[0], r.seq[1]);
            r.arity = e.verts.size();
            r.color = edge_colors_[i];
            r.directed = e.directed;
            r.orig = i;
            recs.push_back(std::move(r));
        }
        std::sort(recs.begin(), recs.end());
        return recs;
    }

    // Original edge position -> canonical index. Parallel duplicates tie-break
    // by original position, which keeps the map deterministic per input.
    std::vector<std::size_t> edge_order_for(const std::vector<std::size_t>& perm) const {
        auto recs = edge_records(perm);
        std::vector<std::size_t> idx(in_.edges.size());
        for (std::size_t k = 0; k < recs.size(); ++k) idx[recs[k].orig] = k;
        return idx;
    }

    std::string certificate(const std::vector<std::size_t>& perm) const {
        std::string cert;
        cert += "n=";
        append_num(cert, n_);
        cert += "m=";
        append_num(cert, in_.edges.size());
        cert += "VT[";
        for (const auto& k : vertex_color_table_) {
            cert += k;
            cert += ';';
        }
        cert += "]ET[";
        for (const auto& k : edge_color_table_) {
            cert += k;
            cert += ';';
        }
        cert += "]V[";
        {
            // Initial color of each vertex, in canonical order.
            std::vector<std::size_t> by_rank(n_);
            for (std::size_t v = 0; v < n_; ++v) by_rank[perm[v]] = init_colors_[v];
            for (std::size_t c : by_rank) append_num(cert, c);
        }
        cert += "]E[";
        for (const auto& r : edge_records(perm)) {
            cert += r.directed ? 'd' : 'u';
            append_num(cert, r.color);
            cert += '(';
            for (std::size_t u : r.seq) append_num(cert, u);
            cert += ')';
        }
        cert += ']';
        return cert;
    }

    const ColoredInput& in_;
    std::size_t n_;
    std::vector<std::string> vertex_color_table_;
    std::vector<std::string> edge_color_table_;
    std::vector<std::size_t> init_colors_;
    std::vector<std::size_t> edge_colors_;
    std::vector<std::vector<Slot>> incidence_;

    bool have_best_ = false;
    std::string best_cert_;
    std::vector<std::size_t> best_perm_;
    std::vector<std::size_t> best_edge_index_;
    std::vector<std::vector<std::size_t>> automorphisms_;
};

inline std::string escape_color(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == ';' || c == '\\' || c == '[' || c == ']') out += '\\';
        out += c;
    }
    return out;
}

inline std::string vertex_color_key(const OpenHypergraph& g, VertexId v) {
    if (g.is_dummy(v)) {
        auto it = std::find(g.boundary.begin(), g.boundary.end(), v);
        std::size_t pos = static_cast<std::size_t>(it - g.boundary.begin());
        return "dummy:" + std::to_string(pos);
    }
    const VertexLabel* l = g.graph.label(v);
    if (!l) return "plain";
    return "lab:" + escape_color(l->kind) + ":" + escape_color(l->phase);
}

inline ColoredInput colored_input(const OpenHypergraph& g) {
    ColoredInput in;
    std::vector<VertexId> verts(g.graph.vertices().begin(), g.graph.vertices().end());
    in.n = verts.size();
    std::map<VertexId, std::size_t> dense;
    for (std::size_t i = 0; i < verts.size(); ++i) dense[verts[i]] = i;
    in.vertex_color_keys.resize(in.n);
    for (std::size_t i = 0; i < verts.size(); ++i)
        in.vertex_color_keys[i] = vertex_color_key(g, verts[i]);
    for (const auto& e : g.graph.edges()) {
        ColoredInput::Edge ce;
        ce.directed = e.directed;
        ce.color_key = "e";
        for (VertexId v : e.vertices) ce.verts.push_back(dense.at(v));
        in.edges.push_back(std::move(ce));
    }
    return in;
}

}  // namespace detail

inline CanonicalForm canonical_form(const OpenHypergraph& g) {
    g.ensure_valid();
    auto in = detail::colored_input(g);
    detail::Canonicalizer canon(in);
    canon.run();

    CanonicalForm form;
    form.key = canon.certificate_bytes();
    std::vector<VertexId> verts(g.graph.vertices().begin(), g.graph.vertices().end());
    for (std::size_t i = 0; i < verts.size(); ++i)
        form.vertex_map[verts[i]] = static_cast<VertexId>(canon.permutation()[i]);
    const auto& eidx = canon.edge_permutation();
    for (std::size_t i = 0; i < g.graph.edges().size(); ++i)
        form.edge_index[g.graph.edges()[i].id] = eidx[i];
    return form;
}

inline CanonicalForm canonical_form(const Hypergraph& g) { return canonical_form(as_open(g)); }

// The canonical representative: vertices renamed to canonical ids, edges
// reordered by canonical index with ids equal to their index. Canonicalizing
// the result yields the same key with the identity relabeling.
inline OpenHypergraph apply_relabeling(const OpenHypergraph& g, const CanonicalForm& form) {
    OpenHypergraph out;
    for (VertexId v : g.graph.vertices()) out.graph.add_vertex(form.vertex_map.at(v));
    std::vector<const Hyperedge*> by_index(g.graph.edges().size(), nullptr);
    for (const auto& e : g.graph.edges()) by_index[form.edge_index.at(e.id)] = &e;
    for (std::size_t k = 0; k < by_index.size(); ++k) {
        std::vector<VertexId> verts;
        for (VertexId v : by_index[k]->vertices) verts.push_back(form.vertex_map.at(v));
        if (!by_index[k]->directed && verts[0] > verts[1]) std::swap(verts[0], verts[1]);
        out.graph.add_edge_with_id(static_cast<EdgeId>(k), std::move(verts),
                                   by_index[k]->directed);
    }
    for (const auto& [v, l] : g.graph.labels()) out.graph.set_label(form.vertex_map.at(v), l);
    for (VertexId v : g.dummies) out.dummies.insert(form.vertex_map.at(v));
    for (VertexId v : g.boundary) out.boundary.push_back(form.vertex_map.at(v));
    return out;
}

inline Hypergraph apply_relabeling(const Hypergraph& g, const CanonicalForm& form) {
    return apply_relabeling(as_open(g), form).graph;
}

inline bool is_isomorphic(const OpenHypergraph& a, const OpenHypergraph& b) {
    return canonical_form(a).key == canonical_form(b).key;
}

inline bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
    return canonical_form(a).key == canonical_form(b).key;
}

}  // namespace mwcau
