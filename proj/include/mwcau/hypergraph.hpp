#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mwcau {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally invalid input (edge referencing unknown vertex, duplicate ids, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A match that does not fit its host (stale edge ids, broken binding).
class MatchError : public Error {
public:
    using Error::Error;
};

// Rule composition failed (inconsistent overlap unification).
class CompositionError : public Error {
public:
    using Error::Error;
};

// Label attached to a vertex. Used by the ZX encoding: kind is the spider
// color ("Z"/"X") and phase the reduced fraction of pi, e.g. "1/2".
// Labels participate in isomorphism as vertex colors.
struct VertexLabel {
    std::string kind;
    std::string phase;

    auto operator<=>(const VertexLabel&) const = default;
};

// Directed hyperedge with a stable identity. Incidence order is significant;
// repeated vertices are allowed. When directed == false the edge is an
// unordered pair (arity 2 only); the ZX encoding uses this for wires.
struct Hyperedge {
    EdgeId id = 0;
    std::vector<VertexId> vertices;
    bool directed = true;

    std::size_t arity() const { return vertices.size(); }

    bool same_content(const Hyperedge& o) const {
        if (directed != o.directed) return false;
        if (directed) return vertices == o.vertices;
        std::vector<VertexId> a = vertices, b = o.vertices;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
};

// Directed labeled hypergraph with multiset edge semantics: duplicate edge
// contents are allowed, identity is by edge id.
class Hypergraph {
public:
    Hypergraph() = default;

    VertexId add_vertex() {
        VertexId v = next_vertex_id();
        vertices_.insert(v);
        return v;
    }

    void add_vertex(VertexId v) { vertices_.insert(v); }

    EdgeId add_edge(std::vector<VertexId> verts, bool directed = true) {
        EdgeId id = next_edge_id();
        add_edge_with_id(id, std::move(verts), directed);
        return id;
    }

    void add_edge_with_id(EdgeId id, std::vector<VertexId> verts, bool directed = true) {
        if (verts.empty()) throw ValidationError("hyperedge arity must be >= 1");
        if (!directed && verts.size() != 2)
            throw ValidationError("undirected edges must have arity 2");
        if (edge_ids_.count(id)) throw ValidationError("duplicate edge id " + std::to_string(id));
        for (VertexId v : verts) vertices_.insert(v);
        edge_ids_.insert(id);
        edges_.push_back(Hyperedge{id, std::move(verts), directed});
    }

    void remove_edge(EdgeId id) {
        auto it = std::find_if(edges_.begin(), edges_.end(),
                               [id](const Hyperedge& e) { return e.id == id; });
        if (it == edges_.end()) throw ValidationError("unknown edge id " + std::to_string(id));
        edges_.erase(it);
        edge_ids_.erase(id);
    }

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::vector<Hyperedge>& edges() const { return edges_; }

    bool has_vertex(VertexId v) const { return vertices_.count(v) > 0; }
    bool has_edge(EdgeId id) const { return edge_ids_.count(id) > 0; }

    const Hyperedge* find_edge(EdgeId id) const {
        for (const auto& e : edges_)
            if (e.id == id) return &e;
        return nullptr;
    }

    void set_label(VertexId v, VertexLabel label) {
        vertices_.insert(v);
        labels_[v] = std::move(label);
    }

    const VertexLabel* label(VertexId v) const {
        auto it = labels_.find(v);
        return it == labels_.end() ? nullptr : &it->second;
    }

    const std::map<VertexId, VertexLabel>& labels() const { return labels_; }

    VertexId next_vertex_id() const {
        return vertices_.empty() ? 0 : *vertices_.rbegin() + 1;
    }

    EdgeId next_edge_id() const {
        return edge_ids_.empty() ? 0 : *edge_ids_.rbegin() + 1;
    }

    std::size_t degree(VertexId v) const {
        std::size_t d = 0;
        for (const auto& e : edges_)
            d += static_cast<std::size_t>(std::count(e.vertices.begin(), e.vertices.end(), v));
        return d;
    }

    // Edge ids (not positions) incident to v, in edge-list order, each once.
    std::vector<EdgeId> incident_edges(VertexId v) const {
        std::vector<EdgeId> out;
        for (const auto& e : edges_)
            if (std::find(e.vertices.begin(), e.vertices.end(), v) != e.vertices.end())
                out.push_back(e.id);
        return out;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> violations;
        std::set<EdgeId> seen;
        for (const auto& e : edges_) {
            if (!seen.insert(e.id).second)
                violations.push_back("duplicate edge id " + std::to_string(e.id));
            if (e.vertices.empty())
                violations.push_back("edge " + std::to_string(e.id) + " has arity 0");
            for (VertexId v : e.vertices)
                if (!vertices_.count(v))
                    violations.push_back("edge " + std::to_string(e.id) +
                                         " references unknown vertex " + std::to_string(v));
        }
        for (const auto& [v, _] : labels_)
            if (!vertices_.count(v))
                violations.push_back("label on unknown vertex " + std::to_string(v));
        return violations;
    }

    void ensure_valid() const {
        auto v = validate();
        if (!v.empty()) throw ValidationError(v.front());
    }

    bool operator==(const Hypergraph& o) const {
        if (vertices_ != o.vertices_ || labels_ != o.labels_) return false;
        if (edges_.size() != o.edges_.size()) return false;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto& a = edges_[i];
            const auto& b = o.edges_[i];
            if (a.id != b.id || a.vertices != b.vertices || a.directed != b.directed)
                return false;
        }
        return true;
    }

private:
    std::set<VertexId> vertices_;
    std::vector<Hyperedge> edges_;
    std::set<EdgeId> edge_ids_;
    std::map<VertexId, VertexLabel> labels_;
};

// Removes vertices with no incident edges (and their labels). Vertices in
// `keep` survive regardless; the multiway layer uses this before
// canonicalization while preserving boundary vertices.
inline Hypergraph prune_isolated(const Hypergraph& g, const std::set<VertexId>& keep = {}) {
    Hypergraph out;
    std::set<VertexId> used = keep;
    for (const auto& e : g.edges())
        for (VertexId v : e.vertices) used.insert(v);
    for (VertexId v : g.vertices())
        if (used.count(v)) out.add_vertex(v);
    for (const auto& e : g.edges()) out.add_edge_with_id(e.id, e.vertices, e.directed);
    for (const auto& [v, l] : g.labels())
        if (used.count(v)) out.set_label(v, l);
    return out;
}

// Hypergraph with open typing: Dummy vertices mark the open ends of dangling
// hyperedges and the ordered boundary is the diagram interface. A closed
// graph is the special case with no dummies and an empty boundary.
struct OpenHypergraph {
    Hypergraph graph;
    std::set<VertexId> dummies;
    std::vector<VertexId> boundary;

    bool is_closed() const { return dummies.empty() && boundary.empty(); }

    bool is_dummy(VertexId v) const { return dummies.count(v) > 0; }

    std::vector<std::string> validate() const {
        std::vector<std::string> violations = graph.validate();
        for (VertexId v : dummies) {
            if (!graph.has_vertex(v)) {
                violations.push_back("dummy vertex " + std::to_string(v) + " not in graph");
                continue;
            }
            std::size_t deg = graph.degree(v);
            if (deg != 1)
                violations.push_back("dummy vertex " + std::to_string(v) + " has degree " +
                                     std::to_string(deg) + ", expected 1");
            if (graph.label(v))
                violations.push_back("dummy vertex " + std::to_string(v) + " carries a label");
        }
        std::set<VertexId> in_boundary;
        for (VertexId v : boundary) {
            if (!in_boundary.insert(v).second)
                violations.push_back("boundary lists vertex " + std::to_string(v) + " twice");
            if (!dummies.count(v))
                violations.push_back("boundary vertex " + std::to_string(v) + " is not a dummy");
        }
        for (VertexId v : dummies)
            if (!in_boundary.count(v))
                violations.push_back("boundary omits dummy vertex " + std::to_string(v));
        return violations;
    }

    void ensure_valid() const {
        auto v = validate();
        if (!v.empty()) throw ValidationError(v.front());
    }

    bool operator==(const OpenHypergraph& o) const {
        return graph == o.graph && dummies == o.dummies && boundary == o.boundary;
    }
};

inline OpenHypergraph as_open(Hypergraph g) { return OpenHypergraph{std::move(g), {}, {}}; }

inline OpenHypergraph prune_isolated(const OpenHypergraph& g) {
    return OpenHypergraph{prune_isolated(g.graph, g.dummies), g.dummies, g.boundary};
}

// Returns every violation of the Dummy-degree-1 and boundary-coverage
// invariants; empty result means the open typing is consistent.
inline std::vector<std::string> validate_open(const OpenHypergraph& g) { return g.validate(); }

}  // namespace mwcau
