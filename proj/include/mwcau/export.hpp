#pragma once

// Export-only views of the library's artifacts: DOT for rendering with
// graphviz and GraphML for graph tools. JSON (json_io.hpp) stays the only
// format that is parsed back.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mwcau/causal.hpp"
#include "mwcau/hypergraph.hpp"
#include "mwcau/multiway.hpp"
#include "mwcau/prover.hpp"
#include "mwcau/zx.hpp"

namespace mwcau {

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

// Compact one-line rendering of a state, used for node labels.
inline std::string state_str(const OpenHypergraph& g) {
    std::ostringstream os;
    os << "{";
    bool first_e = true;
    for (const Hyperedge& e : g.graph.edges()) {
        if (!first_e) os << ", ";
        first_e = false;
        os << "{";
        for (std::size_t i = 0; i < e.vertices.size(); ++i)
            os << (i ? "," : "") << e.vertices[i];
        os << "}";
    }
    os << "}";
    for (const auto& [v, lab] : g.graph.labels())
        os << " " << v << ":" << lab.kind << "(" << lab.phase << ")";
    if (!g.boundary.empty()) {
        os << " |";
        for (VertexId v : g.boundary) os << " " << v;
    }
    return os.str();
}

// ============================================================================
// DOT
// ============================================================================

// Multiway evolution graph: states as boxes, productions as yellow vertices
// between the states they rewrite.
inline std::string multiway_to_dot(const MultiwayGraph& mw) {
    std::ostringstream os;
    os << "digraph multiway {\n";
    os << "  rankdir=TB;\n";
    std::map<CanonicalKey, std::size_t> idx;
    for (const auto& [key, rep] : mw.states) {
        std::size_t i = idx.size();
        idx[key] = i;
        os << "  s" << i << " [shape=box, label=\"" << detail::dot_escape(state_str(rep))
           << "\"];\n";
    }
    for (const Event& e : mw.events)
        os << "  e" << e.id << " [shape=ellipse, style=filled, fillcolor=yellow, label=\""
           << detail::dot_escape(e.rule_name) << "\"];\n";
    for (const Event& e : mw.events) {
        os << "  s" << idx.at(e.from_state) << " -> e" << e.id << ";\n";
        os << "  e" << e.id << " -> s" << idx.at(e.to_state) << ";\n";
    }
    os << "}\n";
    return os.str();
}

// Causal graph: productions as yellow vertices, causal relations as orange
// edges.
inline std::string causal_to_dot(const CausalGraph& cg) {
    std::ostringstream os;
    os << "digraph causal {\n";
    os << "  rankdir=TB;\n";
    for (const Event& e : cg.events)
        os << "  e" << e.id << " [shape=ellipse, style=filled, fillcolor=yellow, label=\""
           << detail::dot_escape(e.rule_name + " @ step " + std::to_string(e.step)) << "\"];\n";
    for (const auto& [a, b] : cg.causal_edges)
        os << "  e" << a << " -> e" << b << " [color=orange, penwidth=2];\n";
    os << "}\n";
    return os.str();
}

// Proof graph: axioms as light green boxes, critical-pair lemmas as dark
// orange triangles, substitution lemmas as light orange circles, hypotheses
// as dark green diamonds; substitutions are solid edges, derived inference
// rules dashed.
inline std::string proof_to_dot(const ProofGraph& g) {
    std::ostringstream os;
    os << "digraph proof {\n";
    os << "  rankdir=TB;\n";
    for (const ProofNode& n : g.nodes) {
        const char* shape = "box";
        const char* fill = "lightgreen";
        const char* fontcolor = "black";
        switch (n.kind) {
            case ProofNodeKind::Axiom: break;
            case ProofNodeKind::CriticalPairLemma:
                shape = "triangle";
                fill = "darkorange";
                break;
            case ProofNodeKind::SubstitutionLemma:
                shape = "ellipse";
                fill = "orange";
                break;
            case ProofNodeKind::Hypothesis:
                shape = "diamond";
                fill = "darkgreen";
                fontcolor = "white";
                break;
        }
        os << "  n" << n.id << " [shape=" << shape << ", style=filled, fillcolor=" << fill
           << ", fontcolor=" << fontcolor << ", label=\"" << detail::dot_escape(n.statement)
           << "\"];\n";
    }
    for (const ProofEdge& e : g.edges) {
        os << "  n" << e.from << " -> n" << e.to;
        if (e.kind == ProofEdgeKind::DerivedInference) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

// ZX diagram: Z-spiders green, X-spiders red, boundary points as squares,
// wires as undirected edges.
inline std::string zx_to_dot(const ZXDiagram& d) {
    std::ostringstream os;
    os << "graph zx {\n";
    os << "  rankdir=LR;\n";
    for (const Spider& s : d.spiders)
        os << "  \"" << detail::dot_escape(s.id) << "\" [shape=circle, style=filled, fillcolor="
           << (s.color == SpiderColor::Z ? "palegreen" : "lightcoral") << ", label=\""
           << detail::dot_escape(std::string(to_string(s.color)) + "(" + s.phase.str() + ")")
           << "\"];\n";
    for (const std::string& b : d.inputs)
        os << "  \"" << detail::dot_escape(b) << "\" [shape=square, label=\""
           << detail::dot_escape(b) << "\"];\n";
    for (const std::string& b : d.outputs)
        os << "  \"" << detail::dot_escape(b) << "\" [shape=square, label=\""
           << detail::dot_escape(b) << "\"];\n";
    for (const auto& [a, b] : d.wires)
        os << "  \"" << detail::dot_escape(a) << "\" -- \"" << detail::dot_escape(b) << "\";\n";
    os << "}\n";
    return os.str();
}

// ============================================================================
// GraphML
// ============================================================================

namespace detail {

inline void graphml_header(std::ostringstream& os, bool directed) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    os << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    os << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n";
    os << "  <key id=\"ekind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n";
    os << "  <graph id=\"G\" edgedefault=\"" << (directed ? "directed" : "undirected")
       << "\">\n";
}

inline void graphml_node(std::ostringstream& os, const std::string& id, const std::string& label,
                         const std::string& kind) {
    os << "    <node id=\"" << xml_escape(id) << "\">\n";
    os << "      <data key=\"label\">" << xml_escape(label) << "</data>\n";
    os << "      <data key=\"kind\">" << xml_escape(kind) << "</data>\n";
    os << "    </node>\n";
}

inline void graphml_edge(std::ostringstream& os, const std::string& a, const std::string& b,
                         const std::string& kind) {
    os << "    <edge source=\"" << xml_escape(a) << "\" target=\"" << xml_escape(b) << "\">\n";
    os << "      <data key=\"ekind\">" << xml_escape(kind) << "</data>\n";
    os << "    </edge>\n";
}

inline std::string graphml_footer(std::ostringstream& os) {
    os << "  </graph>\n</graphml>\n";
    return os.str();
}

}  // namespace detail

inline std::string multiway_to_graphml(const MultiwayGraph& mw) {
    std::ostringstream os;
    detail::graphml_header(os, true);
    std::map<CanonicalKey, std::size_t> idx;
    for (const auto& [key, rep] : mw.states) {
        std::size_t i = idx.size();
        idx[key] = i;
        detail::graphml_node(os, "s" + std::to_string(i), state_str(rep), "state");
    }
    for (const Event& e : mw.events)
        detail::graphml_node(os, "e" + std::to_string(e.id), e.rule_name, "event");
    for (const Event& e : mw.events) {
        detail::graphml_edge(os, "s" + std::to_string(idx.at(e.from_state)),
                             "e" + std::to_string(e.id), "production");
        detail::graphml_edge(os, "e" + std::to_string(e.id),
                             "s" + std::to_string(idx.at(e.to_state)), "production");
    }
    return detail::graphml_footer(os);
}

inline std::string causal_to_graphml(const CausalGraph& cg) {
    std::ostringstream os;
    detail::graphml_header(os, true);
    for (const Event& e : cg.events)
        detail::graphml_node(os, "e" + std::to_string(e.id),
                             e.rule_name + " @ step " + std::to_string(e.step), "event");
    for (const auto& [a, b] : cg.causal_edges)
        detail::graphml_edge(os, "e" + std::to_string(a), "e" + std::to_string(b), "causal");
    return detail::graphml_footer(os);
}

inline std::string proof_to_graphml(const ProofGraph& g) {
    std::ostringstream os;
    detail::graphml_header(os, true);
    for (const ProofNode& n : g.nodes)
        detail::graphml_node(os, "n" + std::to_string(n.id), n.statement, to_string(n.kind));
    for (const ProofEdge& e : g.edges)
        detail::graphml_edge(os, "n" + std::to_string(e.from), "n" + std::to_string(e.to),
                             to_string(e.kind));
    return detail::graphml_footer(os);
}

inline std::string zx_to_graphml(const ZXDiagram& d) {
    std::ostringstream os;
    detail::graphml_header(os, false);
    for (const Spider& s : d.spiders)
        detail::graphml_node(os, s.id, std::string(to_string(s.color)) + "(" + s.phase.str() + ")",
                             "spider");
    for (const std::string& b : d.inputs) detail::graphml_node(os, b, b, "input");
    for (const std::string& b : d.outputs) detail::graphml_node(os, b, b, "output");
    for (const auto& [a, b] : d.wires) detail::graphml_edge(os, a, b, "wire");
    return detail::graphml_footer(os);
}

}  // namespace mwcau
