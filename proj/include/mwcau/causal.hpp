#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "mwcau/hypergraph.hpp"
#include "mwcau/multiway.hpp"

namespace mwcau {

// Direct causal dependencies between events of a multiway graph. An edge
// (e1, e2) means e2 ran on e1's output state and consumed at least one edge
// slot that e1 created; no transitive closure is taken. Edges always point
// from an earlier-generation event to a later one, so the graph is acyclic.
struct CausalGraph {
    std::vector<Event> events;
    std::vector<std::pair<EventId, EventId>> causal_edges;  // sorted, unique
};

inline CausalGraph causal_graph(const MultiwayGraph& mw) {
    CausalGraph cg;
    cg.events = mw.events;

    std::map<CanonicalKey, std::vector<const Event*>> by_from;
    for (const auto& e : cg.events) by_from[e.from_state].push_back(&e);

    for (const auto& e1 : cg.events) {
        auto it = by_from.find(e1.to_state);
        if (it == by_from.end()) continue;
        for (const Event* e2 : it->second) {
            // The generation guard keeps cyclic state revisits (a later event
            // feeding a state that was already expanded) out of the order.
            if (e1.step >= e2->step) continue;
            bool overlaps = std::any_of(e2->consumed.begin(), e2->consumed.end(),
                                        [&](EdgeId c) { return e1.created.count(c) > 0; });
            if (overlaps) cg.causal_edges.emplace_back(e1.id, e2->id);
        }
    }
    std::sort(cg.causal_edges.begin(), cg.causal_edges.end());
    return cg;
}

inline std::size_t causal_out_degree(const CausalGraph& cg, EventId e) {
    return static_cast<std::size_t>(std::count_if(cg.causal_edges.begin(), cg.causal_edges.end(),
                                                  [&](const auto& p) { return p.first == e; }));
}

// Total causal out-degree along a rewrite path (a sequence of event ids where
// each event starts from the previous one's output state). Used to rank
// candidate paths: heavier causal fan-out marks the path's effects as more
// reusable downstream.
inline std::size_t selection_score(const CausalGraph& cg, const std::vector<EventId>& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] >= cg.events.size()) throw Error("selection_score: unknown event id");
        if (i > 0 && cg.events[path[i]].from_state != cg.events[path[i - 1]].to_state)
            throw Error("selection_score: path is not connected");
    }
    std::size_t total = 0;
    for (EventId e : path) total += causal_out_degree(cg, e);
    return total;
}

// True when neither event is a direct causal prerequisite of the other.
inline bool causally_independent(const CausalGraph& cg, EventId a, EventId b) {
    for (const auto& [x, y] : cg.causal_edges)
        if ((x == a && y == b) || (x == b && y == a)) return false;
    return true;
}

}  // namespace mwcau
