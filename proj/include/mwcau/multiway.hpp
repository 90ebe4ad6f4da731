#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "mwcau/canonical.hpp"
#include "mwcau/hypergraph.hpp"
#include "mwcau/match.hpp"
#include "mwcau/rewrite.hpp"
#include "mwcau/rules.hpp"

namespace mwcau {

using EventId = std::size_t;

// One rewrite transition between canonical states. `consumed` holds canonical
// edge indices of the source representative, `created` canonical edge indices
// of the target representative, so two events touching "the same" edge slot
// agree on its name no matter which concrete application produced them.
struct Event {
    EventId id = 0;
    std::string rule_name;
    CanonicalKey from_state;
    CanonicalKey to_state;
    std::set<EdgeId> consumed;
    std::set<EdgeId> created;
    int step = 0;

    auto operator<=>(const Event&) const = default;
};

struct EvolveOptions {
    std::size_t max_states = 100000;
    std::size_t max_events = 1000000;
    unsigned workers = 1;
};

// States are stored by canonical key; the mapped value is the canonical
// representative (vertices renamed to canonical ids, edge ids equal to their
// canonical index). Isomorphic results of different applications therefore
// collapse into one state, and events are deduplicated structurally.
struct MultiwayGraph {
    std::map<CanonicalKey, OpenHypergraph> states;
    std::map<CanonicalKey, int> generation;
    std::vector<Event> events;
    CanonicalKey initial;
    int steps = 0;
    // false when a budget was hit; states/events then hold the portion built
    // before the cap, and every recorded event still refers to stored states.
    bool complete = true;
};

namespace detail {

struct CanonState {
    CanonicalKey key;
    OpenHypergraph rep;
    std::map<EdgeId, std::size_t> edge_index;  // input edge id -> canonical index
};

// States are merged up to isomorphism and their vertices relabeled, so a
// pattern pinned to a literal vertex id has no stable meaning during
// evolution or search.
inline void require_variable_only(const std::vector<RewriteRule>& rules, const char* who) {
    for (const auto& r : rules)
        for (const auto* side : {&r.lhs, &r.rhs})
            for (const auto& e : *side)
                for (const auto& t : e.terms)
                    if (t.is_const)
                        throw ValidationError(std::string(who) + ": rule " + r.name +
                                              " uses a constant vertex id; canonical state "
                                              "merging does not preserve vertex identity");
}

inline CanonState canonical_state(const OpenHypergraph& g) {
    OpenHypergraph pruned = prune_isolated(g);
    CanonicalForm form = canonical_form(pruned);
    CanonState cs;
    cs.key = form.key;
    cs.rep = apply_relabeling(pruned, form);
    cs.edge_index = std::move(form.edge_index);
    return cs;
}

struct ProducedState {
    std::string rule_name;
    CanonicalKey to;
    std::set<EdgeId> consumed;
    std::set<EdgeId> created;
    OpenHypergraph rep;
};

// All one-step successors of a canonical representative, in (rule, match)
// enumeration order. Pure function of its arguments, safe to run in parallel.
inline std::vector<ProducedState> expand_state(const std::vector<RewriteRule>& rules,
                                               const OpenHypergraph& rep) {
    std::vector<ProducedState> out;
    for (const auto& rule : rules) {
        for (const auto& m : find_matches(rule, rep)) {
            RewriteResult r = apply_match(rule, rep, m);
            CanonState cs = canonical_state(r.result);
            ProducedState p;
            p.rule_name = rule.name;
            p.to = cs.key;
            p.consumed.insert(m.edge_assignment.begin(), m.edge_assignment.end());
            for (EdgeId e : r.created) p.created.insert(cs.edge_index.at(e));
            p.rep = std::move(cs.rep);
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace detail

// Breadth-first multiway evolution: generation k+1 holds every canonical
// result of applying any rule to any generation-k state. Expanding only the
// states first seen at generation k is equivalent to rescanning all earlier
// generations because repeated applications reproduce already-recorded
// events. The result is deterministic and independent of `workers`: matches
// are enumerated per state and merged in canonical-key order.
inline MultiwayGraph evolve(const std::vector<RewriteRule>& rules, const OpenHypergraph& init,
                            int max_steps, const EvolveOptions& opt = {}) {
    for (const auto& r : rules) r.ensure_valid();
    detail::require_variable_only(rules, "evolve");
    init.ensure_valid();

    MultiwayGraph mw;
    detail::CanonState start = detail::canonical_state(init);
    mw.initial = start.key;
    mw.states.emplace(start.key, std::move(start.rep));
    mw.generation.emplace(mw.initial, 0);

    std::set<std::tuple<std::string, CanonicalKey, CanonicalKey, std::set<EdgeId>, std::set<EdgeId>>>
        seen;
    std::vector<CanonicalKey> frontier{mw.initial};

    for (int step = 1; step <= max_steps && !frontier.empty(); ++step) {
        std::vector<std::vector<detail::ProducedState>> results(frontier.size());
        auto expand = [&](std::size_t i) {
            results[i] = detail::expand_state(rules, mw.states.at(frontier[i]));
        };
        if (opt.workers <= 1) {
            for (std::size_t i = 0; i < frontier.size(); ++i) expand(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            unsigned n = std::min<std::size_t>(opt.workers, frontier.size());
            for (unsigned w = 0; w < n; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < frontier.size();) expand(i);
                });
            for (auto& t : pool) t.join();
        }

        std::vector<CanonicalKey> fresh;
        for (std::size_t i = 0; i < frontier.size() && mw.complete; ++i) {
            for (auto& p : results[i]) {
                if (!seen.insert({p.rule_name, frontier[i], p.to, p.consumed, p.created}).second)
                    continue;
                if (mw.events.size() >= opt.max_events) {
                    mw.complete = false;
                    break;
                }
                if (!mw.states.count(p.to)) {
                    if (mw.states.size() >= opt.max_states) {
                        mw.complete = false;
                        break;
                    }
                    mw.states.emplace(p.to, std::move(p.rep));
                    mw.generation.emplace(p.to, step);
                    fresh.push_back(p.to);
                }
                Event e;
                e.id = mw.events.size();
                e.rule_name = std::move(p.rule_name);
                e.from_state = frontier[i];
                e.to_state = std::move(p.to);
                e.consumed = std::move(p.consumed);
                e.created = std::move(p.created);
                e.step = step;
                mw.events.push_back(std::move(e));
            }
        }
        if (!mw.complete) break;
        mw.steps = step;
        std::sort(fresh.begin(), fresh.end());
        frontier = std::move(fresh);
    }
    return mw;
}

inline MultiwayGraph evolve(const std::vector<RewriteRule>& rules, const Hypergraph& init,
                            int max_steps, const EvolveOptions& opt = {}) {
    return evolve(rules, as_open(init), max_steps, opt);
}

}  // namespace mwcau
