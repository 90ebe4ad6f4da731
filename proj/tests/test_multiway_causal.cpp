#include <gtest/gtest.h>

#include <set>
#include <tuple>
#include <vector>

#include "mwcau/canonical.hpp"
#include "mwcau/causal.hpp"
#include "mwcau/multiway.hpp"
#include "oracles.hpp"

using namespace mwcau;

namespace {

RewriteRule make_rule(const std::string& name, std::vector<std::vector<std::string>> lhs,
                      std::vector<std::vector<std::string>> rhs) {
    RewriteRule r;
    r.name = name;
    for (auto& e : lhs) {
        PatternEdge pe;
        for (auto& v : e) pe.terms.push_back(vterm(r, v));
        r.lhs.push_back(std::move(pe));
    }
    for (auto& e : rhs) {
        PatternEdge pe;
        for (auto& v : e) pe.terms.push_back(vterm(r, v));
        r.rhs.push_back(std::move(pe));
    }
    return r;
}

RewriteRule chain_rule() {
    return make_rule("chain", {{"x", "y"}, {"x", "z"}}, {{"x", "z"}, {"x", "w"}, {"w", "y"}});
}

Hypergraph from_edges(const std::vector<std::vector<VertexId>>& edges) {
    Hypergraph g;
    for (const auto& e : edges) g.add_edge(e);
    return g;
}

Hypergraph double_self_loop() { return from_edges({{0, 0}, {0, 0}}); }

Event fake_event(EventId id, const std::string& from, const std::string& to, int step) {
    Event e;
    e.id = id;
    e.rule_name = "r";
    e.from_state = from;
    e.to_state = to;
    e.step = step;
    return e;
}

// ============================================================================
// Multiway evolution
// ============================================================================

TEST(Multiway_Evolve, ZeroStepsIsJustTheInitialState) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 0);
    EXPECT_EQ(mw.states.size(), 1u);
    EXPECT_TRUE(mw.events.empty());
    EXPECT_EQ(mw.steps, 0);
    EXPECT_TRUE(mw.complete);
    EXPECT_TRUE(mw.states.count(mw.initial));
    EXPECT_EQ(mw.generation.at(mw.initial), 0);
}

TEST(Multiway_Evolve, OneStepOnDoubleSelfLoop) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 1);

    // Both matches consume the same edge pair and build isomorphic results,
    // so they collapse into a single successor state and a single event.
    ASSERT_EQ(mw.states.size(), 2u);
    ASSERT_EQ(mw.events.size(), 1u);

    CanonicalKey successor;
    for (const auto& [key, rep] : mw.states)
        if (key != mw.initial) successor = key;
    EXPECT_TRUE(is_isomorphic(mw.states.at(successor).graph, from_edges({{0, 0}, {0, 1}, {1, 0}})));

    const Event& e = mw.events[0];
    EXPECT_EQ(e.rule_name, "chain");
    EXPECT_EQ(e.from_state, mw.initial);
    EXPECT_EQ(e.to_state, successor);
    EXPECT_EQ(e.consumed, (std::set<EdgeId>{0, 1}));
    EXPECT_EQ(e.created, (std::set<EdgeId>{0, 1, 2}));
    EXPECT_EQ(e.step, 1);
    EXPECT_EQ(mw.generation.at(successor), 1);
}

TEST(Multiway_Evolve, ReachesSevenEdgeCycleStateWithinFiveSteps) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 5);
    ASSERT_TRUE(mw.complete);

    Hypergraph target =
        from_edges({{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 5}, {5, 0}});
    CanonicalKey key = canonical_form(prune_isolated(target)).key;
    EXPECT_TRUE(mw.states.count(key));
    EXPECT_EQ(mw.generation.at(key), 5);
}

TEST(Multiway_Evolve, StatesArePairwiseNonIsomorphic) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 3);
    std::vector<const OpenHypergraph*> reps;
    for (const auto& [key, rep] : mw.states) reps.push_back(&rep);
    ASSERT_GE(reps.size(), 3u);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            EXPECT_FALSE(oracles::brute_force_isomorphic(*reps[i], *reps[j]));
}

TEST(Multiway_Evolve, DeterministicAcrossWorkerCounts) {
    EvolveOptions one, two, four;
    one.workers = 1;
    two.workers = 2;
    four.workers = 4;
    MultiwayGraph a = evolve({chain_rule()}, double_self_loop(), 3, one);
    MultiwayGraph b = evolve({chain_rule()}, double_self_loop(), 3, two);
    MultiwayGraph c = evolve({chain_rule()}, double_self_loop(), 3, four);
    MultiwayGraph d = evolve({chain_rule()}, double_self_loop(), 3, four);

    auto keys = [](const MultiwayGraph& mw) {
        std::vector<CanonicalKey> ks;
        for (const auto& [k, rep] : mw.states) ks.push_back(k);
        return ks;
    };
    for (const MultiwayGraph* other : {&b, &c, &d}) {
        EXPECT_EQ(a.events, other->events);
        EXPECT_EQ(keys(a), keys(*other));
        EXPECT_EQ(a.generation, other->generation);
        EXPECT_EQ(a.initial, other->initial);
        EXPECT_EQ(a.steps, other->steps);
        EXPECT_EQ(a.complete, other->complete);
    }
}

TEST(Multiway_Evolve, FixpointStopsEarly) {
    RewriteRule flip = make_rule("flip", {{"x", "y"}}, {{"y", "x"}});
    MultiwayGraph mw = evolve({flip}, from_edges({{0, 1}}), 5);

    // The reversed edge is isomorphic to the start state, so the evolution
    // reaches a fixpoint after one step: a single self-event and no frontier.
    EXPECT_EQ(mw.states.size(), 1u);
    ASSERT_EQ(mw.events.size(), 1u);
    EXPECT_EQ(mw.events[0].from_state, mw.events[0].to_state);
    EXPECT_EQ(mw.steps, 1);
    EXPECT_TRUE(mw.complete);

    // Its only candidate causal pair is the event with itself, which the
    // generation guard rejects; the causal graph must stay empty and acyclic.
    EXPECT_TRUE(causal_graph(mw).causal_edges.empty());
}

TEST(Multiway_Evolve, StateBudgetReturnsPartial) {
    EvolveOptions opt;
    opt.max_states = 3;
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 5, opt);
    EXPECT_FALSE(mw.complete);
    EXPECT_LE(mw.states.size(), 3u);
    for (const Event& e : mw.events) {
        EXPECT_TRUE(mw.states.count(e.from_state));
        EXPECT_TRUE(mw.states.count(e.to_state));
    }
}

TEST(Multiway_Evolve, EventBudgetReturnsPartial) {
    EvolveOptions opt;
    opt.max_events = 2;
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 5, opt);
    EXPECT_FALSE(mw.complete);
    EXPECT_EQ(mw.events.size(), 2u);
    for (const Event& e : mw.events) {
        EXPECT_TRUE(mw.states.count(e.from_state));
        EXPECT_TRUE(mw.states.count(e.to_state));
    }
}

TEST(Multiway_Evolve, EventSlotInvariants) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 3);
    std::set<std::tuple<std::string, CanonicalKey, CanonicalKey, std::set<EdgeId>, std::set<EdgeId>>>
        tuples;
    for (std::size_t i = 0; i < mw.events.size(); ++i) {
        const Event& e = mw.events[i];
        EXPECT_EQ(e.id, i);
        EXPECT_FALSE(e.consumed.empty());
        EXPECT_EQ(e.step, mw.generation.at(e.from_state) + 1);
        EXPECT_LE(mw.generation.at(e.to_state), e.step);
        std::size_t from_edges_n = mw.states.at(e.from_state).graph.edges().size();
        std::size_t to_edges_n = mw.states.at(e.to_state).graph.edges().size();
        for (EdgeId c : e.consumed) EXPECT_LT(c, from_edges_n);
        for (EdgeId c : e.created) EXPECT_LT(c, to_edges_n);
        tuples.insert({e.rule_name, e.from_state, e.to_state, e.consumed, e.created});
    }
    EXPECT_EQ(tuples.size(), mw.events.size());
}

TEST(Multiway_Evolve, DeletionReachesTheEmptyState) {
    RewriteRule del = make_rule("del", {{"x", "y"}}, {});
    MultiwayGraph mw = evolve({del}, from_edges({{0, 1}}), 2);
    ASSERT_EQ(mw.states.size(), 2u);
    ASSERT_EQ(mw.events.size(), 1u);
    EXPECT_TRUE(mw.events[0].created.empty());
    const OpenHypergraph& empty_state = mw.states.at(mw.events[0].to_state);
    EXPECT_TRUE(empty_state.graph.edges().empty());
    EXPECT_TRUE(empty_state.graph.vertices().empty());
    EXPECT_TRUE(causal_graph(mw).causal_edges.empty());
}

TEST(Multiway_Evolve, RejectsRulesWithConstantTerms) {
    RewriteRule r;
    r.name = "pinned";
    r.lhs.push_back(PatternEdge{{cterm(1), vterm(r, "x")}});
    r.rhs.push_back(PatternEdge{{vterm(r, "x"), vterm(r, "x")}});
    EXPECT_THROW(evolve({r}, from_edges({{1, 0}}), 1), ValidationError);
}

// ============================================================================
// Causal structure
// ============================================================================

TEST(Causal_Graph, EdgesAreDirectSlotDependencies) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 2);
    CausalGraph cg = causal_graph(mw);
    ASSERT_FALSE(cg.causal_edges.empty());
    for (const auto& [a, b] : cg.causal_edges) {
        const Event& e1 = cg.events[a];
        const Event& e2 = cg.events[b];
        EXPECT_EQ(e1.to_state, e2.from_state);
        EXPECT_LT(e1.step, e2.step);
        bool overlap = false;
        for (EdgeId c : e2.consumed) overlap |= e1.created.count(c) > 0;
        EXPECT_TRUE(overlap);
    }
}

TEST(Causal_Graph, GenerationGuardKeepsRevisitsAcyclic) {
    RewriteRule grow = make_rule("grow", {{"x", "y"}}, {{"x", "z"}, {"z", "y"}});
    RewriteRule shrink = make_rule("shrink", {{"x", "z"}, {"z", "y"}}, {{"x", "y"}});
    MultiwayGraph mw = evolve({grow, shrink}, from_edges({{0, 1}}), 2);
    CausalGraph cg = causal_graph(mw);

    const Event* fwd = nullptr;   // grow: initial -> two-edge path
    const Event* back = nullptr;  // shrink: two-edge path -> initial
    for (const Event& e : mw.events) {
        if (e.rule_name == "grow" && e.from_state == mw.initial) fwd = &e;
        if (e.rule_name == "shrink" && e.to_state == mw.initial) back = &e;
    }
    ASSERT_NE(fwd, nullptr);
    ASSERT_NE(back, nullptr);
    EXPECT_EQ(fwd->to_state, back->from_state);

    // shrink consumes what grow created, so the forward dependency is there;
    // the returning event recreates the initial edge slot, but the guard keeps
    // the back edge (later generation -> earlier one) out.
    auto has = [&](EventId a, EventId b) {
        return std::count(cg.causal_edges.begin(), cg.causal_edges.end(), std::pair{a, b}) > 0;
    };
    EXPECT_TRUE(has(fwd->id, back->id));
    EXPECT_FALSE(has(back->id, fwd->id));
    for (const auto& [a, b] : cg.causal_edges) EXPECT_LT(cg.events[a].step, cg.events[b].step);
}

TEST(Causal_Graph, MergedBranchesYieldMultipleInEdges) {
    RewriteRule loopify = make_rule("loopify", {{"x", "y"}}, {{"y", "y"}});
    RewriteRule unloop = make_rule("unloop", {{"x", "x"}}, {});
    MultiwayGraph mw = evolve({loopify, unloop}, from_edges({{0, 1}, {2, 1}}), 2);
    CausalGraph cg = causal_graph(mw);

    // Consuming either source edge gives the same canonical state, so two
    // distinct events (different consumed sets) land on one state and both
    // create the same canonical loop slot.
    std::vector<const Event*> into;
    for (const Event& e : mw.events)
        if (e.step == 1 && e.rule_name == "loopify") into.push_back(&e);
    ASSERT_EQ(into.size(), 2u);
    ASSERT_EQ(into[0]->to_state, into[1]->to_state);
    ASSERT_EQ(into[0]->created, into[1]->created);
    EXPECT_NE(into[0]->consumed, into[1]->consumed);

    const Event* del = nullptr;
    for (const Event& e : mw.events)
        if (e.rule_name == "unloop" && e.from_state == into[0]->to_state) del = &e;
    ASSERT_NE(del, nullptr);

    auto has = [&](EventId a, EventId b) {
        return std::count(cg.causal_edges.begin(), cg.causal_edges.end(), std::pair{a, b}) > 0;
    };
    EXPECT_TRUE(has(into[0]->id, del->id));
    EXPECT_TRUE(has(into[1]->id, del->id));
    EXPECT_TRUE(causally_independent(cg, into[0]->id, into[1]->id));
    EXPECT_FALSE(causally_independent(cg, into[0]->id, del->id));
}

TEST(Causal_Graph, ReplayOracleAgreesOnThreeStepEvolution) {
    std::vector<RewriteRule> rules{chain_rule()};
    MultiwayGraph mw = evolve(rules, double_self_loop(), 3);
    ASSERT_TRUE(mw.complete);
    ASSERT_GE(mw.events.size(), 5u);

    CausalGraph cg = causal_graph(mw);
    ASSERT_FALSE(cg.causal_edges.empty());
    EXPECT_EQ(cg.causal_edges, oracles::replay_causal_edges(rules, mw));
}

TEST(Causal_Graph, IndependenceAgreesWithSequentialIndependence) {
    struct Fixture {
        std::vector<RewriteRule> rules;
        Hypergraph init;
        int steps;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({{chain_rule()}, double_self_loop(), 3});
    fixtures.push_back(
        {{make_rule("append", {{"x", "y"}}, {{"x", "y"}, {"y", "z"}})}, from_edges({{0, 1}, {2, 3}}), 2});

    int dependent = 0;
    int independent = 0;
    for (const Fixture& fx : fixtures) {
        MultiwayGraph mw = evolve(fx.rules, fx.init, fx.steps);
        CausalGraph cg = causal_graph(mw);
        for (const Event& e1 : mw.events) {
            std::map<EdgeId, std::size_t> slot_of_raw;
            AppliedRewrite a1 = oracles::replay_event(fx.rules, mw, e1, &slot_of_raw);
            for (const Event& e2 : mw.events) {
                if (e2.from_state != e1.to_state || e1.step >= e2.step) continue;

                // Pull e2's consumed canonical slots back into e1's concrete
                // output, then rerun e2 there as an ordinary second rewrite.
                std::set<EdgeId> raw_consumed;
                for (const auto& [raw, slot] : slot_of_raw)
                    if (e2.consumed.count(static_cast<EdgeId>(slot))) raw_consumed.insert(raw);
                const RewriteRule* r2 = nullptr;
                for (const auto& r : fx.rules)
                    if (r.name == e2.rule_name) r2 = &r;
                ASSERT_NE(r2, nullptr);
                bool checked = false;
                for (const auto& m : find_matches(*r2, a1.res.result)) {
                    if (std::set<EdgeId>(m.edge_assignment.begin(), m.edge_assignment.end()) !=
                        raw_consumed)
                        continue;
                    AppliedRewrite a2 = apply_rewrite(*r2, a1.res.result, m);
                    bool seq = sequentially_independent(a1, a2);
                    EXPECT_EQ(seq, causally_independent(cg, e1.id, e2.id));
                    (seq ? independent : dependent)++;
                    checked = true;
                    break;
                }
                EXPECT_TRUE(checked);
            }
        }
    }
    EXPECT_GT(dependent, 0);
    EXPECT_GT(independent, 0);
}

// ============================================================================
// Selection scores
// ============================================================================

TEST(Causal_Score, HandBuiltExamples) {
    CausalGraph cg;
    cg.events = {fake_event(0, "A", "B", 1), fake_event(1, "B", "C", 2), fake_event(2, "B", "D", 2),
                 fake_event(3, "C", "E", 3)};
    cg.causal_edges = {{0, 1}, {0, 2}, {1, 3}};

    EXPECT_EQ(selection_score(cg, {}), 0u);
    EXPECT_EQ(selection_score(cg, {0}), 2u);
    EXPECT_EQ(selection_score(cg, {0, 1}), 3u);
    EXPECT_EQ(selection_score(cg, {0, 2}), 2u);
    EXPECT_EQ(selection_score(cg, {0, 1, 3}), 3u);
    EXPECT_THROW(selection_score(cg, {1, 2}), Error);   // C != B: not a path
    EXPECT_THROW(selection_score(cg, {0, 99}), Error);  // unknown event id

    EXPECT_FALSE(causally_independent(cg, 0, 1));
    EXPECT_FALSE(causally_independent(cg, 1, 0));  // order must not matter
    EXPECT_TRUE(causally_independent(cg, 1, 2));   // sibling branches
    EXPECT_TRUE(causally_independent(cg, 0, 3));   // only transitively related
}

TEST(Causal_Score, MatchesOutDegreeOnRealEvolution) {
    MultiwayGraph mw = evolve({chain_rule()}, double_self_loop(), 3);
    CausalGraph cg = causal_graph(mw);

    const Event* first = nullptr;
    for (const Event& e : mw.events)
        if (e.from_state == mw.initial) first = &e;
    ASSERT_NE(first, nullptr);

    std::size_t manual = 0;
    for (const auto& [a, b] : cg.causal_edges)
        if (a == first->id) ++manual;
    ASSERT_GT(manual, 0u);
    EXPECT_EQ(selection_score(cg, {first->id}), manual);

    for (const Event& e2 : mw.events) {
        if (e2.from_state != first->to_state) continue;
        EXPECT_EQ(selection_score(cg, {first->id, e2.id}),
                  manual + causal_out_degree(cg, e2.id));
        break;
    }
}

}  // namespace
