#include <gtest/gtest.h>

#include <random>

#include "mwcau/canonical.hpp"
#include "mwcau/hypergraph.hpp"
#include "oracles.hpp"

using namespace mwcau;

namespace {

Hypergraph from_edges(const std::vector<std::vector<VertexId>>& edges) {
    Hypergraph g;
    for (const auto& e : edges) g.add_edge(e);
    return g;
}

}  // namespace

// =============================================================================
// Key semantics on hand-picked structures
// =============================================================================

TEST(Canonical_Key, IgnoresVertexNamesAndInsertionOrder) {
    Hypergraph a = from_edges({{0, 1}, {1, 2}});
    Hypergraph b = from_edges({{7, 4}, {9, 7}});  // 9->7->4, same shape
    EXPECT_EQ(canonical_form(a).key, canonical_form(b).key);

    Hypergraph c;
    c.add_edge_with_id(12, {1, 2});
    c.add_edge_with_id(3, {0, 1});
    EXPECT_EQ(canonical_form(a).key, canonical_form(c).key);
}

TEST(Canonical_Key, DirectionMatters) {
    Hypergraph a = from_edges({{0, 1}});
    Hypergraph b = from_edges({{1, 0}});
    EXPECT_EQ(canonical_form(a).key, canonical_form(b).key);  // relabelable
    Hypergraph path_in = from_edges({{0, 1}, {2, 1}});        // two edges into 1
    Hypergraph path_thru = from_edges({{0, 1}, {1, 2}});
    EXPECT_NE(canonical_form(path_in).key, canonical_form(path_thru).key);
}

TEST(Canonical_Key, IncidenceOrderWithinEdgeMatters) {
    Hypergraph a = from_edges({{0, 0, 1}});
    Hypergraph b = from_edges({{0, 1, 0}});
    EXPECT_NE(canonical_form(a).key, canonical_form(b).key);
}

TEST(Canonical_Key, ParallelEdgeMultiplicity) {
    Hypergraph a = from_edges({{0, 1}, {0, 1}});
    Hypergraph b = from_edges({{0, 1}});
    Hypergraph c = from_edges({{0, 1}, {0, 1}, {0, 1}});
    EXPECT_NE(canonical_form(a).key, canonical_form(b).key);
    EXPECT_NE(canonical_form(a).key, canonical_form(c).key);
}

TEST(Canonical_Key, SelfLoopDistinct) {
    Hypergraph a = from_edges({{0, 0}});
    Hypergraph b = from_edges({{0, 1}});
    EXPECT_NE(canonical_form(a).key, canonical_form(b).key);
}

TEST(Canonical_Key, IsolatedVerticesCount) {
    Hypergraph a = from_edges({{0, 1}});
    Hypergraph b = from_edges({{0, 1}});
    b.add_vertex(9);
    EXPECT_NE(canonical_form(a).key, canonical_form(b).key);
}

TEST(Canonical_Key, LabelsAreColors) {
    Hypergraph a = from_edges({{0, 1}});
    Hypergraph b = from_edges({{0, 1}});
    b.set_label(0, {"Z", "0/1"});
    Hypergraph c = from_edges({{0, 1}});
    c.set_label(0, {"Z", "1/2"});
    Hypergraph d = from_edges({{0, 1}});
    d.set_label(1, {"Z", "0/1"});
    EXPECT_NE(canonical_form(a).key, canonical_form(b).key);
    EXPECT_NE(canonical_form(b).key, canonical_form(c).key);
    EXPECT_NE(canonical_form(b).key, canonical_form(d).key);  // position differs
}

// Refinement alone cannot split a 6-cycle from two 3-cycles; the search has
// to individualize.
TEST(Canonical_Key, SixCycleVsTwoTriangles) {
    Hypergraph c6 = from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    Hypergraph c33 = from_edges({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    EXPECT_FALSE(oracles::brute_force_isomorphic(c6, c33));
    EXPECT_NE(canonical_form(c6).key, canonical_form(c33).key);

    Hypergraph c6b = from_edges({{3, 5}, {5, 1}, {1, 4}, {4, 0}, {0, 2}, {2, 3}});
    EXPECT_EQ(canonical_form(c6).key, canonical_form(c6b).key);
}

TEST(Canonical_Key, UndirectedWiresAreSymmetric) {
    Hypergraph a;
    a.add_edge({0, 1}, false);
    Hypergraph b;
    b.add_edge({1, 0}, false);
    EXPECT_EQ(canonical_form(a).key, canonical_form(b).key);
    Hypergraph c;
    c.add_edge({0, 1}, true);
    EXPECT_NE(canonical_form(a).key, canonical_form(c).key);
}

TEST(Canonical_Key, EmptyAndTinyGraphs) {
    Hypergraph empty;
    EXPECT_EQ(canonical_form(empty).key, canonical_form(Hypergraph{}).key);
    Hypergraph v1;
    v1.add_vertex();
    EXPECT_NE(canonical_form(empty).key, canonical_form(v1).key);
}

// =============================================================================
// Open typing: boundary order is part of the isomorphism class
// =============================================================================

namespace {

OpenHypergraph two_wires(bool crossed) {
    OpenHypergraph g;
    for (VertexId v = 0; v < 4; ++v) g.graph.add_vertex(v);
    // 0,1 inputs; 2,3 outputs
    g.graph.add_edge({0, crossed ? 3u : 2u}, false);
    g.graph.add_edge({1, crossed ? 2u : 3u}, false);
    g.dummies = {0, 1, 2, 3};
    g.boundary = {0, 1, 2, 3};
    return g;
}

}  // namespace

TEST(Canonical_Open, SwapIsNotIdentity) {
    OpenHypergraph id = two_wires(false);
    OpenHypergraph swap = two_wires(true);
    EXPECT_FALSE(oracles::brute_force_isomorphic(id, swap));
    EXPECT_NE(canonical_form(id).key, canonical_form(swap).key);
}

TEST(Canonical_Open, DummyTypingDistinguishes) {
    OpenHypergraph open;
    open.graph.add_edge({0, 1});
    open.dummies = {1};
    open.boundary = {1};
    Hypergraph closed;
    closed.add_edge({0, 1});
    EXPECT_NE(canonical_form(open).key, canonical_form(closed).key);
}

// =============================================================================
// Canonical representative and maps
// =============================================================================

TEST(Canonical_Form, RepresentativeHasSameKeyAndDenseIds) {
    Hypergraph g;
    g.add_edge_with_id(40, {17, 5, 17});
    g.add_edge_with_id(2, {5, 9});
    g.set_label(9, {"Z", "1/4"});
    CanonicalForm form = canonical_form(g);
    Hypergraph rep = apply_relabeling(g, form);
    EXPECT_EQ(canonical_form(rep).key, form.key);
    EXPECT_TRUE(oracles::brute_force_isomorphic(g, rep));
    // Vertices renamed onto 0..n-1, edge ids onto canonical indices.
    VertexId expect = 0;
    for (VertexId v : rep.vertices()) EXPECT_EQ(v, expect++);
    for (std::size_t i = 0; i < rep.edges().size(); ++i) EXPECT_EQ(rep.edges()[i].id, i);
}

TEST(Canonical_Form, EdgeIndexIsBijection) {
    Hypergraph g;
    g.add_edge_with_id(10, {0, 1});
    g.add_edge_with_id(20, {0, 1});
    g.add_edge_with_id(30, {1, 0});
    CanonicalForm form = canonical_form(g);
    std::set<std::size_t> indices;
    for (const auto& [eid, idx] : form.edge_index) {
        EXPECT_TRUE(g.has_edge(eid));
        indices.insert(idx);
    }
    EXPECT_EQ(indices.size(), 3u);
    EXPECT_EQ(*indices.begin(), 0u);
    EXPECT_EQ(*indices.rbegin(), 2u);
}

TEST(Canonical_Form, DeterministicAcrossCalls) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Hypergraph g = oracles::random_hypergraph(rng, {.with_labels = true});
        CanonicalForm f1 = canonical_form(g);
        CanonicalForm f2 = canonical_form(g);
        EXPECT_EQ(f1.key, f2.key);
        EXPECT_EQ(f1.vertex_map, f2.vertex_map);
        EXPECT_EQ(f1.edge_index, f2.edge_index);
    }
}

// =============================================================================
// Oracle cross-checks on random instances
// =============================================================================

TEST(Canonical_Oracle, ScrambledCopiesGetEqualKeys) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        Hypergraph g = oracles::random_hypergraph(
            rng, {.with_labels = trial % 2 == 0, .with_undirected = trial % 3 == 0});
        auto [h, phi] = oracles::scrambled_copy(g, rng);
        ASSERT_EQ(canonical_form(g).key, canonical_form(h).key)
            << "trial " << trial << ": scrambled copy got a different key";
    }
}

TEST(Canonical_Oracle, KeyEqualityMatchesBruteForce) {
    std::mt19937 rng(23);
    int equal_seen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        oracles::RandomGraphOptions opt;
        opt.min_vertices = 2;
        opt.max_vertices = 4;
        opt.min_edges = 1;
        opt.max_edges = 4;
        opt.max_arity = 2;
        Hypergraph a = oracles::random_hypergraph(rng, opt);
        Hypergraph b = oracles::random_hypergraph(rng, opt);
        bool keys_equal = canonical_form(a).key == canonical_form(b).key;
        bool iso = oracles::brute_force_isomorphic(a, b);
        ASSERT_EQ(keys_equal, iso) << "trial " << trial;
        if (iso) ++equal_seen;
    }
    // Sanity: the sample must actually contain positive cases.
    EXPECT_GT(equal_seen, 0);
}

TEST(Canonical_Oracle, OpenGraphsMatchBruteForce) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Hypergraph core = oracles::random_hypergraph(
            rng, {.min_vertices = 2, .max_vertices = 4, .min_edges = 1, .max_edges = 3});
        OpenHypergraph g;
        g.graph = core;
        // Hang one dangling edge per chosen anchor; free end becomes a dummy.
        std::vector<VertexId> anchors(core.vertices().begin(), core.vertices().end());
        std::size_t n_dummies = 1 + rng() % 2;
        for (std::size_t i = 0; i < n_dummies; ++i) {
            VertexId d = g.graph.next_vertex_id();
            g.graph.add_edge({anchors[rng() % anchors.size()], d});
            g.dummies.insert(d);
            g.boundary.push_back(d);
        }
        auto [h, phi] = oracles::scrambled_copy(g, rng);
        EXPECT_EQ(canonical_form(g).key, canonical_form(h).key) << "trial " << trial;
        EXPECT_TRUE(oracles::brute_force_isomorphic(g, h));
        // Reversing a 2-boundary changes the class unless symmetric.
        if (g.boundary.size() == 2) {
            OpenHypergraph rev = g;
            std::swap(rev.boundary[0], rev.boundary[1]);
            bool keys_equal = canonical_form(g).key == canonical_form(rev).key;
            EXPECT_EQ(keys_equal, oracles::brute_force_isomorphic(g, rev)) << "trial " << trial;
        }
    }
}

// Automorphism-rich instances stress the orbit pruning path.
TEST(Canonical_Oracle, HighSymmetryInstances) {
    // Star with 6 identical leaves.
    Hypergraph star;
    for (VertexId leaf = 1; leaf <= 6; ++leaf) star.add_edge({0, leaf});
    auto [star2, phi1] = [&] {
        std::mt19937 rng(3);
        return oracles::scrambled_copy(star, rng);
    }();
    EXPECT_EQ(canonical_form(star).key, canonical_form(star2).key);

    // 3-cube, undirected.
    Hypergraph cube;
    const int edges[12][2] = {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
                              {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}};
    for (auto& e : edges)
        cube.add_edge({static_cast<VertexId>(e[0]), static_cast<VertexId>(e[1])}, false);
    std::mt19937 rng(5);
    auto [cube2, phi2] = oracles::scrambled_copy(cube, rng);
    EXPECT_EQ(canonical_form(cube).key, canonical_form(cube2).key);
    // Moebius-Kantor-like twist: rewire one edge, class must change.
    Hypergraph twisted = cube;
    twisted.remove_edge(twisted.edges().back().id);
    twisted.add_edge({5, 6}, false);
    EXPECT_NE(canonical_form(cube).key, canonical_form(twisted).key);
}
