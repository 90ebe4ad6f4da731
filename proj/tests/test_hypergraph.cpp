#include <gtest/gtest.h>

#include "mwcau/hypergraph.hpp"

using namespace mwcau;

// =============================================================================
// Construction and basic accessors
// =============================================================================

TEST(Hypergraph_Basics, AddVertexAssignsSequentialIds) {
    Hypergraph g;
    EXPECT_EQ(g.add_vertex(), 0u);
    EXPECT_EQ(g.add_vertex(), 1u);
    g.add_vertex(10);
    EXPECT_EQ(g.add_vertex(), 11u);
    EXPECT_EQ(g.vertices().size(), 4u);
}

TEST(Hypergraph_Basics, AddEdgeCreatesEndpointVertices) {
    Hypergraph g;
    EdgeId e = g.add_edge({3, 4, 3});
    EXPECT_TRUE(g.has_vertex(3));
    EXPECT_TRUE(g.has_vertex(4));
    const Hyperedge* he = g.find_edge(e);
    ASSERT_NE(he, nullptr);
    EXPECT_EQ(he->arity(), 3u);
    EXPECT_EQ(he->vertices, (std::vector<VertexId>{3, 4, 3}));
    EXPECT_TRUE(he->directed);
}

TEST(Hypergraph_Basics, EdgeIdsAreStableUnderRemoval) {
    Hypergraph g;
    EdgeId a = g.add_edge({0, 1});
    EdgeId b = g.add_edge({1, 2});
    g.remove_edge(a);
    EXPECT_FALSE(g.has_edge(a));
    EXPECT_TRUE(g.has_edge(b));
    // Fresh ids never collide with live ones.
    EdgeId c = g.add_edge({2, 0});
    EXPECT_NE(c, b);
}

TEST(Hypergraph_Basics, DegreeCountsRepeatedIncidence) {
    Hypergraph g;
    g.add_edge({5, 5, 6});
    g.add_edge({6, 5});
    EXPECT_EQ(g.degree(5), 3u);
    EXPECT_EQ(g.degree(6), 2u);
    EXPECT_EQ(g.degree(7), 0u);
    EXPECT_EQ(g.incident_edges(5).size(), 2u);
}

TEST(Hypergraph_Basics, DuplicateEdgeContentsAllowed) {
    Hypergraph g;
    EdgeId a = g.add_edge({0, 1});
    EdgeId b = g.add_edge({0, 1});
    EXPECT_NE(a, b);
    EXPECT_TRUE(g.find_edge(a)->same_content(*g.find_edge(b)));
    EXPECT_EQ(g.edges().size(), 2u);
}

// =============================================================================
// Validation
// =============================================================================

TEST(Hypergraph_Validation, RejectsArityZero) {
    Hypergraph g;
    EXPECT_THROW(g.add_edge({}), ValidationError);
}

TEST(Hypergraph_Validation, RejectsUndirectedNonPair) {
    Hypergraph g;
    EXPECT_THROW(g.add_edge({0, 1, 2}, false), ValidationError);
    EXPECT_NO_THROW(g.add_edge({0, 1}, false));
    EXPECT_NO_THROW(g.add_edge({0, 0}, false));  // self loop wire
}

TEST(Hypergraph_Validation, RejectsDuplicateEdgeId) {
    Hypergraph g;
    g.add_edge_with_id(7, {0, 1});
    EXPECT_THROW(g.add_edge_with_id(7, {1, 2}), ValidationError);
}

TEST(Hypergraph_Validation, RemoveUnknownEdgeThrows) {
    Hypergraph g;
    EXPECT_THROW(g.remove_edge(3), ValidationError);
}

TEST(Hypergraph_Validation, ValidGraphHasNoViolations) {
    Hypergraph g;
    g.add_edge({0, 1});
    g.set_label(0, {"Z", "1/2"});
    EXPECT_TRUE(g.validate().empty());
    EXPECT_NO_THROW(g.ensure_valid());
}

// =============================================================================
// Labels
// =============================================================================

TEST(Hypergraph_Labels, SetAndOverwrite) {
    Hypergraph g;
    g.set_label(2, {"Z", "0/1"});
    ASSERT_NE(g.label(2), nullptr);
    EXPECT_EQ(g.label(2)->kind, "Z");
    g.set_label(2, {"X", "1/1"});
    EXPECT_EQ(g.label(2)->kind, "X");
    EXPECT_EQ(g.label(3), nullptr);
    EXPECT_TRUE(g.has_vertex(2));  // labeling implies membership
}

// =============================================================================
// Pruning
// =============================================================================

TEST(Hypergraph_Prune, DropsIsolatedKeepsRequested) {
    Hypergraph g;
    g.add_edge({0, 1});
    g.add_vertex(5);
    g.add_vertex(6);
    g.set_label(5, {"Z", "0/1"});
    Hypergraph pruned = prune_isolated(g, {6});
    EXPECT_TRUE(pruned.has_vertex(0));
    EXPECT_TRUE(pruned.has_vertex(1));
    EXPECT_FALSE(pruned.has_vertex(5));
    EXPECT_TRUE(pruned.has_vertex(6));
    EXPECT_EQ(pruned.label(5), nullptr);
}

// =============================================================================
// Open typing
// =============================================================================

static OpenHypergraph small_open() {
    OpenHypergraph g;
    g.graph.add_edge({0, 1});
    g.graph.add_edge({1, 2});
    g.dummies = {0, 2};
    g.boundary = {0, 2};
    return g;
}

TEST(OpenHypergraph_Validation, WellTypedPasses) {
    OpenHypergraph g = small_open();
    EXPECT_TRUE(g.validate().empty());
    EXPECT_FALSE(g.is_closed());
    EXPECT_TRUE(g.is_dummy(0));
    EXPECT_FALSE(g.is_dummy(1));
}

TEST(OpenHypergraph_Validation, DummyMustHaveDegreeOne) {
    OpenHypergraph g = small_open();
    g.graph.add_edge({2, 1});  // second incidence at dummy 2
    auto v = g.validate();
    ASSERT_FALSE(v.empty());
    EXPECT_NE(v.front().find("degree"), std::string::npos);
    EXPECT_THROW(g.ensure_valid(), ValidationError);
}

TEST(OpenHypergraph_Validation, DummyMustBeUnlabeled) {
    OpenHypergraph g = small_open();
    g.graph.set_label(0, {"Z", "0/1"});
    EXPECT_FALSE(g.validate().empty());
}

TEST(OpenHypergraph_Validation, BoundaryMustCoverDummiesExactlyOnce) {
    OpenHypergraph g = small_open();
    g.boundary = {0};  // omits dummy 2
    EXPECT_FALSE(g.validate().empty());
    g.boundary = {0, 2, 0};
    EXPECT_FALSE(g.validate().empty());
    g.boundary = {2, 0};  // order is free, coverage is not
    EXPECT_TRUE(g.validate().empty());
}

TEST(OpenHypergraph_Validation, BoundaryVertexMustBeDummy) {
    OpenHypergraph g = small_open();
    g.boundary = {0, 2, 1};
    EXPECT_FALSE(g.validate().empty());
}

TEST(OpenHypergraph_Prune, KeepsDummies) {
    OpenHypergraph g = small_open();
    g.graph.add_vertex(9);
    OpenHypergraph pruned = prune_isolated(g);
    EXPECT_FALSE(pruned.graph.has_vertex(9));
    EXPECT_TRUE(pruned.graph.has_vertex(0));
    EXPECT_TRUE(pruned.graph.has_vertex(2));
}

TEST(OpenHypergraph_Basics, AsOpenIsClosed) {
    Hypergraph g;
    g.add_edge({0, 1});
    OpenHypergraph o = as_open(g);
    EXPECT_TRUE(o.is_closed());
    EXPECT_TRUE(validate_open(o).empty());
}
