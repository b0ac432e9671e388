#include <gtest/gtest.h>

#include "balance/signed_graph.hpp"

using namespace balance;

TEST(Graph, TriangleFromRecords) {
  const auto g = from_edge_list(3, {{0, 1, +1}, {1, 2, +1}, {0, 2, +1}});
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.negative_count(), 0u);
}

TEST(Graph, CompleteFourGraph) {
  std::vector<SignedEdgeRecord> r;
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) r.push_back({a, b, +1});
  const auto g = from_edge_list(4, r);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(g.negative_count(), 0u);
}

TEST(Graph, CanonicalOrderAndSignsFollowEdges) {
  const auto g = from_edge_list(4, {{3, 2, -1}, {1, 0, +1}, {2, 0, -1}});
  ASSERT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.edge(0), (Edge{0, 1}));
  EXPECT_EQ(g.edge(1), (Edge{0, 2}));
  EXPECT_EQ(g.edge(2), (Edge{2, 3}));
  EXPECT_EQ(g.sign(0), Sign::positive);
  EXPECT_EQ(g.sign(1), Sign::negative);
  EXPECT_EQ(g.sign(2), Sign::negative);
  EXPECT_EQ(g.negative_count(), 2u);
}

TEST(Graph, SelfLoopRejected) {
  EXPECT_THROW(from_edge_list(3, {{0, 0, +1}}), ValidationError);
}

TEST(Graph, DuplicateNamesLaterLine) {
  try {
    from_edge_list(3, {{0, 1, +1, 4}, {2, 1, +1, 5}, {1, 0, -1, 9}});
    FAIL() << "duplicate accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.line(), 9u);
    EXPECT_NE(std::string(e.what()).find("line 9"), std::string::npos);
  }
}

TEST(Graph, OutOfRangeAndBadSign) {
  EXPECT_THROW(from_edge_list(2, {{0, 2, +1}}), ValidationError);
  EXPECT_THROW(from_edge_list(3, {{0, 1, 0}}), ValidationError);
  EXPECT_THROW(from_edge_list(3, {{0, 1, 2}}), ValidationError);
}

TEST(Graph, NeighborsSortedAndFindEdge) {
  const auto g = from_edge_list(5, {{4, 0, +1}, {0, 2, +1}, {0, 1, -1}, {3, 0, +1}, {2, 4, +1}});
  const auto nb = g.support().neighbors(0);
  ASSERT_EQ(nb.size(), 4u);
  for (std::size_t i = 1; i < nb.size(); ++i) EXPECT_LT(nb[i - 1].vertex, nb[i].vertex);
  for (const auto& n : nb) EXPECT_EQ(g.support().find_edge(0, n.vertex), n.edge);
  EXPECT_FALSE(g.support().find_edge(1, 3).has_value());
  EXPECT_FALSE(g.support().find_edge(1, 99).has_value());
  EXPECT_EQ(g.support().degree(0), 4u);
}

TEST(Graph, SignSubgraphs) {
  const auto g = from_edge_list(3, {{0, 1, +1}, {1, 2, +1}, {0, 2, -1}});
  const auto neg = sign_subgraph(g, Sign::negative);
  EXPECT_EQ(neg.vertex_count(), 3u);
  ASSERT_EQ(neg.edge_count(), 1u);
  EXPECT_EQ(neg.edge(0), (Edge{0, 2}));
  EXPECT_EQ(neg.negative_count(), 1u);
  const auto pos = sign_subgraph(g, Sign::positive);
  EXPECT_EQ(pos.edge_count() + neg.edge_count(), g.edge_count());

  const auto all_pos = from_edge_list(3, {{0, 1, +1}, {1, 2, +1}});
  EXPECT_EQ(sign_subgraph(all_pos, Sign::negative).edge_count(), 0u);
}

TEST(Graph, WithSignsSharesSupport) {
  const auto g = from_edge_list(3, {{0, 1, +1}, {1, 2, +1}, {0, 2, +1}});
  const auto h = g.with_signs({Sign::negative, Sign::positive, Sign::negative});
  EXPECT_EQ(&g.support(), &h.support());
  EXPECT_EQ(h.negative_count(), 2u);
  EXPECT_THROW(g.with_signs({Sign::negative}), ValidationError);
  EXPECT_FALSE(g == h);
}

TEST(Graph, DirectConstructorSorts) {
  const Graph g(4, {{3, 1}, {0, 2}, {2, 1}});
  EXPECT_EQ(g.edge(0), (Edge{0, 2}));
  EXPECT_EQ(g.edge(1), (Edge{1, 2}));
  EXPECT_EQ(g.edge(2), (Edge{1, 3}));
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
}
