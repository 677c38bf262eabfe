#include "taskgraph/graph.hpp"

#include <random>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "taskgraph/resource.hpp"

namespace taskgraph {
namespace {

TaskGraph chain(std::initializer_list<NodeId> ids) {
  std::vector<NodeId> nodes(ids);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    edges.emplace_back(nodes[i], nodes[i + 1]);
  return TaskGraph::make(nodes, edges);
}

TaskGraph diamond() {
  return TaskGraph::make({"A", "B", "C", "D"},
                         {{"A", "B"}, {"A", "C"}, {"B", "D"}, {"C", "D"}});
}

TEST(Resources, MatchingIsSymmetricAndCategoryOnly) {
  Resource a("xlsx_path", "C:/a.xlsx");
  Resource b("xlsx_path", "C:/b.xlsx");
  Resource c("pdf_path");
  EXPECT_TRUE(matches(a, b));
  EXPECT_TRUE(matches(b, a));  // parameters never matter
  EXPECT_FALSE(matches(a, c));
  EXPECT_FALSE(matches(c, a));
  EXPECT_THROW(Resource(""), Error);
  EXPECT_THROW(Resource("two words"), Error);
}

TEST(ValidateGraph, MinimalDagIsClean) {
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  EXPECT_TRUE(validate_graph(g).empty());
}

TEST(ValidateGraph, SmallestCycleIsReported) {
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  auto report = validate_graph(g);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_NE(report[0].find("cycle"), std::string::npos);
}

TEST(ValidateGraph, UnknownEndpointIsReported) {
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  g.edges["A"].push_back("Z");
  auto report = validate_graph(g);
  ASSERT_FALSE(report.empty());
  EXPECT_NE(report[0].find("unknown node"), std::string::npos);
}

TEST(ValidateGraph, SelfLoopRejected) {
  TaskGraph g = TaskGraph::make({"A"}, {});
  g.edges["A"].push_back("A");
  auto report = validate_graph(g);
  ASSERT_FALSE(report.empty());
  EXPECT_NE(report[0].find("self-loop"), std::string::npos);
}

TEST(ValidateGraph, BadSuccessfulTopoIsReported) {
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}});
  g.successful_topo = {{"B", "A"}};
  auto report = validate_graph(g);
  ASSERT_FALSE(report.empty());
  EXPECT_NE(report[0].find("successful_topo"), std::string::npos);
}

TEST(TaskGraphMake, DuplicateEdgesCollapse) {
  TaskGraph g = TaskGraph::make({"A", "B"}, {{"A", "B"}, {"A", "B"}});
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(NodeDepth, IsolatedNodeHasDepthOne) {
  TaskGraph g = TaskGraph::make({"A"}, {});
  EXPECT_EQ(node_depth(g, "A"), 1);
}

TEST(NodeDepth, ChainAndDiamond) {
  EXPECT_EQ(node_depth(chain({"A", "B"}), "B"), 2);
  EXPECT_EQ(node_depth(diamond(), "D"), 3);  // longest path A,B,D
}

TEST(NodeDepth, UnknownNodeThrows) {
  EXPECT_THROW(node_depth(diamond(), "Z"), Error);
}

TEST(GraphWidth, ChainIsolatedDiamond) {
  EXPECT_EQ(graph_width(chain({"a", "b", "c", "d", "e"})), 1);
  EXPECT_EQ(graph_width(diamond()), 2);
  EXPECT_EQ(graph_width(TaskGraph::make({"A", "B", "C"}, {})), 3);
}

TEST(GraphWidth, EmptyGraphThrows) {
  EXPECT_THROW(graph_width(TaskGraph::make({}, {})), Error);
}

TEST(AllTopologicalOrders, KnownSmallCases) {
  EXPECT_EQ(all_topological_orders(chain({"A", "B"})),
            (std::vector<std::vector<NodeId>>{{"A", "B"}}));
  EXPECT_EQ(all_topological_orders(TaskGraph::make({"A", "B"}, {})),
            (std::vector<std::vector<NodeId>>{{"A", "B"}, {"B", "A"}}));
  EXPECT_EQ(all_topological_orders(diamond()).size(), 2u);
}

TEST(AllTopologicalOrders, CapIsEnforcedAndNamed) {
  std::vector<NodeId> ids;
  for (int i = 0; i < 13; ++i) ids.push_back("n" + std::to_string(i));
  try {
    all_topological_orders(TaskGraph::make(ids, {}));
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("12"), std::string::npos);
  }
}

TEST(AllTopologicalOrders, MatchesPermutationOracleOnRandomDags) {
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 60; ++trial) {
    TaskGraph g = oracles::random_dag(rng, 1 + trial % 7, 0.35);
    EXPECT_EQ(all_topological_orders(g),
              oracles::permutation_topological_orders(g));
  }
}

TEST(NodeDepth, MatchesPathEnumerationOracleAndIsMonotone) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    TaskGraph g = oracles::random_dag(rng, 2 + trial % 7, 0.4);
    const auto depths = depth_map(g);
    for (const auto& id : g.nodes)
      EXPECT_EQ(depths.at(id), oracles::brute_depth(g, id));
    for (const auto& [from, succ] : g.edges)
      for (const auto& to : succ)
        EXPECT_GE(depths.at(to), depths.at(from) + 1);
  }
}

}  // namespace
}  // namespace taskgraph
