#include <gtest/gtest.h>

#include "support.hpp"

using namespace netprice;
using namespace testing_support;

TEST(Graph, StoresBothEndpointsSorted) {
  const std::vector<Edge> edges{{2, 0, 3}, {0, 1, 1}};
  const WeightedGraph g(3, edges);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  ASSERT_EQ(g.neighbors(0).size(), 2u);
  EXPECT_EQ(g.neighbors(0)[0].neighbor, 1u);
  EXPECT_EQ(g.neighbors(0)[1].neighbor, 2u);
  EXPECT_EQ(g.weight(0, 2), 3);
  EXPECT_EQ(g.weight(2, 0), 3);
  EXPECT_EQ(g.weight(1, 2), 0);
  EXPECT_EQ(g.weighted_degree(0), 4);
  EXPECT_EQ(g.total_weight(), 4);
  EXPECT_FALSE(g.unweighted());
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1, 1}, {0, 2, 3}}));
}

TEST(Graph, RejectsBadEdges) {
  const std::vector<Edge> loop{{1, 1, 1}}, outside{{0, 3, 1}}, zero{{0, 1, 0}}, dup{{0, 1, 1}, {1, 0, 2}};
  EXPECT_THROW(WeightedGraph(3, loop), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(3, outside), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(3, zero), std::invalid_argument);
  EXPECT_THROW(WeightedGraph(3, dup), std::invalid_argument);
}

TEST(Graph, EmptyGraph) {
  const WeightedGraph g(0, {});
  EXPECT_EQ(g.node_count(), 0u);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_TRUE(g.unweighted());
}

TEST(Instance, InitialValuesAndCeiling) {
  const auto inst = weighted(3, {{0, 1, 2}, {1, 2, 5}}, {1, 0, 3});
  EXPECT_EQ(inst.initial_value(0), 3);
  EXPECT_EQ(inst.initial_value(1), 7);
  EXPECT_EQ(inst.initial_value(2), 8);
  EXPECT_EQ(inst.intrinsic_sum(), 4);
  EXPECT_EQ(inst.revenue_ceiling(), 4 + 2 * 7);
  EXPECT_FALSE(inst.zero_intrinsic());
}

TEST(Instance, RejectsBadIntrinsicValues) {
  const WeightedGraph g(2, std::vector<Edge>{{0, 1, 1}});
  EXPECT_THROW(PncInstance(g, {1}), std::invalid_argument);
  EXPECT_THROW(PncInstance(g, {1, -1}), std::invalid_argument);
}

TEST(Instance, OverflowIsReported) {
  const Money big = std::numeric_limits<Money>::max() / 2 + 1;
  const std::vector<Edge> edges{{0, 1, big}, {0, 2, big}};
  EXPECT_THROW(WeightedGraph(3, edges), std::overflow_error);
  EXPECT_THROW(checked_mul(big, 2), std::overflow_error);
  EXPECT_THROW(checked_add(std::numeric_limits<Money>::max(), 1), std::overflow_error);
}

TEST(TotalValue, MatchesDefinition) {
  const auto inst = weighted(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}, {5, 0, 0, 0});
  NodeSet q(4, true);
  EXPECT_EQ(total_value(inst, 0, q), 14);
  q.erase(2);
  EXPECT_EQ(total_value(inst, 0, q), 11);
  q.erase(1);
  q.erase(3);
  EXPECT_EQ(total_value(inst, 0, q), 5);
}

TEST(TotalValue, RejectsNodesOutsideRemainingSet) {
  const auto inst = path3();
  NodeSet q(3, true);
  q.erase(1);
  EXPECT_THROW(total_value(inst, 1, q), std::invalid_argument);
  EXPECT_THROW(total_value(inst, 7, q), std::invalid_argument);
  EXPECT_THROW(total_value(inst, 0, NodeSet(4, true)), std::invalid_argument);
}

TEST(NodeSetTest, InsertEraseMembers) {
  NodeSet s(5);
  s.insert(3);
  s.insert(1);
  s.insert(3);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.members(), (std::vector<NodeId>{1, 3}));
  s.erase(3);
  s.erase(4);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_FALSE(s.contains(3));
  EXPECT_THROW(s.insert(5), std::out_of_range);
}

TEST(Prices, ValidationAndMonotonicity) {
  EXPECT_THROW(PriceSequence({3, -1}), std::invalid_argument);
  EXPECT_TRUE(PriceSequence({5, 3, 1}).strictly_decreasing());
  EXPECT_FALSE(PriceSequence({5, 5, 1}).strictly_decreasing());
  EXPECT_TRUE(PriceSequence().strictly_decreasing());
}

TEST(InstanceFile, CanonicalRoundTripIsByteIdentical) {
  const auto inst = weighted(4, {{2, 3, 7}, {0, 1, 2}, {0, 3, 1}}, {0, 4, 0, 1});
  const std::string text = format_instance(inst);
  EXPECT_EQ(text, "{\n  \"n\": 4,\n  \"edges\": [\n    [0, 1, 2],\n    [0, 3, 1],\n    [2, 3, 7]\n  ],\n  \"nu\": [0, 4, 0, 1]\n}\n");
  const auto back = parse_instance(text);
  EXPECT_EQ(back, inst);
  EXPECT_EQ(format_instance(back), text);
}

TEST(InstanceFile, NuIsOptionalAndEmptyGraphsWork) {
  const auto inst = parse_instance(R"({"n": 2, "edges": [[0, 1, 3]]})");
  EXPECT_TRUE(inst.zero_intrinsic());
  EXPECT_EQ(inst.graph().weight(0, 1), 3);
  const auto empty = parse_instance(R"({"n": 0})");
  EXPECT_EQ(empty.node_count(), 0u);
  EXPECT_EQ(format_instance(empty), "{\n  \"n\": 0,\n  \"edges\": [],\n  \"nu\": []\n}\n");
}

TEST(InstanceFile, RejectsMalformedDocuments) {
  for (const char* bad : {
           "not json",
           "[]",
           R"({"edges": []})",
           R"({"n": -1})",
           R"({"n": 2, "edges": [[1, 0, 1]]})",
           R"({"n": 2, "edges": [[0, 2, 1]]})",
           R"({"n": 2, "edges": [[0, 1, 0]]})",
           R"({"n": 2, "edges": [[0, 1]]})",
           R"({"n": 2, "edges": [[0, 1, 1], [0, 1, 2]]})",
           R"({"n": 2, "nu": [1]})",
           R"({"n": 2, "nu": [1, -2]})",
           R"({"n": 2, "nu": [1, 0.5]})",
           R"({"n": 2, "weights": []})",
       })
    EXPECT_THROW(parse_instance(bad), FormatError) << bad;
}

TEST(InstanceFile, RandomRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto inst = gen_weighted(1 + seed % 12, 0.4, 9, 6, seed);
    EXPECT_EQ(parse_instance(format_instance(inst)), inst);
  }
}

TEST(TraceJson, Shape) {
  const auto trace = simulate(path3(), PriceSequence{2, 1});
  const auto j = trace_to_json(trace);
  EXPECT_EQ(j["total_revenue"], 2);
  EXPECT_EQ(j["rounds"].size(), 2u);
  EXPECT_EQ(j["rounds"][0]["buyers"], nlohmann::json::array({1}));
  EXPECT_EQ(j["residual"], nlohmann::json::array({0, 2}));
}
