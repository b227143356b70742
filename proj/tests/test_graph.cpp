#include <gtest/gtest.h>

#include <random>

#include "keygraph/graph.hpp"
#include "oracles.hpp"

using namespace keygraph;

namespace {

CollocationNetwork make(bool directed, std::initializer_list<std::tuple<const char*, const char*, double>> edges) {
  CollocationNetwork net(directed);
  for (const auto& [a, b, w] : edges) {
    auto u = net.add_node(a, 1);
    auto v = net.add_node(b, a == std::string_view(b) ? 0 : 1);
    net.add_edge(u, v, w);
  }
  return net;
}

}  // namespace

TEST(Graph, AccumulatesRepeatedEdges) {
  CollocationNetwork net(true);
  auto a = net.add_node("a");
  auto b = net.add_node("b");
  net.add_edge(a, b);
  net.add_edge(a, b, 2.0);
  EXPECT_EQ(net.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(net.weight(a, b), 3.0);
  EXPECT_DOUBLE_EQ(net.weight(b, a), 0.0);
}

TEST(Graph, UndirectedStoresPairOnce) {
  CollocationNetwork net(false);
  auto a = net.add_node("a");
  auto b = net.add_node("b");
  net.add_edge(b, a, 1.0);
  net.add_edge(a, b, 1.0);
  EXPECT_EQ(net.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(net.weight(b, a), 2.0);
}

TEST(Graph, RejectsNonPositiveWeightsAndEmptyLabels) {
  CollocationNetwork net;
  auto a = net.add_node("a");
  EXPECT_THROW(net.add_edge(a, a, 0.0), Error);
  EXPECT_THROW(net.add_edge(a, a, -1.0), Error);
  EXPECT_THROW(net.add_node(""), Error);
  EXPECT_THROW(net.add_edge(a, 7, 1.0), Error);
}

TEST(ToUndirected, MergesReciprocalEdges) {
  auto u = to_undirected(make(true, {{"a", "b", 2}, {"b", "a", 1}}));
  EXPECT_FALSE(u.directed());
  EXPECT_EQ(u.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(u.weight(0, 1), 3.0);
}

TEST(ToUndirected, SingleEdgeAndLoop) {
  auto single = to_undirected(make(true, {{"a", "b", 2}}));
  EXPECT_DOUBLE_EQ(single.weight(1, 0), 2.0);
  auto loop = to_undirected(make(true, {{"a", "a", 4}}));
  EXPECT_EQ(loop.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(loop.weight(0, 0), 4.0);
}

TEST(ToUndirected, RequiresDirectedInput) {
  EXPECT_THROW(to_undirected(CollocationNetwork(false)), Error);
}

TEST(Simplify, DropsLoopsKeepsNodes) {
  auto s = simplify(make(true, {{"a", "a", 4}, {"a", "b", 1}}));
  EXPECT_TRUE(s.simplified());
  EXPECT_EQ(s.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(s.weight(0, 1), 1.0);

  auto only_loop = simplify(make(true, {{"a", "a", 4}}));
  EXPECT_EQ(only_loop.edge_count(), 0u);
  EXPECT_EQ(only_loop.node_count(), 1u);
}

TEST(Simplify, LoopFreeNetworkUnchanged) {
  auto net = make(true, {{"a", "b", 1}, {"b", "c", 2}});
  auto s = simplify(net);
  EXPECT_EQ(s.edges(), net.edges());
  EXPECT_EQ(s.nodes(), net.nodes());
}

TEST(GraphProperties, SimplifyIdempotentUndirectedPreservesWeightAndStrengthSum) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::GraphSpec spec;
    spec.nodes = 1 + rng() % 9;
    spec.loops = true;
    spec.edge_probability = 0.4;
    auto g = oracle::random_network(rng, spec);

    EXPECT_EQ(simplify(simplify(g)), simplify(g));
    auto u = to_undirected(g);
    EXPECT_DOUBLE_EQ(u.total_weight(), g.total_weight());
    EXPECT_EQ(simplify(u), to_undirected(simplify(g)));

    auto us = simplify(u);
    std::vector<double> strength(us.node_count(), 0.0);
    for (const auto& [k, w] : us.edges()) {
      strength[k.first] += w;
      strength[k.second] += w;
    }
    double sum = 0.0;
    for (double s : strength) sum += s;
    EXPECT_DOUBLE_EQ(sum, 2.0 * us.total_weight());
  }
}

TEST(EdgeList, RoundTripKeepsIsolatedNodesAndFlags) {
  CollocationNetwork net(true);
  auto a = net.add_node("white", 3);
  auto b = net.add_node("house", 2);
  net.add_node("lonely", 1);
  net.add_edge(a, b, 2.0);
  net.add_edge(b, a, 0.5);
  auto s = simplify(net);

  auto text = to_edge_list(s);
  EXPECT_NE(text.find("white\thouse\t2\n"), std::string::npos);
  EXPECT_NE(text.find("lonely\t1\n"), std::string::npos);
  EXPECT_EQ(from_edge_list(text), s);
}

TEST(EdgeList, RejectsMalformedInput) {
  EXPECT_THROW(from_edge_list("a\tb\t1\n"), Error);
  EXPECT_THROW(from_edge_list("# keygraph-network directed=1 simplified=0\na\tb\n"), Error);
  EXPECT_THROW(from_edge_list("# keygraph-network directed=1 simplified=0\na\tb\tx\n"), Error);
  EXPECT_THROW(from_edge_list("# keygraph-network directed=1 simplified=1\na\ta\t1\n"), Error);
}
