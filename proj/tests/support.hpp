#pragma once

#include <initializer_list>

#include "netprice/netprice.hpp"

namespace testing_support {

using netprice::Money;
using netprice::NodeId;

inline netprice::PncInstance unit(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
  std::vector<netprice::Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1});
  return netprice::PncInstance(netprice::WeightedGraph(n, edges));
}

inline netprice::PncInstance weighted(std::size_t n, std::initializer_list<netprice::Edge> edges, std::vector<Money> nu = {}) {
  std::vector<netprice::Edge> list(edges);
  if (nu.empty()) nu.assign(n, 0);
  return netprice::PncInstance(netprice::WeightedGraph(n, list), std::move(nu));
}

inline netprice::PncInstance path3() { return unit(3, {{0, 1}, {1, 2}}); }

inline netprice::PncInstance complete(std::size_t n) {
  std::vector<netprice::Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
  return netprice::PncInstance(netprice::WeightedGraph(n, edges));
}

inline netprice::PncInstance star(std::size_t leaves) {
  std::vector<netprice::Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v, 1});
  return netprice::PncInstance(netprice::WeightedGraph(leaves + 1, edges));
}

}  // namespace testing_support
