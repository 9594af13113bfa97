#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netprice {

using NodeId = std::uint32_t;
// Link weights, intrinsic values, prices and revenues all live in one
// nonnegative integer currency domain.
using Money = std::int64_t;

inline Money checked_add(Money a, Money b) {
  Money out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("netprice: addition overflows int64");
  return out;
}

inline Money checked_mul(Money a, Money b) {
  Money out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("netprice: multiplication overflows int64");
  return out;
}

struct Link {
  NodeId neighbor;
  Money weight;
};

struct Edge {
  NodeId u;
  NodeId v;
  Money weight;

  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph with positive integer link weights.
///
/// Absent pairs carry implicit weight 0. Each link is stored once per
/// endpoint and adjacency lists are sorted by neighbor id, so two graphs
/// built from the same edge set compare equal.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(std::size_t node_count, std::span<const Edge> edges) : adjacency_(node_count), weighted_degree_(node_count, 0) {
    if (node_count > std::numeric_limits<NodeId>::max()) throw std::invalid_argument("graph: too many nodes");
    for (const Edge& e : edges) {
      if (e.u >= node_count || e.v >= node_count)
        throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") references a node outside 0.." +
                                    std::to_string(node_count == 0 ? 0 : node_count - 1));
      if (e.u == e.v) throw std::invalid_argument("graph: self-loop on node " + std::to_string(e.u));
      if (e.weight <= 0)
        throw std::invalid_argument("graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") has non-positive weight");
      adjacency_[e.u].push_back({e.v, e.weight});
      adjacency_[e.v].push_back({e.u, e.weight});
      weighted_degree_[e.u] = checked_add(weighted_degree_[e.u], e.weight);
      weighted_degree_[e.v] = checked_add(weighted_degree_[e.v], e.weight);
      total_weight_ = checked_add(total_weight_, e.weight);
      if (e.weight != 1) unweighted_ = false;
    }
    for (NodeId i = 0; i < node_count; ++i) {
      auto& adj = adjacency_[i];
      std::sort(adj.begin(), adj.end(), [](const Link& a, const Link& b) { return a.neighbor < b.neighbor; });
      for (std::size_t k = 1; k < adj.size(); ++k)
        if (adj[k].neighbor == adj[k - 1].neighbor)
          throw std::invalid_argument("graph: duplicate link between " + std::to_string(i) + " and " + std::to_string(adj[k].neighbor));
    }
    edge_count_ = edges.size();
  }

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Link> neighbors(NodeId i) const { return adjacency_.at(i); }
  std::size_t degree(NodeId i) const { return adjacency_.at(i).size(); }
  /// Sum of link weights at i over the whole graph.
  Money weighted_degree(NodeId i) const { return weighted_degree_.at(i); }
  /// w(E).
  Money total_weight() const { return total_weight_; }
  bool unweighted() const { return unweighted_; }

  Money weight(NodeId u, NodeId v) const {
    const auto& adj = adjacency_.at(u);
    auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Link& l, NodeId id) { return l.neighbor < id; });
    return (it != adj.end() && it->neighbor == v) ? it->weight : 0;
  }

  /// Edge list with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count(); ++u)
      for (const Link& l : adjacency_[u])
        if (u < l.neighbor) out.push_back({u, l.neighbor, l.weight});
    return out;
  }

  bool operator==(const WeightedGraph& other) const { return edges() == other.edges() && node_count() == other.node_count(); }

 private:
  std::vector<std::vector<Link>> adjacency_;
  std::vector<Money> weighted_degree_;
  std::size_t edge_count_ = 0;
  Money total_weight_ = 0;
  bool unweighted_ = true;
};

/// A social network together with each consumer's intrinsic value.
class PncInstance {
 public:
  PncInstance() = default;

  explicit PncInstance(WeightedGraph graph) : graph_(std::move(graph)), intrinsic_(graph_.node_count(), 0) {}

  PncInstance(WeightedGraph graph, std::vector<Money> intrinsic) : graph_(std::move(graph)), intrinsic_(std::move(intrinsic)) {
    if (intrinsic_.size() != graph_.node_count())
      throw std::invalid_argument("instance: expected " + std::to_string(graph_.node_count()) + " intrinsic values, got " +
                                  std::to_string(intrinsic_.size()));
    for (std::size_t i = 0; i < intrinsic_.size(); ++i)
      if (intrinsic_[i] < 0) throw std::invalid_argument("instance: negative intrinsic value at node " + std::to_string(i));
    intrinsic_sum_ = 0;
    for (Money v : intrinsic_) intrinsic_sum_ = checked_add(intrinsic_sum_, v);
    // total values must stay representable
    for (NodeId i = 0; i < intrinsic_.size(); ++i) (void)checked_add(intrinsic_[i], graph_.weighted_degree(i));
  }

  const WeightedGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  Money intrinsic(NodeId i) const { return intrinsic_.at(i); }
  std::span<const Money> intrinsic_values() const { return intrinsic_; }
  /// ν(V).
  Money intrinsic_sum() const { return intrinsic_sum_; }
  bool zero_intrinsic() const { return intrinsic_sum_ == 0; }
  /// ν(i) + w_i(V): the value before anyone has bought.
  Money initial_value(NodeId i) const { return intrinsic_.at(i) + graph_.weighted_degree(i); }

  /// ν(V) + 2w(E), the revenue no pricing can exceed.
  Money revenue_ceiling() const { return checked_add(intrinsic_sum_, checked_mul(2, graph_.total_weight())); }

  bool operator==(const PncInstance&) const = default;

 private:
  WeightedGraph graph_;
  std::vector<Money> intrinsic_;
  Money intrinsic_sum_ = 0;
};

/// Membership bitmap over 0..n-1.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe, bool full = false) : bits_(universe, full ? 1 : 0), count_(full ? universe : 0) {}

  static NodeSet of(std::size_t universe, std::span<const NodeId> members) {
    NodeSet s(universe);
    for (NodeId i : members) s.insert(i);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(NodeId i) const { return i < bits_.size() && bits_[i] != 0; }

  void insert(NodeId i) {
    if (i >= bits_.size()) throw std::out_of_range("NodeSet: node " + std::to_string(i) + " outside universe");
    if (!bits_[i]) {
      bits_[i] = 1;
      ++count_;
    }
  }
  void erase(NodeId i) {
    if (i < bits_.size() && bits_[i]) {
      bits_[i] = 0;
      --count_;
    }
  }

  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    out.reserve(count_);
    for (NodeId i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<char> bits_;
  std::size_t count_ = 0;
};

/// The seller's strategy: prices posted in order.
class PriceSequence {
 public:
  PriceSequence() = default;
  PriceSequence(std::initializer_list<Money> prices) : PriceSequence(std::vector<Money>(prices)) {}
  explicit PriceSequence(std::vector<Money> prices) : prices_(std::move(prices)) {
    for (Money p : prices_)
      if (p < 0) throw std::invalid_argument("price sequence: negative price " + std::to_string(p));
  }

  std::span<const Money> prices() const { return prices_; }
  std::size_t size() const { return prices_.size(); }
  bool empty() const { return prices_.empty(); }
  Money operator[](std::size_t t) const { return prices_.at(t); }
  auto begin() const { return prices_.begin(); }
  auto end() const { return prices_.end(); }

  bool strictly_decreasing() const {
    return std::adjacent_find(prices_.begin(), prices_.end(), [](Money a, Money b) { return a <= b; }) == prices_.end();
  }

  bool operator==(const PriceSequence&) const = default;

 private:
  std::vector<Money> prices_;
};

/// Round-by-round outcome of a selling process.
struct SaleTrace {
  struct Round {
    Money price = 0;
    std::vector<NodeId> buyers;  // ascending ids
    Money revenue = 0;

    bool operator==(const Round&) const = default;
  };

  std::vector<Round> rounds;
  std::vector<NodeId> residual;  // consumers who never bought
  Money total_revenue = 0;

  std::vector<std::vector<NodeId>> buyer_partition() const {
    std::vector<std::vector<NodeId>> out;
    out.reserve(rounds.size());
    for (const auto& r : rounds) out.push_back(r.buyers);
    return out;
  }

  bool operator==(const SaleTrace&) const = default;
};

/// ν(node) + w_node(remaining).
inline Money total_value(const PncInstance& instance, NodeId node, const NodeSet& remaining) {
  if (node >= instance.node_count()) throw std::invalid_argument("total_value: node " + std::to_string(node) + " is not in the graph");
  if (remaining.universe() != instance.node_count())
    throw std::invalid_argument("total_value: remaining set has universe " + std::to_string(remaining.universe()) + ", expected " +
                                std::to_string(instance.node_count()));
  if (!remaining.contains(node)) throw std::invalid_argument("total_value: node " + std::to_string(node) + " is not in the remaining set");
  Money value = instance.intrinsic(node);
  for (const Link& l : instance.graph().neighbors(node))
    if (remaining.contains(l.neighbor)) value += l.weight;
  return value;
}

inline void require_unweighted_zero_intrinsic(const PncInstance& instance, const char* who) {
  if (!instance.graph().unweighted()) throw std::invalid_argument(std::string(who) + ": requires an unweighted graph");
  if (!instance.zero_intrinsic()) throw std::invalid_argument(std::string(who) + ": requires all intrinsic values to be zero");
}

}  // namespace netprice
