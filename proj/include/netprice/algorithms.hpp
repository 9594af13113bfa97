#pragma once

#include <cmath>
#include <optional>
#include <queue>

#include "core.hpp"
#include "engine.hpp"

namespace netprice {

struct PricingResult {
  PriceSequence prices;
  Money revenue = 0;
  SaleTrace trace;
};

inline PricingResult evaluate(const PncInstance& instance, PriceSequence prices) {
  PricingResult out;
  out.trace = simulate(instance, prices);
  out.revenue = out.trace.total_revenue;
  out.prices = std::move(prices);
  return out;
}

// ---------------------------------------------------------------------------
// Greedy iterative pricing
// ---------------------------------------------------------------------------

/// Repeatedly posts the highest current total value until nobody is left.
///
/// Each round sells exactly the consumers attaining the maximum, so the
/// revenue is at least ν(V) + w(E) and at least half the optimum. When only
/// zero-valued consumers remain the final price is 0. Uses a lazy max-heap,
/// O((n + m) log n) overall.
inline PricingResult greedy_iterative(const PncInstance& instance) {
  const std::size_t n = instance.node_count();
  std::vector<Money> value(n);
  std::vector<char> sold(n, 0);
  std::priority_queue<std::pair<Money, NodeId>> heap;
  for (NodeId i = 0; i < n; ++i) {
    value[i] = instance.initial_value(i);
    heap.emplace(value[i], i);
  }
  auto stale = [&](const std::pair<Money, NodeId>& e) { return sold[e.second] || value[e.second] != e.first; };

  std::vector<Money> prices;
  std::vector<NodeId> buyers;
  while (!heap.empty()) {
    if (stale(heap.top())) {
      heap.pop();
      continue;
    }
    const Money price = heap.top().first;
    buyers.clear();
    while (!heap.empty() && (stale(heap.top()) || heap.top().first == price)) {
      if (!stale(heap.top())) buyers.push_back(heap.top().second);
      heap.pop();
    }
    prices.push_back(price);
    for (NodeId b : buyers) sold[b] = 1;
    for (NodeId b : buyers)
      for (const Link& l : instance.graph().neighbors(b))
        if (!sold[l.neighbor]) {
          value[l.neighbor] -= l.weight;
          heap.emplace(value[l.neighbor], l.neighbor);
        }
  }
  return evaluate(instance, PriceSequence(std::move(prices)));
}

// ---------------------------------------------------------------------------
// Single pricing
// ---------------------------------------------------------------------------

/// Best one-shot price. Only initial total values need to be tried; ties go
/// to the higher price.
inline PricingResult best_single_price(const PncInstance& instance) {
  const std::size_t n = instance.node_count();
  if (n == 0) throw std::invalid_argument("best_single_price: empty instance");
  std::vector<Money> values(n);
  for (NodeId i = 0; i < n; ++i) values[i] = instance.initial_value(i);
  std::sort(values.begin(), values.end(), std::greater<>());

  Money best_price = values.front();
  Money best_revenue = -1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n && values[k + 1] == values[k]) continue;
    const Money rev = checked_mul(values[k], static_cast<Money>(k + 1));
    if (rev > best_revenue) {
      best_revenue = rev;
      best_price = values[k];
    }
  }
  return evaluate(instance, PriceSequence{best_price});
}

struct ForestStats {
  std::size_t nodes = 0;     // non-isolated nodes
  std::size_t leaves = 0;    // degree-1 nodes
  std::size_t isolated = 0;  // degree-0 nodes
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

inline bool is_forest(const WeightedGraph& graph) {
  detail::DisjointSets sets(graph.node_count());
  for (const Edge& e : graph.edges())
    if (!sets.unite(e.u, e.v)) return false;
  return true;
}

inline ForestStats forest_stats(const WeightedGraph& graph) {
  ForestStats s;
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    const auto d = graph.degree(i);
    if (d == 0)
      ++s.isolated;
    else {
      ++s.nodes;
      if (d == 1) ++s.leaves;
    }
  }
  return s;
}

/// Better of the single prices 1 and 2 on an unweighted forest; ties go to 2.
///
/// Revenue is max{|V'|, 2(|V'| - l)} with V' the non-isolated nodes and
/// l the leaf count.
inline PricingResult forest_single_price(const PncInstance& instance) {
  require_unweighted_zero_intrinsic(instance, "forest_single_price");
  if (!is_forest(instance.graph())) throw std::invalid_argument("forest_single_price: graph contains a cycle");
  const ForestStats s = forest_stats(instance.graph());
  const Money at_one = static_cast<Money>(s.nodes);
  const Money at_two = 2 * static_cast<Money>(s.nodes - s.leaves);
  return evaluate(instance, PriceSequence{at_two >= at_one ? Money{2} : Money{1}});
}

// ---------------------------------------------------------------------------
// Split networks
// ---------------------------------------------------------------------------

/// Clique C ordered by nondecreasing degree (ties by id) and independent set I.
struct SplitPartition {
  std::vector<NodeId> clique;
  std::vector<NodeId> independent;

  bool operator==(const SplitPartition&) const = default;
};

/// Checks the partition by definition and returns it in canonical order.
inline SplitPartition canonical_split(const WeightedGraph& graph, const SplitPartition& partition) {
  const std::size_t n = graph.node_count();
  std::vector<char> side(n, 0);  // 1 = clique, 2 = independent
  auto place = [&](NodeId v, char s) {
    if (v >= n) throw std::invalid_argument("split partition: node " + std::to_string(v) + " is not in the graph");
    if (side[v] != 0) throw std::invalid_argument("split partition: node " + std::to_string(v) + " listed twice");
    side[v] = s;
  };
  for (NodeId v : partition.clique) place(v, 1);
  for (NodeId v : partition.independent) place(v, 2);
  for (NodeId v = 0; v < n; ++v)
    if (side[v] == 0) throw std::invalid_argument("split partition: node " + std::to_string(v) + " is in neither side");

  for (NodeId v : partition.clique) {
    std::size_t clique_neighbors = 0;
    for (const Link& l : graph.neighbors(v))
      if (side[l.neighbor] == 1) ++clique_neighbors;
    if (clique_neighbors + 1 != partition.clique.size())
      throw std::invalid_argument("split partition: clique node " + std::to_string(v) + " misses a clique neighbor");
  }
  for (NodeId v : partition.independent)
    for (const Link& l : graph.neighbors(v))
      if (side[l.neighbor] == 2)
        throw std::invalid_argument("split partition: independent nodes " + std::to_string(v) + " and " + std::to_string(l.neighbor) +
                                    " are adjacent");

  SplitPartition out = partition;
  std::sort(out.clique.begin(), out.clique.end(), [&](NodeId a, NodeId b) {
    return std::pair(graph.degree(a), a) < std::pair(graph.degree(b), b);
  });
  std::sort(out.independent.begin(), out.independent.end());
  return out;
}

/// Degree-sequence split recognition; nullopt when the graph is not split.
inline std::optional<SplitPartition> recognize_split(const WeightedGraph& graph) {
  if (!graph.unweighted()) throw std::invalid_argument("recognize_split: requires an unweighted graph");
  const std::size_t n = graph.node_count();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return graph.degree(a) != graph.degree(b) ? graph.degree(a) > graph.degree(b) : a < b;
  });
  std::size_t m = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (graph.degree(order[i - 1]) + 1 >= i) m = i;
  std::size_t head = 0, tail = 0;
  for (std::size_t i = 0; i < n; ++i) (i < m ? head : tail) += graph.degree(order[i]);
  if (head != m * (m == 0 ? 0 : m - 1) + tail) return std::nullopt;

  SplitPartition p;
  p.clique.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  p.independent.assign(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
  try {
    return canonical_split(graph, p);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

/// Exact optimum on an unweighted split network by the clique-prefix
/// recursion, O(n^2).
///
/// With C = (v_1..v_k) by nondecreasing degree, G_i is the subgraph on
/// v_1..v_i and their independent neighbors. opt(G_i) is the better of
/// selling a clique suffix v_{h+1}..v_i at d_{G_i}(v_{h+1}) and recursing on
/// G_h, or selling all of C_i plus the j highest-degree independent nodes at
/// once. A suffix branch only counts when that price sells exactly the
/// suffix: no degree tie with v_h and no independent node reaching the
/// price. The realizing sequence is rebuilt by backtracking and replayed.
inline PricingResult split_dp(const PncInstance& instance, const SplitPartition& partition) {
  require_unweighted_zero_intrinsic(instance, "split_dp");
  const WeightedGraph& graph = instance.graph();
  const SplitPartition split = canonical_split(graph, partition);
  const std::size_t n = graph.node_count();
  const auto& clique = split.clique;
  const std::size_t k = clique.size();

  std::vector<char> in_clique(n, 0);
  for (NodeId v : clique) in_clique[v] = 1;

  struct Choice {
    bool suffix = true;
    std::size_t h = 0;  // suffix branch: recurse on G_h
    Money price = 0;
  };
  std::vector<Money> opt(k + 1, 0);
  std::vector<Choice> choice(k + 1);

  // clique_degree[u]: neighbors of independent node u among v_1..v_i.
  // at_degree[c]: independent nodes of G_i with exactly c such neighbors.
  std::vector<std::size_t> clique_degree(n, 0);
  std::vector<std::size_t> at_degree(k + 2, 0);

  for (std::size_t i = 1; i <= k; ++i) {
    for (const Link& l : graph.neighbors(clique[i - 1])) {
      if (in_clique[l.neighbor]) continue;
      auto& c = clique_degree[l.neighbor];
      if (c > 0) --at_degree[c];
      ++c;
      ++at_degree[c];
    }
    const Money offset = static_cast<Money>(k) - static_cast<Money>(i);
    std::size_t top_independent = 0;
    for (std::size_t c = i; c >= 1 && top_independent == 0; --c)
      if (at_degree[c] > 0) top_independent = c;
    Money best = -1;
    for (std::size_t h = 0; h < i; ++h) {
      const Money price = static_cast<Money>(graph.degree(clique[h])) - offset;
      // the branch needs v_{h+1}..v_i to be exactly the buyers at this price
      if (h > 0 && graph.degree(clique[h - 1]) == graph.degree(clique[h])) continue;
      if (top_independent > 0 && static_cast<Money>(top_independent) >= price) continue;
      const Money value = opt[h] + price * static_cast<Money>(i - h);
      if (value > best) {
        best = value;
        choice[i] = {true, h, price};
      }
    }
    // u^i_1.. in nonincreasing degree; for a degree class c the largest j
    // with d(u_j) = c dominates, and that j counts every node of degree >= c.
    std::size_t at_least = 0;
    for (std::size_t c = i; c >= 1; --c) {
      at_least += at_degree[c];
      if (at_degree[c] == 0) continue;
      const Money value = static_cast<Money>(at_least + i) * static_cast<Money>(c);
      if (value > best) {
        best = value;
        choice[i] = {false, 0, static_cast<Money>(c)};
      }
    }
    opt[i] = best;
  }

  std::vector<Money> prices;
  for (std::size_t i = k; i > 0;) {
    const Choice& c = choice[i];
    if (c.price > 0) prices.push_back(c.price);
    if (!c.suffix) break;
    i = c.h;
  }
  PricingResult result = evaluate(instance, PriceSequence(std::move(prices)));
  if (result.revenue != opt[k])
    throw std::logic_error("split_dp: backtracked sequence earns " + std::to_string(result.revenue) + " but the recursion claims " +
                           std::to_string(opt[k]));
  return result;
}

// ---------------------------------------------------------------------------
// Random-graph single prices and the degree bound
// ---------------------------------------------------------------------------

struct ErPricing {
  PricingResult result;
  /// 2|E| / revenue; an upper bound on the approximation ratio.
  double edge_ratio = 0;
};

/// One price at floor((1 - delta)(n - 1) eta).
inline ErPricing er_single_price(const PncInstance& instance, double eta, double delta) {
  require_unweighted_zero_intrinsic(instance, "er_single_price");
  if (!(eta > 0 && eta <= 1)) throw std::invalid_argument("er_single_price: eta must lie in (0, 1]");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("er_single_price: delta must lie in (0, 1)");
  const std::size_t n = instance.node_count();
  if (n < 2) throw std::invalid_argument("er_single_price: needs at least two nodes");
  const double raw = (1.0 - delta) * static_cast<double>(n - 1) * eta;
  const Money price = static_cast<Money>(std::floor(raw));
  if (price <= 0)
    throw std::invalid_argument("er_single_price: price floor((1-delta)(n-1)eta) = " + std::to_string(price) +
                                " is not positive; parameters too aggressive for n = " + std::to_string(n));
  ErPricing out;
  out.result = evaluate(instance, PriceSequence{price});
  const double edges2 = 2.0 * static_cast<double>(instance.graph().edge_count());
  out.edge_ratio = out.result.revenue > 0 ? edges2 / static_cast<double>(out.result.revenue) : std::numeric_limits<double>::infinity();
  return out;
}

inline std::size_t min_degree(const WeightedGraph& graph) {
  std::size_t d = std::numeric_limits<std::size_t>::max();
  for (NodeId i = 0; i < graph.node_count(); ++i) d = std::min(d, graph.degree(i));
  return graph.node_count() == 0 ? 0 : d;
}

/// Single price beta; with minimum degree >= beta everyone buys at once.
inline PricingResult ba_single_price(const PncInstance& instance, Money beta) {
  require_unweighted_zero_intrinsic(instance, "ba_single_price");
  if (beta < 1) throw std::invalid_argument("ba_single_price: beta must be positive");
  const std::size_t d = min_degree(instance.graph());
  if (static_cast<Money>(d) < beta)
    throw std::invalid_argument("ba_single_price: minimum degree " + std::to_string(d) + " is below beta = " + std::to_string(beta));
  return evaluate(instance, PriceSequence{beta});
}

/// max_i i * d_i over degrees sorted nonincreasingly. The optimum is at most
/// (1 + ln n) times this, and single price d_i achieves it.
inline Money degree_bound(const PncInstance& instance) {
  require_unweighted_zero_intrinsic(instance, "degree_bound");
  const WeightedGraph& g = instance.graph();
  std::vector<Money> degrees(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) degrees[i] = static_cast<Money>(g.degree(i));
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  Money best = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) best = std::max(best, checked_mul(static_cast<Money>(i + 1), degrees[i]));
  return best;
}

}  // namespace netprice
