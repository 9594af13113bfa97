#pragma once

// Seeded generators for every graph family analyzed by the library.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Only its raw 64-bit outputs are used: the std
// distributions are implementation-defined, so uniform integers, uniform
// reals and Bernoulli draws are derived here explicitly. A given
// (parameters, seed) pair yields the same graph on every platform.

#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "algorithms.hpp"
#include "core.hpp"

namespace netprice {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Derives the seed of trial `index` from a master seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SplitInstance {
  PncInstance instance;
  SplitPartition partition;
};

namespace detail {

inline PncInstance unit_instance(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({std::min(u, v), std::max(u, v), 1});
  return PncInstance(WeightedGraph(n, edges));
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace detail

/// G(n, eta): each unordered pair independently with probability eta.
inline PncInstance gen_er(std::size_t n, double eta, std::uint64_t seed) {
  detail::require(n >= 2, "gen_er: n must be at least 2");
  detail::require(eta >= 0 && eta <= 1, "gen_er: eta must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(eta)) pairs.emplace_back(u, v);
  return detail::unit_instance(n, pairs);
}

/// Preferential attachment from a complete seed graph on beta nodes. Each
/// arrival links to beta distinct earlier nodes, each draw proportional to
/// current degree; duplicate draws are discarded and redrawn.
inline PncInstance gen_ba(std::size_t n, std::size_t beta, std::uint64_t seed) {
  detail::require(beta >= 1, "gen_ba: beta must be at least 1");
  detail::require(n > beta, "gen_ba: n must exceed beta");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  // every endpoint occurrence, so a uniform pick is degree-proportional
  std::vector<NodeId> endpoints;
  for (NodeId u = 0; u < beta; ++u)
    for (NodeId v = u + 1; v < beta; ++v) {
      pairs.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  std::vector<NodeId> targets;
  for (NodeId t = static_cast<NodeId>(beta); t < n; ++t) {
    targets.clear();
    while (targets.size() < beta) {
      // a lone seed node has no degree yet
      const NodeId pick = endpoints.empty() ? static_cast<NodeId>(rng.below(t)) : endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), pick) == targets.end()) targets.push_back(pick);
    }
    for (NodeId v : targets) {
      pairs.emplace_back(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return detail::unit_instance(n, pairs);
}

/// Spider: center 0, middles 1..k, leaf k+i hangs off middle i.
inline PncInstance gen_spider(std::size_t k) {
  detail::require(k >= 1, "gen_spider: k must be at least 1");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 1; i <= k; ++i) {
    pairs.emplace_back(0, i);
    pairs.emplace_back(i, static_cast<NodeId>(k + i));
  }
  return detail::unit_instance(2 * k + 1, pairs);
}

inline std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

/// Hub 0 adjacent to everyone, plus i disjoint cliques of size k!/i for each
/// i in 1..k (largest cliques first).
inline PncInstance gen_example1(std::size_t k) {
  detail::require(k >= 2 && k <= 8, "gen_example1: k must lie in 2..8");
  const std::size_t kf = factorial(k);
  const std::size_t n = k * kf + 1;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  NodeId next = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t size = kf / i;
    for (std::size_t c = 0; c < i; ++c) {
      const NodeId first = next;
      for (NodeId u = first; u < first + size; ++u) {
        pairs.emplace_back(0, u);
        for (NodeId v = u + 1; v < first + size; ++v) pairs.emplace_back(u, v);
      }
      next += static_cast<NodeId>(size);
    }
  }
  return detail::unit_instance(n, pairs);
}

/// Clique on nodes 0..c-1 with c = ceil(clique_fraction * n); every
/// (independent, clique) pair linked with probability edge_prob.
inline SplitInstance gen_split(std::size_t n, double clique_fraction, double edge_prob, std::uint64_t seed) {
  detail::require(n >= 2, "gen_split: n must be at least 2");
  detail::require(clique_fraction > 0 && clique_fraction < 1, "gen_split: clique_fraction must lie in (0, 1)");
  detail::require(edge_prob >= 0 && edge_prob <= 1, "gen_split: edge_prob must lie in [0, 1]");
  const auto c = static_cast<std::size_t>(std::ceil(clique_fraction * static_cast<double>(n)));
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < c; ++u)
    for (NodeId v = u + 1; v < c; ++v) pairs.emplace_back(u, v);
  for (NodeId u = static_cast<NodeId>(c); u < n; ++u)
    for (NodeId v = 0; v < c; ++v)
      if (rng.bernoulli(edge_prob)) pairs.emplace_back(v, u);
  SplitInstance out{detail::unit_instance(n, pairs), {}};
  SplitPartition p;
  for (NodeId v = 0; v < n; ++v) (v < c ? p.clique : p.independent).push_back(v);
  out.partition = canonical_split(out.instance.graph(), p);
  return out;
}

/// Split network where every independent node has exactly one core
/// neighbor, chosen uniformly. Core is nodes 0..core-1.
inline SplitInstance gen_core_peripheral(std::size_t n, std::size_t core, std::uint64_t seed) {
  detail::require(core >= 1 && core <= n, "gen_core_peripheral: core size must lie in 1..n");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < core; ++u)
    for (NodeId v = u + 1; v < core; ++v) pairs.emplace_back(u, v);
  for (NodeId u = static_cast<NodeId>(core); u < n; ++u) pairs.emplace_back(static_cast<NodeId>(rng.below(core)), u);
  SplitInstance out{detail::unit_instance(n, pairs), {}};
  SplitPartition p;
  for (NodeId v = 0; v < n; ++v) (v < core ? p.clique : p.independent).push_back(v);
  out.partition = canonical_split(out.instance.graph(), p);
  return out;
}

namespace detail {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt uniform_big(Rng& rng, const BigInt& bound) {
  const auto bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt x = 0;
    for (std::size_t have = 0; have < bits; have += 64) x = (x << 64) | BigInt(rng.next());
    x &= (BigInt(1) << bits) - 1;
    if (x < bound) return x;
  }
}

// forests[r][k]: labeled forests on r vertices with exactly k trees.
inline std::vector<std::vector<BigInt>> forest_counts(std::size_t n, std::size_t trees) {
  std::vector<BigInt> tree_count(n + 1, 0);
  for (std::size_t s = 1; s <= n; ++s) tree_count[s] = s <= 2 ? BigInt(1) : boost::multiprecision::pow(BigInt(s), static_cast<unsigned>(s - 2));
  std::vector<std::vector<BigInt>> f(n + 1, std::vector<BigInt>(trees + 1, 0));
  f[0][0] = 1;
  for (std::size_t r = 1; r <= n; ++r) {
    BigInt binom = 1;  // C(r-1, s-1)
    for (std::size_t s = 1; s <= r; ++s) {
      if (s > 1) binom = binom * (r - s + 1) / (s - 1);
      const BigInt shape = binom * tree_count[s];
      for (std::size_t k = 1; k <= std::min(r - s + 1, trees); ++k) f[r][k] += shape * f[r - s][k - 1];
    }
  }
  return f;
}

// Uniform labeled tree on `vertices` from a random Pruefer sequence.
inline void pruefer_tree(Rng& rng, const std::vector<NodeId>& vertices, std::vector<std::pair<NodeId, NodeId>>& pairs) {
  const std::size_t s = vertices.size();
  if (s < 2) return;
  std::vector<std::size_t> code(s - 2);
  for (auto& c : code) c = rng.below(s);
  std::vector<std::size_t> degree(s, 1);
  for (auto c : code) ++degree[c];
  for (auto c : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    pairs.emplace_back(vertices[leaf], vertices[c]);
    --degree[leaf];
    --degree[c];
  }
  std::size_t a = s, b = s;
  for (std::size_t i = 0; i < s; ++i)
    if (degree[i] == 1) (a == s ? a : b) = i;
  pairs.emplace_back(vertices[a], vertices[b]);
}

}  // namespace detail

/// Uniformly random labeled forest on n nodes with exactly tree_count trees.
///
/// The tree holding the smallest unplaced node gets size s with probability
/// proportional to C(r-1, s-1) s^(s-2) F(r-s, k-1), where F counts labeled
/// forests exactly; its other members are a uniform subset and its shape a
/// uniform Pruefer tree.
inline PncInstance gen_forest(std::size_t n, std::size_t tree_count, std::uint64_t seed) {
  detail::require(n >= 1, "gen_forest: n must be at least 1");
  detail::require(tree_count >= 1 && tree_count <= n, "gen_forest: tree_count must lie in 1..n");
  detail::require(n <= 2000, "gen_forest: n above 2000 is not supported");
  const auto counts = detail::forest_counts(n, tree_count);
  Rng rng(seed);
  std::vector<NodeId> unplaced(n);
  std::iota(unplaced.begin(), unplaced.end(), 0);
  std::vector<std::pair<NodeId, NodeId>> pairs;

  for (std::size_t k = tree_count; k >= 1; --k) {
    const std::size_t r = unplaced.size();
    detail::BigInt pick = detail::uniform_big(rng, counts[r][k]);
    std::size_t size = 0;
    // recompute the weights lazily; they sum to counts[r][k]
    detail::BigInt binom = 1;  // C(r-1, s-1)
    for (std::size_t s = 1; s + (k - 1) <= r; ++s) {
      if (s > 1) binom = binom * (r - s + 1) / (s - 1);
      const detail::BigInt trees = s <= 2 ? detail::BigInt(1) : boost::multiprecision::pow(detail::BigInt(s), static_cast<unsigned>(s - 2));
      const detail::BigInt weight = binom * trees * counts[r - s][k - 1];
      if (pick < weight) {
        size = s;
        break;
      }
      pick -= weight;
    }
    // members: unplaced[0] plus a uniform (size-1)-subset of the rest
    for (std::size_t i = 1; i < size; ++i) std::swap(unplaced[i], unplaced[i + rng.below(r - i)]);
    std::vector<NodeId> members(unplaced.begin(), unplaced.begin() + static_cast<std::ptrdiff_t>(size));
    detail::pruefer_tree(rng, members, pairs);
    unplaced.erase(unplaced.begin(), unplaced.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(unplaced.begin(), unplaced.end());
  }
  return detail::unit_instance(n, pairs);
}

/// Weighted random instance: pairs linked with edge_prob, weights uniform in
/// 1..max_weight, intrinsic values uniform in 0..max_intrinsic.
inline PncInstance gen_weighted(std::size_t n, double edge_prob, Money max_weight, Money max_intrinsic, std::uint64_t seed) {
  detail::require(n >= 1, "gen_weighted: n must be at least 1");
  detail::require(edge_prob >= 0 && edge_prob <= 1, "gen_weighted: edge_prob must lie in [0, 1]");
  detail::require(max_weight >= 1 && max_intrinsic >= 0, "gen_weighted: need max_weight >= 1 and max_intrinsic >= 0");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(edge_prob)) edges.push_back({u, v, 1 + static_cast<Money>(rng.below(static_cast<std::uint64_t>(max_weight)))});
  std::vector<Money> nu(n);
  for (auto& x : nu) x = static_cast<Money>(rng.below(static_cast<std::uint64_t>(max_intrinsic) + 1));
  return PncInstance(WeightedGraph(n, edges), std::move(nu));
}

/// Nodes whose degree is exactly `degree`.
inline std::vector<NodeId> degree_class(const WeightedGraph& graph, std::size_t degree) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < graph.node_count(); ++i)
    if (graph.degree(i) == degree) out.push_back(i);
  return out;
}

inline bool is_independent(const WeightedGraph& graph, std::span<const NodeId> nodes) {
  std::vector<char> in(graph.node_count(), 0);
  for (NodeId v : nodes) in[v] = 1;
  for (NodeId v : nodes)
    for (const Link& l : graph.neighbors(v))
      if (in[l.neighbor]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Family dispatch
// ---------------------------------------------------------------------------

enum class Family { er, ba, spider, example1, split, forest, core_peripheral, weighted };

inline Family parse_family(const std::string& name) {
  if (name == "er") return Family::er;
  if (name == "ba") return Family::ba;
  if (name == "spider") return Family::spider;
  if (name == "example1") return Family::example1;
  if (name == "split") return Family::split;
  if (name == "forest") return Family::forest;
  if (name == "core_peripheral" || name == "core-peripheral") return Family::core_peripheral;
  if (name == "weighted") return Family::weighted;
  throw std::invalid_argument("unknown graph family \"" + name + "\"");
}

struct GenSpec {
  Family family = Family::er;
  std::size_t n = 10;
  double eta = 0.5;             // er
  std::size_t beta = 3;         // ba
  std::size_t k = 3;            // spider, example1
  double clique_fraction = 0.3; // split
  double edge_prob = 0.5;       // split, weighted
  std::size_t trees = 1;        // forest
  std::size_t core = 3;         // core_peripheral
  Money max_weight = 5;         // weighted
  Money max_intrinsic = 3;      // weighted
  std::uint64_t seed = 1;
};

inline PncInstance generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::er: return gen_er(spec.n, spec.eta, spec.seed);
    case Family::ba: return gen_ba(spec.n, spec.beta, spec.seed);
    case Family::spider: return gen_spider(spec.k);
    case Family::example1: return gen_example1(spec.k);
    case Family::split: return gen_split(spec.n, spec.clique_fraction, spec.edge_prob, spec.seed).instance;
    case Family::forest: return gen_forest(spec.n, spec.trees, spec.seed);
    case Family::core_peripheral: return gen_core_peripheral(spec.n, spec.core, spec.seed).instance;
    case Family::weighted: return gen_weighted(spec.n, spec.edge_prob, spec.max_weight, spec.max_intrinsic, spec.seed);
  }
  throw std::logic_error("generate: unhandled family");
}

}  // namespace netprice
