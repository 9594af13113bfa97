#pragma once

#include <array>
#include <bit>
#include <unordered_map>

#include "algorithms.hpp"

namespace netprice {

struct OracleConfig {
  std::size_t state_budget = 10'000'000;  // max memo entries
  std::size_t node_limit = 30;
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::size_t states)
      : std::runtime_error("exact_opt: state budget exhausted after " + std::to_string(states) + " states"), states_explored(states) {}
  std::size_t states_explored;
};

/// Optimal iterative pricing by memoized search over reachable residual sets.
///
/// opt(Q) = max(0, max_p p|B(p, Q)| + opt(Q \ B(p, Q))), with p ranging over the
/// positive current total values in Q. Residual sets are 64-bit masks, so at
/// most 64 nodes are supported regardless of node_limit.
class ExactSolver {
 public:
  ExactSolver(const PncInstance& instance, OracleConfig config) : instance_(instance), config_(config) {
    if (config_.state_budget < 1) throw std::invalid_argument("exact_opt: state budget must be at least 1");
    if (config_.node_limit > 64) throw std::invalid_argument("exact_opt: node limit cannot exceed 64");
    const std::size_t n = instance.node_count();
    if (n > config_.node_limit)
      throw std::invalid_argument("exact_opt: " + std::to_string(n) + " nodes exceed the node limit of " +
                                  std::to_string(config_.node_limit));
    neighbors_.resize(n);
    for (NodeId i = 0; i < n; ++i)
      for (const Link& l : instance.graph().neighbors(i)) neighbors_[i].push_back({l.neighbor, l.weight});
  }

  PricingResult solve() {
    const std::size_t n = instance_.node_count();
    const Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    const Money best = search(all);

    std::vector<Money> prices;
    for (Mask q = all; q != 0;) {
      const Money p = memo_.at(q).price;
      if (p == 0) break;
      prices.push_back(p);
      q &= ~buyers(q, p);
    }
    PricingResult result = evaluate(instance_, PriceSequence(std::move(prices)));
    if (result.revenue != best)
      throw std::logic_error("exact_opt: replayed revenue " + std::to_string(result.revenue) + " differs from search value " +
                             std::to_string(best));
    if (!result.prices.strictly_decreasing()) throw std::logic_error("exact_opt: realizing sequence is not strictly decreasing");
    return result;
  }

  std::size_t states_explored() const { return memo_.size(); }

 private:
  using Mask = std::uint64_t;
  struct Entry {
    Money best;
    Money price;  // 0: stop here
  };

  Money value(Mask q, NodeId i) const {
    Money v = instance_.intrinsic(i);
    for (const Link& l : neighbors_[i])
      if (q >> l.neighbor & 1) v += l.weight;
    return v;
  }

  Mask buyers(Mask q, Money price) const {
    Mask b = 0;
    for (Mask rest = q; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<NodeId>(std::countr_zero(rest));
      if (value(q, i) >= price) b |= Mask{1} << i;
    }
    return b;
  }

  Money search(Mask q) {
    if (q == 0) return 0;
    if (auto it = memo_.find(q); it != memo_.end()) return it->second.best;

    std::array<std::pair<Money, NodeId>, 64> values{};
    std::size_t count = 0;
    for (Mask rest = q; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<NodeId>(std::countr_zero(rest));
      values[count++] = {value(q, i), i};
    }
    std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(count), std::greater<>());

    Entry entry{0, 0};
    Mask sold = 0;
    for (std::size_t k = 0; k < count && values[k].first > 0; ++k) {
      sold |= Mask{1} << values[k].second;
      if (k + 1 < count && values[k + 1].first == values[k].first) continue;
      const Money price = values[k].first;
      const Money rev = checked_add(checked_mul(price, static_cast<Money>(k + 1)), search(q & ~sold));
      if (rev > entry.best) entry = {rev, price};
    }
    if (memo_.size() >= config_.state_budget) throw BudgetExhausted(memo_.size());
    memo_.emplace(q, entry);
    return entry.best;
  }

  const PncInstance& instance_;
  OracleConfig config_;
  std::vector<std::vector<Link>> neighbors_;
  std::unordered_map<Mask, Entry> memo_;
};

inline PricingResult exact_opt(const PncInstance& instance, OracleConfig config = {}) { return ExactSolver(instance, config).solve(); }

namespace detail {

inline Money naive_search(const PncInstance& instance, std::vector<char>& remaining) {
  const std::size_t n = instance.node_count();
  std::vector<Money> value(n, 0);
  Money top = 0;
  for (NodeId i = 0; i < n; ++i) {
    if (!remaining[i]) continue;
    value[i] = instance.intrinsic(i);
    for (NodeId j = 0; j < n; ++j)
      if (remaining[j]) value[i] += instance.graph().weight(i, j);
    top = std::max(top, value[i]);
  }
  Money best = 0;
  std::vector<NodeId> bought;
  for (Money p = 1; p <= top; ++p) {
    bought.clear();
    for (NodeId i = 0; i < n; ++i)
      if (remaining[i] && value[i] >= p) bought.push_back(i);
    for (NodeId i : bought) remaining[i] = 0;
    best = std::max(best, p * static_cast<Money>(bought.size()) + naive_search(instance, remaining));
    for (NodeId i : bought) remaining[i] = 1;
  }
  return best;
}

}  // namespace detail

/// Exhaustive optimum over every positive integer price at every round, no
/// memoization. Independent check on exact_opt for n <= 8.
inline Money naive_opt(const PncInstance& instance) {
  if (instance.node_count() > 8) throw std::invalid_argument("naive_opt: supports at most 8 nodes");
  std::vector<char> remaining(instance.node_count(), 1);
  return detail::naive_search(instance, remaining);
}

}  // namespace netprice
