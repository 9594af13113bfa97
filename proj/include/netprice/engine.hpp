#pragma once

#include "core.hpp"

namespace netprice {

namespace detail {

// Incremental state of the selling process. Values are kept current by
// decrementing a consumer's value whenever a neighbor buys, so a round costs
// O(|Q|) plus the degrees of that round's buyers.
class SaleProcess {
 public:
  explicit SaleProcess(const PncInstance& instance)
      : instance_(instance), value_(instance.node_count()), sold_(instance.node_count(), 0), remaining_(instance.node_count()) {
    for (NodeId i = 0; i < instance.node_count(); ++i) {
      value_[i] = instance.initial_value(i);
      remaining_[i] = i;
    }
  }

  Money value(NodeId i) const { return value_[i]; }
  const std::vector<NodeId>& remaining() const { return remaining_; }

  /// Consumers whose current value is at least `price`; simultaneous moves,
  /// so every value is read before anyone is removed.
  std::vector<NodeId> buyers_at(Money price) const {
    std::vector<NodeId> out;
    for (NodeId i : remaining_)
      if (value_[i] >= price) out.push_back(i);
    return out;
  }

  void remove(const std::vector<NodeId>& buyers) {
    if (buyers.empty()) return;
    for (NodeId b : buyers) sold_[b] = 1;
    for (NodeId b : buyers)
      for (const Link& l : instance_.graph().neighbors(b))
        if (!sold_[l.neighbor]) value_[l.neighbor] -= l.weight;
    std::erase_if(remaining_, [&](NodeId i) { return sold_[i] != 0; });
  }

 private:
  const PncInstance& instance_;
  std::vector<Money> value_;
  std::vector<char> sold_;
  std::vector<NodeId> remaining_;
};

}  // namespace detail

/// Runs the posted prices in order against myopic consumers.
///
/// In round t every consumer i still in Q_t buys iff ν(i) + w_i(Q_t) >= p_t,
/// all decisions taken against Q_t at the start of the round. Rounds after
/// Q is exhausted are recorded with no buyers. A price of 0 sells to
/// everyone left.
inline SaleTrace simulate(const PncInstance& instance, const PriceSequence& prices) {
  detail::SaleProcess process(instance);
  SaleTrace trace;
  trace.rounds.reserve(prices.size());
  for (Money p : prices) {
    SaleTrace::Round round;
    round.price = p;
    round.buyers = process.buyers_at(p);
    round.revenue = checked_mul(p, static_cast<Money>(round.buyers.size()));
    trace.total_revenue = checked_add(trace.total_revenue, round.revenue);
    process.remove(round.buyers);
    trace.rounds.push_back(std::move(round));
  }
  trace.residual = process.remaining();
  return trace;
}

inline Money revenue(const PncInstance& instance, const PriceSequence& prices) { return simulate(instance, prices).total_revenue; }

/// Drops every price at which nobody buys. The result sells the same
/// buyer sets in the same order and is strictly decreasing.
inline PriceSequence make_irredundant(const PncInstance& instance, const PriceSequence& prices) {
  const SaleTrace trace = simulate(instance, prices);
  std::vector<Money> kept;
  for (const auto& r : trace.rounds)
    if (!r.buyers.empty()) kept.push_back(r.price);
  return PriceSequence(std::move(kept));
}

/// Irredundant form with each price raised to the lowest current value
/// among that round's buyers. Buyer sets are unchanged; revenue can only grow.
inline PriceSequence normalize(const PncInstance& instance, const PriceSequence& prices) {
  const PriceSequence irredundant = make_irredundant(instance, prices);
  detail::SaleProcess process(instance);
  std::vector<Money> raised;
  raised.reserve(irredundant.size());
  for (Money p : irredundant) {
    const auto buyers = process.buyers_at(p);
    Money lowest = std::numeric_limits<Money>::max();
    for (NodeId b : buyers) lowest = std::min(lowest, process.value(b));
    raised.push_back(lowest);
    process.remove(buyers);
  }
  return PriceSequence(std::move(raised));
}

}  // namespace netprice
