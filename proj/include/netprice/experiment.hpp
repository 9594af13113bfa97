#pragma once

// Seeded batch experiments producing CSV.
//
// Every trial is a pure function of its seed. Trials run on up to `jobs`
// threads and rows are emitted in seed order, so the CSV only depends on the
// spec. Doubles are printed with six decimals; an empty cell means the value
// was not computed (the oracle is skipped above `oracle_limit` nodes).

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "algorithms.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace netprice {

enum class ExperimentKind { forest_ratio, er_ratio, ba_ratio, bound_sweep };

inline ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "forest_ratio") return ExperimentKind::forest_ratio;
  if (name == "er_ratio") return ExperimentKind::er_ratio;
  if (name == "ba_ratio") return ExperimentKind::ba_ratio;
  if (name == "bound_sweep") return ExperimentKind::bound_sweep;
  throw std::invalid_argument("unknown experiment \"" + name + "\"");
}

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::forest_ratio;
  std::size_t trials = 10;
  std::uint64_t master_seed = 1;
  std::vector<std::uint64_t> seeds;  // explicit seeds override master_seed/trials
  std::size_t n = 12;
  double eta = 0.3;     // er_ratio
  double delta = 0.1;   // er_ratio
  std::size_t beta = 3; // ba_ratio
  std::size_t trees = 2;       // forest_ratio
  double edge_prob = 0.3;      // bound_sweep
  std::size_t oracle_limit = 16;
  std::size_t jobs = 1;
};

inline std::vector<std::uint64_t> experiment_seeds(const ExperimentSpec& spec) {
  if (!spec.seeds.empty()) return spec.seeds;
  if (spec.trials < 1) throw std::invalid_argument("experiment: trial count must be at least 1");
  std::vector<std::uint64_t> out(spec.trials);
  for (std::size_t t = 0; t < spec.trials; ++t) out[t] = derive_seed(spec.master_seed, t);
  return out;
}

inline std::string format_fixed(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

namespace detail {

inline std::string join(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) row += ',';
    row += cells[k];
  }
  return row;
}

inline std::string ratio_cell(Money num, Money den) {
  return den == 0 ? std::string() : format_fixed(static_cast<double>(num) / static_cast<double>(den));
}

inline std::optional<Money> maybe_oracle(const PncInstance& inst, std::size_t limit) {
  if (inst.node_count() > limit) return std::nullopt;
  return exact_opt(inst, {10'000'000, std::min<std::size_t>(limit, 64)}).revenue;
}

inline std::string cell(std::optional<Money> v) { return v ? std::to_string(*v) : std::string(); }

}  // namespace detail

inline std::string experiment_header(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::forest_ratio:
      return "seed,n,edges,trees,leaves,forest_single,best_single,greedy,oracle,oracle_over_forest_single";
    case ExperimentKind::er_ratio:
      return "seed,n,edges,price,er_single,best_single,greedy,oracle,edge_ratio";
    case ExperimentKind::ba_ratio:
      return "seed,n,edges,beta,ba_single,best_single,greedy,oracle,min_degree_fraction,gamma_independent,greedy_over_ba";
    case ExperimentKind::bound_sweep:
      return "seed,n,edges,degree_bound,best_single,greedy,oracle,oracle_over_bound,one_plus_ln_n";
  }
  throw std::logic_error("experiment_header: unhandled kind");
}

/// One CSV row (no trailing newline) for a single seed.
inline std::string experiment_row(const ExperimentSpec& spec, std::uint64_t seed) {
  using detail::cell;
  const std::string s = std::to_string(seed);
  switch (spec.kind) {
    case ExperimentKind::forest_ratio: {
      const PncInstance inst = gen_forest(spec.n, spec.trees, seed);
      const auto fs = forest_single_price(inst);
      const auto oracle = detail::maybe_oracle(inst, spec.oracle_limit);
      return detail::join({s, std::to_string(inst.node_count()), std::to_string(inst.graph().edge_count()), std::to_string(spec.trees),
                           std::to_string(forest_stats(inst.graph()).leaves), std::to_string(fs.revenue),
                           std::to_string(best_single_price(inst).revenue), std::to_string(greedy_iterative(inst).revenue), cell(oracle),
                           oracle ? detail::ratio_cell(*oracle, fs.revenue) : std::string()});
    }
    case ExperimentKind::er_ratio: {
      const PncInstance inst = gen_er(spec.n, spec.eta, seed);
      const auto er = er_single_price(inst, spec.eta, spec.delta);
      return detail::join({s, std::to_string(inst.node_count()), std::to_string(inst.graph().edge_count()),
                           std::to_string(er.result.prices[0]), std::to_string(er.result.revenue),
                           std::to_string(best_single_price(inst).revenue), std::to_string(greedy_iterative(inst).revenue),
                           cell(detail::maybe_oracle(inst, spec.oracle_limit)), format_fixed(er.edge_ratio)});
    }
    case ExperimentKind::ba_ratio: {
      const PncInstance inst = gen_ba(spec.n, spec.beta, seed);
      const auto ba = ba_single_price(inst, static_cast<Money>(spec.beta));
      const auto gamma = degree_class(inst.graph(), spec.beta);
      const Money greedy = greedy_iterative(inst).revenue;
      return detail::join({s, std::to_string(inst.node_count()), std::to_string(inst.graph().edge_count()), std::to_string(spec.beta),
                           std::to_string(ba.revenue), std::to_string(best_single_price(inst).revenue), std::to_string(greedy),
                           cell(detail::maybe_oracle(inst, spec.oracle_limit)),
                           format_fixed(static_cast<double>(gamma.size()) / static_cast<double>(inst.node_count())),
                           is_independent(inst.graph(), gamma) ? "1" : "0", detail::ratio_cell(greedy, ba.revenue)});
    }
    case ExperimentKind::bound_sweep: {
      const PncInstance inst = gen_er(spec.n, spec.edge_prob, seed);
      const Money bound = degree_bound(inst);
      const auto oracle = detail::maybe_oracle(inst, spec.oracle_limit);
      return detail::join({s, std::to_string(inst.node_count()), std::to_string(inst.graph().edge_count()), std::to_string(bound),
                           std::to_string(best_single_price(inst).revenue), std::to_string(greedy_iterative(inst).revenue), cell(oracle),
                           oracle ? detail::ratio_cell(*oracle, bound) : std::string(),
                           format_fixed(1.0 + std::log(static_cast<double>(inst.node_count())))});
    }
  }
  throw std::logic_error("experiment_row: unhandled kind");
}

/// Full CSV document: header plus one row per seed, newline-terminated.
inline std::string run_experiment(const ExperimentSpec& spec) {
  const auto seeds = experiment_seeds(spec);
  std::vector<std::string> rows(seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t; (t = next++) < seeds.size();) {
      try {
        rows[t] = experiment_row(spec, seeds[t]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, std::max<std::size_t>(seeds.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::string csv = experiment_header(spec.kind) + '\n';
  for (const auto& r : rows) csv += r + '\n';
  return csv;
}

}  // namespace netprice
