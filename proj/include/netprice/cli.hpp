#pragma once

// Command-line front end.
//
// run_cli takes its streams explicitly so tests can drive it in-process.
// Subcommands pass instances to each other as instance files on stdin/stdout
// ("-" is the default for every -i/-o). Exit codes: 0 ok, 1 domain error
// (bad file, invalid parameters, failed checks), 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

#include <CLI11.hpp>

#include "experiment.hpp"
#include "instance_io.hpp"
#include "reduction.hpp"

namespace netprice::cli {

enum class Format { table, json, csv };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Streams {
 public:
  Streams(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  std::string read(const std::string& path) const {
    if (path == "-") return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  void write(const std::string& path, const std::string& text) const {
    if (path == "-") {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path);
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

// extra key/value diagnostics shown next to a pricing result, in order
using Extras = std::vector<std::pair<std::string, nlohmann::json>>;

namespace detail {

inline std::string scalar(const nlohmann::json& v) {
  if (v.is_number_float()) return format_fixed(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string joined(std::span<const Money> xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? " " : "") + std::to_string(xs[k]);
  return s;
}

inline std::string pad(const std::string& s, std::size_t width) { return std::string(width > s.size() ? width - s.size() : 0, ' ') + s; }

}  // namespace detail

inline std::string render_result(const std::string& strategy, const PricingResult& r, Format format, const Extras& extras = {}) {
  switch (format) {
    case Format::json: {
      nlohmann::json doc{{"strategy", strategy}, {"prices", r.prices.prices()}, {"revenue", r.revenue}, {"trace", trace_to_json(r.trace)}};
      for (const auto& [k, v] : extras) doc[k] = v;
      return doc.dump(2) + '\n';
    }
    case Format::csv: {
      std::string head = "strategy,revenue,rounds,prices", row = strategy + ',' + std::to_string(r.revenue) + ',' +
                                                                  std::to_string(r.trace.rounds.size()) + ',' + detail::joined(r.prices.prices());
      for (const auto& [k, v] : extras) {
        head += ',' + k;
        row += ',' + detail::scalar(v);
      }
      return head + '\n' + row + '\n';
    }
    case Format::table: break;
  }
  std::string out = "strategy: " + strategy + "\nprices: " + detail::joined(r.prices.prices()) + "\nrevenue: " + std::to_string(r.revenue) + '\n';
  for (const auto& [k, v] : extras) out += k + ": " + detail::scalar(v) + '\n';
  out += "round   price  buyers  revenue\n";
  for (std::size_t t = 0; t < r.trace.rounds.size(); ++t) {
    const auto& round = r.trace.rounds[t];
    out += detail::pad(std::to_string(t + 1), 5) + detail::pad(std::to_string(round.price), 8) + detail::pad(std::to_string(round.buyers.size()), 8) +
           detail::pad(std::to_string(round.revenue), 9) + '\n';
  }
  out += "unsold: " + std::to_string(r.trace.residual.size()) + '\n';
  return out;
}

inline std::string render_report(const GadgetReport& report, Format format) {
  if (format == Format::json) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
      checks.push_back({{"gadget", c.gadget},
                        {"condition", c.condition},
                        {"prices", c.prices},
                        {"expected", c.expected},
                        {"observed", c.observed},
                        {"passed", c.passed}});
    return nlohmann::json{{"passed", report.passed()}, {"checks", checks}}.dump(2) + '\n';
  }
  std::string out;
  if (format == Format::csv) {
    out = "gadget,condition,prices,expected,observed,passed\n";
    for (const auto& c : report.checks)
      out += c.gadget + ",\"" + c.condition + "\"," + detail::joined(c.prices) + ',' + std::to_string(c.expected) + ',' + std::to_string(c.observed) +
             ',' + (c.passed ? "1" : "0") + '\n';
    return out;
  }
  for (const auto& c : report.checks) {
    out += std::string(c.passed ? "PASS " : "FAIL ") + c.gadget + ": " + c.condition;
    if (!c.prices.empty()) out += " [" + detail::joined(c.prices) + "]";
    out += " expected " + std::to_string(c.expected) + " observed " + std::to_string(c.observed) + '\n';
  }
  out += "checks: " + std::to_string(report.checks.size()) + ", failed: " + std::to_string(report.failures().size()) + '\n';
  return out;
}

inline std::size_t jobs_from_env() {
  const char* raw = std::getenv("NETPRICE_JOBS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v < 1 || raw[0] == '-') throw UsageError("NETPRICE_JOBS must be a positive integer, got \"" + std::string(raw) + "\"");
  return static_cast<std::size_t>(v);
}

inline std::vector<bool> parse_assignment(const std::string& text, std::size_t variables) {
  std::vector<bool> out;
  for (char c : text) {
    if (c == '1' || c == 'T' || c == 't')
      out.push_back(true);
    else if (c == '0' || c == 'F' || c == 'f')
      out.push_back(false);
    else if (c != ',' && c != ' ')
      throw UsageError(std::string("--assignment: unexpected character '") + c + "'");
  }
  if (out.size() != variables)
    throw UsageError("--assignment: expected " + std::to_string(variables) + " values, got " + std::to_string(out.size()));
  return out;
}

/// Runs one command line; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  const Streams io(in, out);
  CLI::App app{"Iterative posted pricing on social networks with negative externalities", "netprice"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string input = "-", output = "-";
  bool as_json = false, as_csv = false;
  auto add_io = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("-i,--input", input, what + " (\"-\" for stdin)")->capture_default_str();
    sub->add_option("-o,--output", output, "Output path (\"-\" for stdout)")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", as_json, "JSON output");
    sub->add_flag("--csv", as_csv, "CSV output")->excludes(j);
  };
  auto format_or = [&](Format fallback) { return as_json ? Format::json : as_csv ? Format::csv : fallback; };
  auto read_instance_in = [&] { return parse_instance(io.read(input)); };

  // gen
  GenSpec gen;
  std::string family = "er";
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--family", family, "er | ba | spider | example1 | split | forest | core_peripheral | weighted")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Node count")->capture_default_str();
  gen_cmd->add_option("--eta", gen.eta, "Edge probability (er)")->capture_default_str();
  gen_cmd->add_option("--beta", gen.beta, "Links per arrival (ba)")->capture_default_str();
  gen_cmd->add_option("--k", gen.k, "Size parameter (spider, example1)")->capture_default_str();
  gen_cmd->add_option("--clique-fraction", gen.clique_fraction, "Clique share (split)")->capture_default_str();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "Edge probability (split, weighted)")->capture_default_str();
  gen_cmd->add_option("--trees", gen.trees, "Tree count (forest)")->capture_default_str();
  gen_cmd->add_option("--core", gen.core, "Core size (core_peripheral)")->capture_default_str();
  gen_cmd->add_option("--max-weight", gen.max_weight, "Largest edge weight (weighted)")->capture_default_str();
  gen_cmd->add_option("--max-intrinsic", gen.max_intrinsic, "Largest intrinsic value (weighted)")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", output, "Output path (\"-\" for stdout)")->capture_default_str();

  // simulate
  std::vector<Money> prices;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the selling process for a price sequence");
  add_io(sim_cmd, "Instance file");
  sim_cmd->add_option("--prices", prices, "Posted prices in round order")->required()->expected(1, -1);
  bool sim_table = false;
  add_format(sim_cmd);
  sim_cmd->add_flag("--table", sim_table, "Table output instead of JSON");

  // single-instance strategies
  auto* greedy_cmd = app.add_subcommand("greedy", "Greedy iterative pricing (2-approximation)");
  auto* single_cmd = app.add_subcommand("single", "Best single price");
  auto* forest_cmd = app.add_subcommand("forest-single", "Better of prices 1 and 2 on an unweighted forest");
  auto* split_cmd = app.add_subcommand("split-dp", "Exact optimum on an unweighted split network");
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by memoized search");
  auto* er_cmd = app.add_subcommand("er-single", "Single price floor((1-delta)(n-1)eta) for random graphs");
  auto* ba_cmd = app.add_subcommand("ba-single", "Single price beta for preferential-attachment graphs");
  auto* bound_cmd = app.add_subcommand("degree-bound", "max_i i*d_i over sorted degrees");
  for (auto* sub : {greedy_cmd, single_cmd, forest_cmd, split_cmd, oracle_cmd, er_cmd, ba_cmd, bound_cmd}) {
    add_io(sub, "Instance file");
    add_format(sub);
  }
  std::vector<NodeId> clique;
  split_cmd->add_option("--clique", clique, "Clique node ids; recognized from degrees when omitted");
  OracleConfig oracle_cfg;
  oracle_cmd->add_option("--state-budget", oracle_cfg.state_budget, "Maximum memoized states")->capture_default_str();
  oracle_cmd->add_option("--node-limit", oracle_cfg.node_limit, "Refuse larger instances (at most 64)")->capture_default_str();
  double eta = 0.3, delta = 0.1;
  er_cmd->add_option("--eta", eta, "Edge probability the graph was drawn with")->required();
  er_cmd->add_option("--delta", delta, "Safety margin in (0, 1)")->capture_default_str();
  Money beta = 3;
  ba_cmd->add_option("--beta", beta, "Links per arrival the graph was drawn with")->required();

  // reduction
  std::string meta_path, assignment;
  bool relaxed = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build the hardness instance from a DIMACS CNF formula");
  add_io(reduce_cmd, "DIMACS CNF file");
  reduce_cmd->add_option("--meta", meta_path, "Write gadget metadata JSON here");
  reduce_cmd->add_option("--assignment", assignment, "Truth values, e.g. 101 or T,F,T; adds its pricing to the metadata");
  reduce_cmd->add_flag("--relaxed", relaxed, "Skip the occurrence and clause-width conditions");
  auto* verify_cmd = app.add_subcommand("verify-gadgets", "Check the gadget revenue claims on a built instance");
  add_io(verify_cmd, "DIMACS CNF file");
  add_format(verify_cmd);
  verify_cmd->add_flag("--relaxed", relaxed, "Skip the occurrence and clause-width conditions");

  // experiments
  ExperimentSpec exp;
  std::string kind = "forest_ratio";
  std::size_t jobs = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "Seeded batch experiment, CSV output");
  exp_cmd->add_option("--kind", kind, "forest_ratio | er_ratio | ba_ratio | bound_sweep")->capture_default_str();
  exp_cmd->add_option("--trials", exp.trials, "Trial count when seeds are derived")->capture_default_str();
  exp_cmd->add_option("--seed", exp.master_seed, "Master seed")->capture_default_str();
  exp_cmd->add_option("--seeds", exp.seeds, "Explicit per-trial seeds");
  exp_cmd->add_option("--n", exp.n, "Node count")->capture_default_str();
  exp_cmd->add_option("--eta", exp.eta, "Edge probability (er_ratio)")->capture_default_str();
  exp_cmd->add_option("--delta", exp.delta, "Margin (er_ratio)")->capture_default_str();
  exp_cmd->add_option("--beta", exp.beta, "Links per arrival (ba_ratio)")->capture_default_str();
  exp_cmd->add_option("--trees", exp.trees, "Tree count (forest_ratio)")->capture_default_str();
  exp_cmd->add_option("--edge-prob", exp.edge_prob, "Edge probability (bound_sweep)")->capture_default_str();
  exp_cmd->add_option("--oracle-limit", exp.oracle_limit, "Run the exact oracle up to this many nodes")->capture_default_str();
  exp_cmd->add_option("--jobs", jobs, "Worker threads (default: NETPRICE_JOBS or 1)");
  exp_cmd->add_option("-o,--output", output, "Output path (\"-\" for stdout)")->capture_default_str();

  try {
    std::vector<const char*> argv{"netprice"};
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const FormulaCheck check = relaxed ? FormulaCheck::relaxed : FormulaCheck::strict;
  try {
    if (*gen_cmd) {
      gen.family = parse_family(family);
      io.write(output, format_instance(generate(gen)));
    } else if (*sim_cmd) {
      const PncInstance inst = read_instance_in();
      const Format f = sim_table ? Format::table : format_or(Format::json);
      io.write(output, render_result("simulate", evaluate(inst, PriceSequence(prices)), f));
    } else if (*greedy_cmd) {
      io.write(output, render_result("greedy", greedy_iterative(read_instance_in()), format_or(Format::table)));
    } else if (*single_cmd) {
      io.write(output, render_result("single", best_single_price(read_instance_in()), format_or(Format::table)));
    } else if (*forest_cmd) {
      const PncInstance inst = read_instance_in();
      const ForestStats s = forest_stats(inst.graph());
      const auto r = forest_single_price(inst);
      io.write(output, render_result("forest-single", r, format_or(Format::table), {{"nodes", s.nodes}, {"leaves", s.leaves}}));
    } else if (*split_cmd) {
      const PncInstance inst = read_instance_in();
      SplitPartition part;
      if (split_cmd->count("--clique") > 0) {
        std::vector<char> in_clique(inst.node_count(), 0);
        for (NodeId v : clique) {
          if (v >= inst.node_count()) throw std::invalid_argument("--clique: node " + std::to_string(v) + " is not in the graph");
          in_clique[v] = 1;
        }
        part.clique = clique;
        for (NodeId v = 0; v < inst.node_count(); ++v)
          if (!in_clique[v]) part.independent.push_back(v);
      } else {
        auto found = recognize_split(inst.graph());
        if (!found) throw std::invalid_argument("split-dp: graph is not a split network");
        part = *found;
      }
      const auto r = split_dp(inst, part);
      io.write(output, render_result("split-dp", r, format_or(Format::table), {{"clique_size", part.clique.size()}}));
    } else if (*oracle_cmd) {
      const PncInstance inst = read_instance_in();
      ExactSolver solver(inst, oracle_cfg);
      const auto r = solver.solve();
      io.write(output, render_result("oracle", r, format_or(Format::table), {{"states", solver.states_explored()}}));
    } else if (*er_cmd) {
      const auto r = er_single_price(read_instance_in(), eta, delta);
      io.write(output, render_result("er-single", r.result, format_or(Format::table), {{"edge_ratio", r.edge_ratio}}));
    } else if (*ba_cmd) {
      const PncInstance inst = read_instance_in();
      const auto gamma = degree_class(inst.graph(), static_cast<std::size_t>(std::max<Money>(beta, 0)));
      const auto r = ba_single_price(inst, beta);
      io.write(output, render_result("ba-single", r, format_or(Format::table),
                                     {{"min_degree_fraction", static_cast<double>(gamma.size()) / static_cast<double>(inst.node_count())},
                                      {"gamma_independent", is_independent(inst.graph(), gamma)}}));
    } else if (*bound_cmd) {
      const Money b = degree_bound(read_instance_in());
      const Format f = format_or(Format::table);
      io.write(output, f == Format::json  ? nlohmann::json{{"degree_bound", b}}.dump(2) + '\n'
                       : f == Format::csv ? "degree_bound\n" + std::to_string(b) + '\n'
                                          : "degree_bound: " + std::to_string(b) + '\n');
    } else if (*reduce_cmd) {
      const ReductionArtifact art = build_reduction(parse_dimacs(io.read(input), check), check);
      nlohmann::json meta = reduction_metadata(art);
      if (!assignment.empty()) {
        const auto values = parse_assignment(assignment, art.variables.size());
        const PriceSequence p = assignment_pricing(art, values);
        const Money rev = revenue(art.instance, p);
        meta["assignment"] = {{"values", values},
                              {"satisfies", satisfies(art.formula, values)},
                              {"prices", p.prices()},
                              {"revenue", rev},
                              {"meets_threshold", rev >= art.threshold}};
      }
      io.write(output, format_instance(art.instance));
      if (!meta_path.empty()) io.write(meta_path, meta.dump(2) + '\n');
    } else if (*verify_cmd) {
      const ReductionArtifact art = build_reduction(parse_dimacs(io.read(input), check), check);
      const GadgetReport report = verify_gadget_claims(art);
      io.write(output, render_report(report, format_or(Format::table)));
      if (!report.passed()) {
        err << "verify-gadgets: " << report.failures().size() << " check(s) failed\n";
        return 1;
      }
    } else if (*exp_cmd) {
      exp.kind = parse_experiment_kind(kind);
      exp.jobs = jobs > 0 ? jobs : jobs_from_env();
      io.write(output, run_experiment(exp));
    }
  } catch (const UsageError& e) {
    err << "netprice: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "netprice: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace netprice::cli
