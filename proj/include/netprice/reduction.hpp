#pragma once

// Hardness gadget construction: 3-OCC-3SAT formula -> weighted pricing instance.
//
// Node layout (0-based), n variables and m clauses:
//   variable i: x_i = 5i, not-x_i = 5i+1, y_i1 = 5i+2, y_i2 = 5i+3, y_i3 = 5i+4
//   clause j:   c^j = 5n+3j, d^j = 5n+3j+1, e^j = 5n+3j+2
//
// Variable gadget i with scale A = a_i:
//   x-y1 = 3A, x-y2 = 3A, y1-y2 = 5A, y1-y3 = 2A, y2-y3 = 2A, y3-notx = 2A
// giving in-gadget values x: 6A, y1 = y2: 10A, y3: 6A, not-x: 2A.
// Clause gadget j with scale a:
//   c-d = a, c-e = a, d-e = a+1
// giving c: 2a + (unsold literals), d = e: 2a+1.
// Every literal node links with weight 1 to each clause containing it.
//
// Scales are the smallest integers with a > 5mn, a_n > 5a, a_i > 5a_{i+1};
// the revenue threshold is L = sum_i 24a_i + m(6a+3).

#include <array>
#include <optional>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "engine.hpp"

namespace netprice {

struct Literal {
  std::size_t variable = 0;  // 0-based
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

using Clause = std::array<Literal, 3>;

struct CnfFormula {
  std::size_t variable_count = 0;
  std::vector<Clause> clauses;

  bool operator==(const CnfFormula&) const = default;
};

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& message)
      : std::runtime_error("dimacs line " + std::to_string(line) + ": " + message), line(line) {}
  std::size_t line;
};

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Clause occurrence counts per variable: (positive, negative).
inline std::vector<std::pair<std::size_t, std::size_t>> occurrence_counts(const CnfFormula& f) {
  std::vector<std::pair<std::size_t, std::size_t>> counts(f.variable_count, {0, 0});
  for (const Clause& c : f.clauses)
    for (const Literal& l : c) (l.negated ? counts.at(l.variable).second : counts.at(l.variable).first) += 1;
  return counts;
}

/// Throws FormulaError unless every 3-OCC-3SAT side condition holds.
inline void validate_formula(const CnfFormula& f) {
  if (f.variable_count == 0) throw FormulaError("formula: no variables");
  if (f.clauses.size() < 3) throw FormulaError("formula: needs at least 3 clauses, has " + std::to_string(f.clauses.size()));
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const Clause& c = f.clauses[j];
    for (std::size_t a = 0; a < 3; ++a) {
      if (c[a].variable >= f.variable_count)
        throw FormulaError("clause " + std::to_string(j + 1) + ": variable " + std::to_string(c[a].variable + 1) + " out of range");
      for (std::size_t b = a + 1; b < 3; ++b)
        if (c[a].variable == c[b].variable)
          throw FormulaError("clause " + std::to_string(j + 1) + ": variable " + std::to_string(c[a].variable + 1) + " appears twice");
    }
  }
  const auto counts = occurrence_counts(f);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto [pos, neg] = counts[i];
    if (pos + neg > 3)
      throw FormulaError("variable " + std::to_string(i + 1) + ": occurs in " + std::to_string(pos + neg) + " clauses, at most 3 allowed");
    if (pos == 0 || neg == 0)
      throw FormulaError("variable " + std::to_string(i + 1) + ": must occur both positively and negatively");
  }
}

enum class FormulaCheck { strict, relaxed };

/// Parses DIMACS CNF ("p cnf V C" header, 0-terminated clauses, 'c'
/// comments). `strict` also enforces the 3-OCC-3SAT conditions.
inline CnfFormula parse_dimacs(std::string_view text, FormulaCheck check = FormulaCheck::strict) {
  CnfFormula f;
  std::optional<std::size_t> declared_clauses;
  std::vector<Literal> current;
  std::size_t current_line = 0;
  std::vector<std::size_t> clause_lines;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      if (declared_clauses) throw DimacsError(line_no, "duplicate problem line");
      std::string format;
      long long vars = -1, clauses = -1;
      if (!(tokens >> format >> vars >> clauses) || format != "cnf" || vars < 0 || clauses < 0)
        throw DimacsError(line_no, "malformed problem line, expected \"p cnf <variables> <clauses>\"");
      std::string extra;
      if (tokens >> extra) throw DimacsError(line_no, "trailing tokens after problem line");
      f.variable_count = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!declared_clauses) throw DimacsError(line_no, "clause before problem line");
    std::istringstream body(line);
    std::string token;
    while (body >> token) {
      long long lit = 0;
      std::size_t used = 0;
      try {
        lit = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw DimacsError(line_no, "expected an integer literal, got \"" + token + "\"");
      if (lit == 0) {
        if (current.size() != 3)
          throw DimacsError(current_line == 0 ? line_no : current_line,
                            "clause " + std::to_string(f.clauses.size() + 1) + " has " + std::to_string(current.size()) +
                                " literals, expected 3");
        f.clauses.push_back({current[0], current[1], current[2]});
        clause_lines.push_back(current_line);
        current.clear();
        current_line = 0;
        continue;
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (var > f.variable_count)
        throw DimacsError(line_no, "literal " + token + " exceeds declared variable count " + std::to_string(f.variable_count));
      if (current.empty()) current_line = line_no;
      current.push_back({var - 1, lit < 0});
    }
  }
  if (!declared_clauses) throw DimacsError(line_no, "missing problem line");
  if (!current.empty()) throw DimacsError(current_line, "clause not terminated by 0");
  if (f.clauses.size() != *declared_clauses)
    throw DimacsError(line_no, "problem line declares " + std::to_string(*declared_clauses) + " clauses, found " +
                                   std::to_string(f.clauses.size()));
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    const Clause& c = f.clauses[j];
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b)
        if (c[a].variable == c[b].variable)
          throw DimacsError(clause_lines[j], "clause " + std::to_string(j + 1) + " repeats variable " + std::to_string(c[a].variable + 1));
  }
  if (check == FormulaCheck::strict) validate_formula(f);
  return f;
}

inline std::string format_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) out << (l.negated ? "-" : "") << (l.variable + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

inline bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.variable_count) throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) +
                                                                         " variables, formula has " + std::to_string(f.variable_count));
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Literal& l : c) sat = sat || (assignment[l.variable] != l.negated);
    if (!sat) return false;
  }
  return true;
}

struct VariableGadget {
  NodeId positive;  // x_i
  NodeId negative;  // not x_i
  std::array<NodeId, 3> aux;  // y_i1, y_i2, y_i3
  Money scale;  // a_i
  Money positive_occurrences;  // h_i
  Money negative_occurrences;  // h'_i
};

struct ClauseGadget {
  NodeId clause;  // c^j
  NodeId left;    // d^j
  NodeId right;   // e^j
};

struct ReductionArtifact {
  CnfFormula formula;
  PncInstance instance;
  Money clause_scale = 0;  // a
  Money threshold = 0;     // L
  std::vector<VariableGadget> variables;
  std::vector<ClauseGadget> clauses;

  std::vector<Money> variable_scales() const {
    std::vector<Money> out;
    for (const auto& v : variables) out.push_back(v.scale);
    return out;
  }
};

/// Builds the gadget instance. `relaxed` skips the 3-OCC-3SAT side
/// conditions (used for single-gadget experiments); the scale chain is the
/// same either way.
inline ReductionArtifact build_reduction(const CnfFormula& formula, FormulaCheck check = FormulaCheck::strict) {
  if (check == FormulaCheck::strict) validate_formula(formula);
  const std::size_t n = formula.variable_count;
  const std::size_t m = formula.clauses.size();
  if (n == 0) throw FormulaError("formula: no variables");

  ReductionArtifact art;
  art.formula = formula;
  art.clause_scale = checked_add(checked_mul(5, checked_mul(static_cast<Money>(m), static_cast<Money>(n))), 1);
  std::vector<Money> scale(n);
  Money below = art.clause_scale;
  for (std::size_t i = n; i-- > 0;) {
    scale[i] = checked_add(checked_mul(5, below), 1);
    below = scale[i];
  }
  art.threshold = checked_mul(static_cast<Money>(m), checked_add(checked_mul(6, art.clause_scale), 3));
  for (Money s : scale) art.threshold = checked_add(art.threshold, checked_mul(24, s));

  const auto counts = occurrence_counts(formula);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto base = static_cast<NodeId>(5 * i);
    VariableGadget g{base, base + 1, {base + 2, base + 3, base + 4}, scale[i], static_cast<Money>(counts[i].first),
                     static_cast<Money>(counts[i].second)};
    const Money A = scale[i];
    edges.push_back({g.positive, g.aux[0], checked_mul(3, A)});
    edges.push_back({g.positive, g.aux[1], checked_mul(3, A)});
    edges.push_back({g.aux[0], g.aux[1], checked_mul(5, A)});
    edges.push_back({g.aux[0], g.aux[2], checked_mul(2, A)});
    edges.push_back({g.aux[1], g.aux[2], checked_mul(2, A)});
    edges.push_back({g.negative, g.aux[2], checked_mul(2, A)});
    art.variables.push_back(g);
  }
  const Money a = art.clause_scale;
  for (std::size_t j = 0; j < m; ++j) {
    const auto base = static_cast<NodeId>(5 * n + 3 * j);
    ClauseGadget g{base, base + 1, base + 2};
    edges.push_back({g.clause, g.left, a});
    edges.push_back({g.clause, g.right, a});
    edges.push_back({g.left, g.right, a + 1});
    for (const Literal& l : formula.clauses[j]) {
      const VariableGadget& v = art.variables.at(l.variable);
      edges.push_back({l.negated ? v.negative : v.positive, g.clause, 1});
    }
    art.clauses.push_back(g);
  }
  art.instance = PncInstance(WeightedGraph(5 * n + 3 * m, edges));
  return art;
}

/// Prices for a truth assignment, decreasing: {10a_i, 2a_i} for TRUE
/// variables, {6a_i} for FALSE ones, then 2a+1 for all clause gadgets. With a
/// satisfying assignment the revenue is exactly the threshold.
inline PriceSequence assignment_pricing(const ReductionArtifact& art, const std::vector<bool>& assignment) {
  if (assignment.size() != art.variables.size())
    throw std::invalid_argument("assignment_pricing: assignment covers " + std::to_string(assignment.size()) + " variables, expected " +
                                std::to_string(art.variables.size()));
  std::vector<Money> prices;
  for (std::size_t i = 0; i < art.variables.size(); ++i) {
    const Money A = art.variables[i].scale;
    if (assignment[i]) {
      prices.push_back(10 * A);
      prices.push_back(2 * A);
    } else {
      prices.push_back(6 * A);
    }
  }
  std::sort(prices.begin(), prices.end(), std::greater<>());
  prices.push_back(2 * art.clause_scale + 1);
  return PriceSequence(std::move(prices));
}

/// Index of the first round whose price is at most 2a+3, i.e. when clause
/// gadgets can start selling.
inline std::optional<std::size_t> clause_phase_start(const ReductionArtifact& art, const SaleTrace& trace) {
  for (std::size_t t = 0; t < trace.rounds.size(); ++t)
    if (trace.rounds[t].price <= 2 * art.clause_scale + 3) return t;
  return std::nullopt;
}

struct GadgetCheck {
  std::string gadget;         // e.g. "variable 2", "clause 1"
  std::string condition;      // what was checked
  std::vector<Money> prices;  // price set posted, decreasing
  Money expected = 0;
  Money observed = 0;
  bool passed = false;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const GadgetCheck& c) { return c.passed; });
  }
  std::vector<GadgetCheck> failures() const {
    std::vector<GadgetCheck> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
};

namespace detail {

inline std::vector<std::vector<Money>> normal_subsets(const PncInstance& instance, const std::vector<Money>& candidates) {
  std::vector<std::vector<Money>> out;
  const std::size_t k = candidates.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<Money> s;
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1) s.push_back(candidates[b]);
    std::sort(s.begin(), s.end(), std::greater<>());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const PriceSequence p(s);
    if (normalize(instance, p) == p) out.push_back(std::move(s));
  }
  return out;
}

// Best revenue from the remaining consumers when every price must stay below `cap`.
inline Money capped_tail(const PncInstance& instance, const SaleTrace& trace, Money cap) {
  NodeSet q = NodeSet::of(instance.node_count(), trace.residual);
  Money best = 0;
  std::vector<Money> candidates;
  for (NodeId i : q.members()) {
    const Money v = std::min(total_value(instance, i, q), cap - 1);
    if (v > 0) candidates.push_back(v);
  }
  for (Money p : candidates) {
    std::vector<Money> prefix;
    for (const auto& r : trace.rounds) prefix.push_back(r.price);
    prefix.push_back(p);
    const SaleTrace next = simulate(instance, PriceSequence(prefix));
    best = std::max(best, next.rounds.back().revenue + capped_tail(instance, next, p));
  }
  return best;
}

}  // namespace detail

/// Mechanical check of the gadget revenue claims on a built instance.
///
/// Variable gadgets: every normal subset of {10A, 6A+h, 6A, 2A+h', 2A} is
/// posted on the gadget with all other gadgets untouched. {10A, 2A} and {6A} must earn
/// exactly 24A (the first selling not-x but not x, the second x but not
/// not-x), {10A} exactly 20A, every other subset strictly less than 24A.
/// Clause gadgets: for each count of unsold literals and each normal subset
/// of [2a, 2a+3], the gadget's best revenue must be 6a+3 exactly when some
/// literal is unsold and the subset is {2a+1}, and below 6a+3 otherwise.
inline GadgetReport verify_gadget_claims(const ReductionArtifact& art) {
  GadgetReport report;
  const PncInstance& inst = art.instance;
  auto record = [&](GadgetCheck c) { report.checks.push_back(std::move(c)); };

  for (std::size_t i = 0; i < art.variables.size(); ++i) {
    const VariableGadget& g = art.variables[i];
    const Money A = g.scale, h = g.positive_occurrences, hn = g.negative_occurrences;
    const std::string name = "variable " + std::to_string(i + 1);

    const NodeSet all(inst.node_count(), true);
    const std::array<std::pair<NodeId, Money>, 5> initial{
        {{g.positive, 6 * A + h}, {g.negative, 2 * A + hn}, {g.aux[0], 10 * A}, {g.aux[1], 10 * A}, {g.aux[2], 6 * A}}};
    for (auto [node, expected] : initial) {
      const Money observed = total_value(inst, node, all);
      record({name, "initial value of node " + std::to_string(node), {}, expected, observed, observed == expected});
    }

    // Gadget in isolation, read off the built instance. Untouched outside
    // nodes (clause stubs) keep contributing, so their weight folds into the
    // intrinsic value. Local ids: x, not-x, y1, y2, y3.
    const std::array<NodeId, 5> members{g.positive, g.negative, g.aux[0], g.aux[1], g.aux[2]};
    std::vector<Edge> local_edges;
    std::vector<Money> local_nu(5);
    for (NodeId a = 0; a < 5; ++a) {
      local_nu[a] = checked_add(inst.intrinsic(members[a]), inst.graph().weighted_degree(members[a]));
      for (NodeId b = 0; b < 5; ++b) {
        const Money w = inst.graph().weight(members[a], members[b]);
        if (w == 0) continue;
        local_nu[a] -= w;
        if (a < b) local_edges.push_back({a, b, w});
      }
    }
    const PncInstance local(WeightedGraph(5, local_edges), std::move(local_nu));
    const std::vector<Money> candidates{10 * A, 6 * A + h, 6 * A, 2 * A + hn, 2 * A};
    for (const auto& s : detail::normal_subsets(local, candidates)) {
      const SaleTrace trace = simulate(local, PriceSequence(s));
      const NodeSet left = NodeSet::of(5, trace.residual);
      const bool x_bought = !left.contains(0), notx_bought = !left.contains(1);
      const Money observed = trace.total_revenue;
      if (s == std::vector<Money>{10 * A, 2 * A}) {
        record({name, "{10A, 2A} earns 24A", s, 24 * A, observed, observed == 24 * A});
        record({name, "{10A, 2A} sells not-x but not x", s, 1, (notx_bought && !x_bought) ? 1 : 0, notx_bought && !x_bought});
      } else if (s == std::vector<Money>{6 * A}) {
        record({name, "{6A} earns 24A", s, 24 * A, observed, observed == 24 * A});
        record({name, "{6A} sells x but not not-x", s, 1, (x_bought && !notx_bought) ? 1 : 0, x_bought && !notx_bought});
      } else if (s == std::vector<Money>{10 * A}) {
        record({name, "{10A} earns 20A", s, 20 * A, observed, observed == 20 * A});
      } else {
        record({name, "other normal price set earns below 24A", s, 24 * A, observed, observed < 24 * A});
      }
    }
  }

  const Money a = art.clause_scale;
  for (std::size_t j = 0; j < art.clauses.size(); ++j) {
    const std::string name = "clause " + std::to_string(j + 1);
    const PncInstance& full = inst;
    const ClauseGadget& g = art.clauses[j];
    {
      const NodeSet all(full.node_count(), true);
      const std::array<std::pair<NodeId, Money>, 3> initial{{{g.clause, 2 * a + 3}, {g.left, 2 * a + 1}, {g.right, 2 * a + 1}}};
      for (auto [node, expected] : initial) {
        const Money observed = total_value(full, node, all);
        record({name, "initial value of node " + std::to_string(node), {}, expected, observed, observed == expected});
      }
    }
    // Gadget in isolation; unsold literal links fold into c's intrinsic value.
    const std::array<Edge, 3> local_edges{{{0, 1, a}, {0, 2, a}, {1, 2, a + 1}}};
    for (Money unsold = 0; unsold <= 3; ++unsold) {
      const PncInstance local(WeightedGraph(3, local_edges), {unsold, 0, 0});
      for (const auto& s : detail::normal_subsets(local, {2 * a + 3, 2 * a + 2, 2 * a + 1, 2 * a})) {
        const SaleTrace trace = simulate(local, PriceSequence(s));
        const Money observed = trace.total_revenue + detail::capped_tail(local, trace, 2 * a);
        const bool distinguished = unsold > 0 && s == std::vector<Money>{2 * a + 1};
        const std::string cond = std::to_string(unsold) + " unsold literal(s): " +
                                 (distinguished ? std::string("{2a+1} earns 6a+3") : std::string("earns below 6a+3"));
        record({name, cond, s, 6 * a + 3, observed, distinguished ? observed == 6 * a + 3 : observed < 6 * a + 3});
      }
    }
  }
  return report;
}

inline nlohmann::json reduction_metadata(const ReductionArtifact& art) {
  nlohmann::json vars = nlohmann::json::array(), clauses = nlohmann::json::array();
  for (const auto& v : art.variables)
    vars.push_back({{"x", v.positive},
                    {"not_x", v.negative},
                    {"aux", {v.aux[0], v.aux[1], v.aux[2]}},
                    {"scale", v.scale},
                    {"positive_occurrences", v.positive_occurrences},
                    {"negative_occurrences", v.negative_occurrences}});
  for (const auto& c : art.clauses) clauses.push_back({{"c", c.clause}, {"d", c.left}, {"e", c.right}});
  return {{"variables", art.formula.variable_count},
          {"clauses", art.formula.clauses.size()},
          {"clause_scale", art.clause_scale},
          {"variable_scales", art.variable_scales()},
          {"threshold", art.threshold},
          {"variable_gadgets", vars},
          {"clause_gadgets", clauses}};
}

}  // namespace netprice
