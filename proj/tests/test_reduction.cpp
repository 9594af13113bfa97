#include <gtest/gtest.h>

#include "support.hpp"

using namespace netprice;
using namespace testing_support;

namespace {

const char* kSample = "p cnf 3 3\n1 2 3 0\n-1 -2 3 0\n1 -2 -3 0\n";

}  // namespace

TEST(Dimacs, ParsesSampleAndOccurrences) {
  const auto f = parse_dimacs(kSample);
  EXPECT_EQ(f.variable_count, 3u);
  ASSERT_EQ(f.clauses.size(), 3u);
  EXPECT_EQ(f.clauses[1][0].variable, 0u);
  EXPECT_TRUE(f.clauses[1][0].negated);
  const auto occ = occurrence_counts(f);
  EXPECT_EQ(occ, (std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {1, 2}, {2, 1}}));
  EXPECT_EQ(parse_dimacs(format_dimacs(f)), f);
}

TEST(Dimacs, CommentsAndLineBreaksInsideClauses) {
  const auto f = parse_dimacs("c hello\np cnf 3 3\n1 2\n3 0 -1 -2 3 0\nc mid\n1 -2 -3 0\n");
  EXPECT_EQ(f, parse_dimacs(kSample));
}

TEST(Dimacs, Errors) {
  EXPECT_THROW(parse_dimacs("p cnf 3 3\n1 1 2 0\n-1 -2 3 0\n1 -2 -3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 3 4\n1 2 3 0\n-1 -2 3 0\n1 -2 -3 0\n1 2 -3 0\n"), FormulaError);
  EXPECT_THROW(parse_dimacs("1 2 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 2 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 2 3\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 x 3 0\n"), DimacsError);
  EXPECT_THROW(parse_dimacs("p sat 3 1\n"), DimacsError);
  EXPECT_THROW(parse_dimacs(""), DimacsError);
  // all-positive variable
  EXPECT_THROW(parse_dimacs("p cnf 3 3\n1 2 3 0\n1 -2 -3 0\n1 2 -3 0\n"), FormulaError);
  // fewer than three clauses
  EXPECT_THROW(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"), FormulaError);
  try {
    parse_dimacs("p cnf 3 3\n1 2 3 0\n-1 -2 3 0\n1 1 -3 0\n");
    FAIL();
  } catch (const DimacsError& e) {
    EXPECT_EQ(e.line, 4u);
  }
}

TEST(Dimacs, RelaxedSkipsOccurrenceRules) {
  const auto f = parse_dimacs("p cnf 3 1\n1 2 3 0\n", FormulaCheck::relaxed);
  EXPECT_EQ(f.clauses.size(), 1u);
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 2 3 0\n"), FormulaError);
}

TEST(Reduction, ParametersForSample) {
  const auto art = build_reduction(parse_dimacs(kSample));
  EXPECT_EQ(art.clause_scale, 46);
  EXPECT_EQ(art.variable_scales(), (std::vector<Money>{5781, 1156, 231}));
  EXPECT_EQ(art.instance.node_count(), 24u);
  EXPECT_EQ(art.instance.graph().edge_count(), 6u * 3 + 3u * 3 + 3u * 3);
  // recompute L independently from the scales
  Money l = 0;
  for (Money s : art.variable_scales()) l += 24 * s;
  l += 3 * (6 * art.clause_scale + 3);
  EXPECT_EQ(art.threshold, l);
  EXPECT_EQ(art.threshold, 172869);
}

TEST(Reduction, ScaleChainInequalities) {
  const auto art = build_reduction(parse_dimacs(kSample));
  const Money m = 3, n = 3;
  EXPECT_GT(art.clause_scale, 5 * m * n);
  EXPECT_GT(art.variables.back().scale, 5 * art.clause_scale);
  for (std::size_t i = 0; i + 1 < art.variables.size(); ++i) EXPECT_GT(art.variables[i].scale, 5 * art.variables[i + 1].scale);
}

TEST(Reduction, InitialValues) {
  const auto art = build_reduction(parse_dimacs(kSample));
  const auto& inst = art.instance;
  for (const auto& g : art.variables) {
    EXPECT_EQ(inst.initial_value(g.positive), 6 * g.scale + g.positive_occurrences);
    EXPECT_EQ(inst.initial_value(g.negative), 2 * g.scale + g.negative_occurrences);
    EXPECT_EQ(inst.initial_value(g.aux[0]), 10 * g.scale);
    EXPECT_EQ(inst.initial_value(g.aux[1]), 10 * g.scale);
    EXPECT_EQ(inst.initial_value(g.aux[2]), 6 * g.scale);
  }
  for (const auto& c : art.clauses) {
    EXPECT_EQ(inst.initial_value(c.clause), 2 * art.clause_scale + 3);
    EXPECT_EQ(inst.initial_value(c.left), 2 * art.clause_scale + 1);
    EXPECT_EQ(inst.initial_value(c.right), 2 * art.clause_scale + 1);
  }
}

TEST(Reduction, SatisfyingAssignmentReachesThreshold) {
  const auto art = build_reduction(parse_dimacs(kSample));
  const std::vector<bool> all_true{true, true, true};
  ASSERT_TRUE(satisfies(art.formula, all_true));
  const auto p = assignment_pricing(art, all_true);
  EXPECT_TRUE(p.strictly_decreasing());
  EXPECT_EQ(revenue(art.instance, p), art.threshold);
  const auto trace = simulate(art.instance, p);
  const auto xi = clause_phase_start(art, trace);
  ASSERT_TRUE(xi.has_value());
  EXPECT_EQ(*xi, p.size() - 1);
}

TEST(Reduction, EverySatisfyingAssignmentReachesThreshold) {
  const auto art = build_reduction(parse_dimacs(kSample));
  for (int mask = 0; mask < 8; ++mask) {
    const std::vector<bool> a{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
    const Money rev = revenue(art.instance, assignment_pricing(art, a));
    if (satisfies(art.formula, a))
      EXPECT_EQ(rev, art.threshold) << mask;
    else
      EXPECT_LT(rev, art.threshold) << mask;
  }
}

TEST(Reduction, OracleReachesThreshold) {
  const auto art = build_reduction(parse_dimacs(kSample));
  EXPECT_EQ(exact_opt(art.instance, {10'000'000, 30}).revenue, art.threshold);
}

TEST(Reduction, SingleVariableGadget) {
  CnfFormula f;
  f.variable_count = 1;
  const auto art = build_reduction(f, FormulaCheck::relaxed);
  const auto& g = art.variables[0];
  EXPECT_EQ(art.instance.node_count(), 5u);
  const auto t = simulate(art.instance, PriceSequence{10 * g.scale, 2 * g.scale});
  EXPECT_EQ(t.buyer_partition(), (std::vector<std::vector<NodeId>>{{g.aux[0], g.aux[1]}, {g.negative, g.aux[2]}}));
  EXPECT_EQ(t.total_revenue, 24 * g.scale);
  EXPECT_EQ(t.residual, (std::vector<NodeId>{g.positive}));
  EXPECT_THROW(build_reduction(f), FormulaError);
}

TEST(Reduction, AssignmentSizeMismatch) {
  const auto art = build_reduction(parse_dimacs(kSample));
  EXPECT_THROW(assignment_pricing(art, {true}), std::invalid_argument);
  EXPECT_THROW(satisfies(art.formula, {true}), std::invalid_argument);
}

TEST(GadgetClaims, SamplePassesEveryCheck) {
  const auto art = build_reduction(parse_dimacs(kSample));
  const auto report = verify_gadget_claims(art);
  EXPECT_TRUE(report.passed());
  for (const auto& c : report.failures()) ADD_FAILURE() << c.gadget << ": " << c.condition;
  // the three distinguished sets appear for each variable
  int distinguished = 0;
  for (const auto& c : report.checks)
    if (c.condition.find("earns 24A") != std::string::npos || c.condition.find("earns 20A") != std::string::npos) ++distinguished;
  EXPECT_EQ(distinguished, 9);
}

TEST(GadgetClaims, DetectsBrokenWiring) {
  auto art = build_reduction(parse_dimacs(kSample));
  auto edges = art.instance.graph().edges();
  for (auto& e : edges)
    if (e.u == art.variables[0].aux[0] && e.v == art.variables[0].aux[1]) e.weight += 1;
  art.instance = PncInstance(WeightedGraph(art.instance.node_count(), edges));
  const auto report = verify_gadget_claims(art);
  EXPECT_FALSE(report.passed());
  for (const auto& c : report.failures()) EXPECT_EQ(c.gadget, "variable 1");
}

TEST(GadgetClaims, MetadataShape) {
  const auto art = build_reduction(parse_dimacs(kSample));
  const auto meta = reduction_metadata(art);
  EXPECT_EQ(meta["threshold"], 172869);
  EXPECT_EQ(meta["clause_scale"], 46);
  EXPECT_EQ(meta["variable_gadgets"].size(), 3u);
  EXPECT_EQ(meta["clause_gadgets"][0]["c"], 15);
}
