#include <gtest/gtest.h>

#include "iradic/ccf.h"
#include "iradic/cutset.h"
#include "iradic/error.h"
#include "support/oracles.h"

namespace iradic {
namespace {

Model TwoOfTwo(double beta) {
  Model m;
  FaultTree ft;
  ft.id = "T";
  ft.top = "TOP";
  ft.gates["TOP"] = {"TOP", GateKind::kAnd, 0, {"A", "B"}, ""};
  ft.events["A"] = {"A", 1e-2, EventKind::kHardware, {}, {}, {}, ""};
  ft.events["B"] = {"B", 1e-2, EventKind::kHardware, {}, {}, {}, ""};
  m.fault_trees["T"] = ft;
  CcfGroup g;
  g.id = "G";
  g.members = {"A", "B"};
  g.total_probability = 1e-2;
  g.levels.push_back({"all", beta, {{"A", "B"}}});
  m.ccf_groups["G"] = g;
  return m;
}

TEST(BetaSplit, Conservation) {
  std::vector<double> betas{0.1, 0.05};
  SplitResult r = beta_split(1e-3, betas);
  EXPECT_DOUBLE_EQ(r.shares[0], 1e-4);
  EXPECT_DOUBLE_EQ(r.shares[1], 5e-5);
  EXPECT_EQ(r.independent + (r.shares[0] + r.shares[1]), 1e-3);

  std::vector<double> none;
  EXPECT_EQ(beta_split(0.3, none).independent, 0.3);

  std::vector<double> too_much{0.6, 0.5};
  EXPECT_THROW(beta_split(0.1, too_much), DomainError);
  std::vector<double> negative{-0.1};
  EXPECT_THROW(beta_split(0.1, negative), DomainError);
  EXPECT_THROW(beta_split(1.1, none), DomainError);
}

TEST(BetaSplit, RandomConservation) {
  testing::Rng rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    double total = u(rng);
    std::vector<double> betas{u(rng) * 0.5, u(rng) * 0.4};
    SplitResult r = beta_split(total, betas);
    EXPECT_NEAR(r.independent + r.shares[0] + r.shares[1], total, 1e-15);
    EXPECT_GE(r.independent, 0);
  }
}

TEST(ExpandCcf, AndOfTwo) {
  Model out = expand_ccf_groups(TwoOfTwo(0.1));
  const FaultTree& ft = out.fault_trees.at("T");
  EXPECT_TRUE(ft.gates.count("A"));
  EXPECT_TRUE(ft.events.count("A-IND"));
  EXPECT_TRUE(ft.events.count("G-CCF-all"));
  EXPECT_DOUBLE_EQ(ft.events.at("A-IND").probability, 9e-3);
  EXPECT_DOUBLE_EQ(ft.events.at("G-CCF-all").probability, 1e-3);

  AnalysisConfig cfg;
  cfg.truncation_probability = 0;
  CutSetList cs = minimal_cut_sets(ft, cfg);
  ASSERT_EQ(cs.cutsets.size(), 2u);
  EXPECT_EQ(cs.cutsets[0].events, std::vector<std::string>{"G-CCF-all"});
  EXPECT_EQ(find_spofs(cs), std::vector<std::string>{"G-CCF-all"});
  // P(A) in the expanded tree is 1 - (1 - ind)(1 - ccf).
  double pa = 1 - (1 - 9e-3) * (1 - 1e-3);
  EXPECT_NEAR(exact_top_probability(ft, 25, "A"), pa, 1e-16);
  EXPECT_NEAR(exact_top_probability(ft), 1e-3 + (1 - 1e-3) * 9e-3 * 9e-3, 1e-16);
  // Without CCF the tree gives 1.0E-4; the shared event dominates.
  EXPECT_GT(exact_top_probability(ft), 1e-4);
}

TEST(ExpandCcf, ZeroBetaKeepsRedundancy) {
  Model out = expand_ccf_groups(TwoOfTwo(0.0));
  const FaultTree& ft = out.fault_trees.at("T");
  EXPECT_FALSE(ft.events.count("G-CCF-all"));
  AnalysisConfig cfg;
  cfg.truncation_probability = 0;
  for (const CutSet& cs : minimal_cut_sets(ft, cfg).cutsets) EXPECT_GE(cs.order(), 2);
  EXPECT_NEAR(exact_top_probability(ft), 1e-4, 1e-18);
}

TEST(ExpandCcf, Errors) {
  Model once = expand_ccf_groups(TwoOfTwo(0.1));
  EXPECT_THROW(expand_ccf_groups(once), DomainError);
  EXPECT_THROW(expand_ccf_groups(TwoOfTwo(0.1), {"NOPE"}), ReferenceError);
  Model missing = TwoOfTwo(0.1);
  missing.ccf_groups.at("G").members.push_back("C");
  EXPECT_THROW(expand_ccf_groups(missing), ReferenceError);
}


}  // namespace
}  // namespace iradic
