#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "iradic/bbn.h"
#include "iradic/error.h"
#include "iradic/probability_format.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace iradic {
namespace {

Bbn OrOfTwo() {
  Bbn b;
  b.id = "B";
  b.nodes["R1"] = {"R1", {}, {0.1}};
  b.nodes["R2"] = {"R2", {}, {0.1}};
  b.nodes["C"] = {"C", {"R1", "R2"}, {0, 1, 1, 1}};
  return b;
}

TEST(Bbn, Trivial) {
  Bbn root;
  root.id = "B";
  root.nodes["R"] = {"R", {}, {0.01}};
  EXPECT_DOUBLE_EQ(infer_marginal(root, "R"), 0.01);
  EXPECT_NEAR(infer_marginal(OrOfTwo(), "C"), 0.19, 1e-15);
}

TEST(Bbn, ParentOrderMatters) {
  // Row index reads the first parent as the high bit.
  Bbn b;
  b.id = "B";
  b.nodes["X"] = {"X", {}, {1.0}};
  b.nodes["Y"] = {"Y", {}, {0.0}};
  b.nodes["C"] = {"C", {"X", "Y"}, {0.0, 0.25, 0.5, 0.75}};
  EXPECT_DOUBLE_EQ(infer_marginal(b, "C"), 0.5);
}

TEST(Bbn, Evidence) {
  Bbn b = OrOfTwo();
  EXPECT_DOUBLE_EQ(infer_marginal(b, "C", {{"R1", true}}), 1.0);
  EXPECT_NEAR(infer_marginal(b, "R1", {{"C", true}}), 0.1 / 0.19, 1e-15);
  EXPECT_DOUBLE_EQ(infer_marginal(b, "R1", {{"R1", false}}), 0.0);
  b.nodes["R1"].cpt = {0.0};
  b.nodes["R2"].cpt = {0.0};
  EXPECT_THROW(infer_marginal(b, "R1", {{"C", true}}), DomainError);
  EXPECT_THROW(infer_marginal(b, "NOPE"), ReferenceError);
  EXPECT_THROW(infer_marginal(b, "C", {{"NOPE", true}}), ReferenceError);
}

TEST(Bbn, InvalidNetwork) {
  Bbn b = OrOfTwo();
  b.nodes["C"].cpt.pop_back();
  EXPECT_THROW(infer_marginal(b, "C"), DomainError);
}

TEST(Bahamas, Identity) {
  Bbn b = OrOfTwo();
  BahamasResult r = bahamas_estimate(b, "C", 1.0, {});
  EXPECT_EQ(r.individual, r.generic);
  EXPECT_FALSE(r.warning);
}

TEST(Bahamas, NoErrorSources) {
  Bbn b = OrOfTwo();
  b.nodes["R1"].cpt = {0.0};
  b.nodes["R2"].cpt = {0.0};
  std::vector<BetaLevel> levels{{"all", 0.1}};
  BahamasResult r = bahamas_estimate(b, "C", 2.0, levels);
  EXPECT_EQ(r.generic, 0);
  EXPECT_EQ(r.specific, 0);
  EXPECT_EQ(r.individual, 0);
  EXPECT_EQ(r.ccf.at("all"), 0);
}

TEST(Bahamas, Clamp) {
  BahamasResult r = bahamas_estimate(OrOfTwo(), "C", 10.0, {});
  EXPECT_EQ(r.specific, 1.0);
  EXPECT_TRUE(r.warning);
  EXPECT_THROW(bahamas_estimate(OrOfTwo(), "C", -1.0, {}), DomainError);
}

TEST(Bahamas, Fixture) {
  Model m = testing::load_fixture("rts4_digital.json");
  BahamasResult r = bahamas_estimate(m.bbns.at("BP-SW"));
  EXPECT_EQ(render_probability(r.individual), "1.554E-04");
  EXPECT_EQ(render_probability(r.ccf.at("division")), "2.320E-05");
  EXPECT_EQ(render_probability(r.ccf.at("all")), "8.494E-06");

  Model applied = apply_bahamas(m, "BP-SW");
  EXPECT_EQ(applied.ccf_groups.at("BP").total_probability, r.specific);
  EXPECT_EQ(*applied.find_uca("UCA-BP1-A")->probability, r.specific);
}

// Exact inference against the full joint on random networks.
TEST(BbnProperty, MatchesJointEnumeration) {
  testing::Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Bbn b = testing::random_bbn(rng);
    for (const auto& [query, node] : b.nodes) {
      EXPECT_NEAR(infer_marginal(b, query), testing::oracle_marginal(b, query), 1e-12);
    }
    const std::string& ev_node = std::next(b.nodes.begin(), rng() % b.nodes.size())->first;
    const std::string& query = std::next(b.nodes.begin(), rng() % b.nodes.size())->first;
    Evidence ev{{ev_node, rng() % 2 == 0}};
    EXPECT_NEAR(infer_marginal(b, query, ev), testing::oracle_marginal(b, query, ev), 1e-12);
  }
}

TEST(BbnProperty, Normalization) {
  testing::Rng rng(77);
  for (int i = 0; i < 50; ++i) {
    Bbn b = testing::random_bbn(rng);
    for (const auto& [query, node] : b.nodes) {
      Marginal m = infer_distribution(b, query);
      EXPECT_NEAR(m.ok + m.fail, 1.0, 1e-15);
    }
  }
}

TEST(BbnProperty, EliminationOrderIndependence) {
  testing::Rng rng(78);
  for (int i = 0; i < 50; ++i) {
    Bbn b = testing::random_bbn(rng);
    const std::string query = b.nodes.begin()->first;
    std::vector<std::string> order = min_degree_order(b, query);
    double reference = infer_marginal(b, query);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
      EXPECT_NEAR(infer_distribution(b, query, {}, order).fail, reference, 1e-12);
    }
  }
}

TEST(BbnProperty, MonotoneInRootHeps) {
  Model m = testing::load_fixture("rts4_digital.json");
  const Bbn& base = m.bbns.at("BP-SW");
  double reference = infer_marginal(base, "BP_SW_FAIL");
  for (const auto& [id, node] : base.nodes) {
    if (!node.parents.empty()) continue;
    Bbn raised = base;
    raised.nodes.at(id).cpt[0] = std::min(1.0, node.cpt[0] * 3);
    EXPECT_GE(infer_marginal(raised, "BP_SW_FAIL"), reference) << id;
  }
}

}  // namespace
}  // namespace iradic
