#include <gtest/gtest.h>

#include <set>

#include "iradic/cutset.h"
#include "iradic/error.h"
#include "support/oracles.h"

namespace iradic {
namespace {

FaultTree Tree(std::map<std::string, Gate> gates, std::map<std::string, double> events,
               const std::string& top = "TOP") {
  FaultTree ft;
  ft.id = "T";
  ft.top = top;
  for (auto& [id, g] : gates) {
    g.id = id;
    ft.gates[id] = g;
  }
  for (auto& [id, p] : events) ft.events[id] = {id, p, EventKind::kHardware, {}, {}, {}, ""};
  return ft;
}

Gate G(GateKind kind, std::vector<std::string> inputs, int k = 0) { return {"", kind, k, inputs, ""}; }

std::set<std::vector<std::string>> Sets(const CutSetList& cs) {
  std::set<std::vector<std::string>> out;
  for (const CutSet& c : cs.cutsets) out.insert(c.events);
  return out;
}

AnalysisConfig NoTruncation() {
  AnalysisConfig cfg;
  cfg.truncation_probability = 0;
  return cfg;
}

TEST(CutSets, OrAndVote) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"A", "G1"})}, {"G1", G(GateKind::kAnd, {"B", "C"})}},
                      {{"A", 0.1}, {"B", 0.2}, {"C", 0.3}});
  CutSetList cs = minimal_cut_sets(ft, NoTruncation());
  ASSERT_EQ(cs.cutsets.size(), 2u);
  EXPECT_EQ(cs.cutsets[0].events, std::vector<std::string>{"A"});
  EXPECT_EQ(cs.cutsets[1].events, (std::vector<std::string>{"B", "C"}));
  EXPECT_DOUBLE_EQ(cs.cutsets[1].probability, 0.06);

  FaultTree vote = Tree({{"TOP", G(GateKind::kAtLeast, {"A", "B", "C"}, 2)}}, {{"A", 0.1}, {"B", 0.1}, {"C", 0.1}});
  EXPECT_EQ(Sets(minimal_cut_sets(vote, NoTruncation())),
            (std::set<std::vector<std::string>>{{"A", "B"}, {"A", "C"}, {"B", "C"}}));
}

TEST(CutSets, Absorption) {
  // TOP = A + A*B collapses to A.
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"A", "G1"})}, {"G1", G(GateKind::kAnd, {"A", "B"})}},
                      {{"A", 0.1}, {"B", 0.2}});
  EXPECT_EQ(Sets(minimal_cut_sets(ft, NoTruncation())), (std::set<std::vector<std::string>>{{"A"}}));
}

TEST(CutSets, CanonicalOrder) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"Z", "A", "G1", "G2"})},
                       {"G1", G(GateKind::kAnd, {"B", "C"})},
                       {"G2", G(GateKind::kAnd, {"D", "E"})}},
                      {{"Z", 0.1}, {"A", 0.1}, {"B", 0.1}, {"C", 0.1}, {"D", 0.5}, {"E", 0.5}});
  CutSetList cs = minimal_cut_sets(ft, NoTruncation());
  ASSERT_EQ(cs.cutsets.size(), 4u);
  EXPECT_EQ(cs.cutsets[0].events[0], "A");
  EXPECT_EQ(cs.cutsets[1].events[0], "Z");
  EXPECT_EQ(cs.cutsets[2].events[0], "D");
  EXPECT_EQ(cs.cutsets[3].events[0], "B");
}

TEST(CutSets, HouseEvents) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"G1", "B"})}, {"G1", G(GateKind::kAnd, {"H", "A"})}},
                      {{"A", 0.1}, {"B", 0.2}});
  ft.events["H"] = {"H", 1.0, EventKind::kHouse, true, {}, {}, ""};
  EXPECT_EQ(Sets(minimal_cut_sets(ft, NoTruncation())), (std::set<std::vector<std::string>>{{"A"}, {"B"}}));
  ft.events["H"] = {"H", 0.0, EventKind::kHouse, false, {}, {}, ""};
  EXPECT_EQ(Sets(minimal_cut_sets(ft, NoTruncation())), (std::set<std::vector<std::string>>{{"B"}}));

  FaultTree always = Tree({{"TOP", G(GateKind::kOr, {"H", "A"})}}, {{"A", 0.1}});
  always.events["H"] = {"H", 1.0, EventKind::kHouse, true, {}, {}, ""};
  EXPECT_THROW(minimal_cut_sets(always, NoTruncation()), DomainError);
}

TEST(CutSets, Truncation) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"A", "G1"})}, {"G1", G(GateKind::kAnd, {"B", "C"})}},
                      {{"A", 0.1}, {"B", 5e-7}, {"C", 1e-6}});
  AnalysisConfig cfg;
  cfg.truncation_probability = 1e-12;
  CutSetList cs = minimal_cut_sets(ft, cfg);
  EXPECT_EQ(cs.cutsets.size(), 1u);
  EXPECT_EQ(cs.truncated_count, 1);

  cfg.truncation_probability = 0;
  cfg.max_cutset_order = 1;
  cs = minimal_cut_sets(ft, cfg);
  EXPECT_EQ(cs.cutsets.size(), 1u);
  EXPECT_EQ(cs.truncated_count, 1);
}

TEST(CutSets, ResourceLimit) {
  std::map<std::string, Gate> gates;
  std::map<std::string, double> events;
  std::vector<std::string> ands;
  for (int g = 0; g < 6; ++g) {
    std::vector<std::string> ins;
    for (int e = 0; e < 6; ++e) {
      std::string id = "E" + std::to_string(g) + "_" + std::to_string(e);
      ins.push_back(id);
      events[id] = 0.5;
    }
    gates["O" + std::to_string(g)] = G(GateKind::kOr, ins);
    ands.push_back("O" + std::to_string(g));
  }
  gates["TOP"] = G(GateKind::kAnd, ands);
  FaultTree ft = Tree(gates, events);
  AnalysisConfig cfg;
  cfg.max_intermediate_sets = 1000;
  EXPECT_THROW(minimal_cut_sets(ft, cfg), ResourceLimitError);
  cfg.max_intermediate_sets = 100000;
  EXPECT_EQ(minimal_cut_sets(ft, cfg).cutsets.size(), 46656u);
}

TEST(CutSets, VoteGateLimit) {
  std::map<std::string, double> events;
  std::vector<std::string> ins;
  for (int i = 0; i < 21; ++i) {
    ins.push_back("E" + std::to_string(i));
    events[ins.back()] = 0.1;
  }
  FaultTree ft = Tree({{"TOP", G(GateKind::kAtLeast, ins, 2)}}, events);
  EXPECT_THROW(minimal_cut_sets(ft, NoTruncation()), DomainError);
}

TEST(Quantify, Methods) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"A", "B"})}}, {{"A", 0.1}, {"B", 0.1}});
  AnalysisConfig cfg = NoTruncation();
  EXPECT_NEAR(top_probability(ft, cfg, QuantMethod::kExact), 0.19, 1e-15);
  EXPECT_NEAR(top_probability(ft, cfg, QuantMethod::kMcub), 0.19, 1e-15);
  EXPECT_NEAR(top_probability(ft, cfg, QuantMethod::kRareEvent), 0.2, 1e-15);

  FaultTree and_tree = Tree({{"TOP", G(GateKind::kAnd, {"A", "B"})}}, {{"A", 1e-2}, {"B", 1e-2}});
  EXPECT_NEAR(exact_top_probability(and_tree), 1e-4, 1e-18);
}

TEST(Quantify, ExactLimit) {
  std::map<std::string, double> events;
  std::vector<std::string> ins;
  for (int i = 0; i < 30; ++i) {
    ins.push_back("E" + std::to_string(i));
    events[ins.back()] = 0.01;
  }
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, ins)}}, events);
  EXPECT_THROW(exact_top_probability(ft, 25), DomainError);
  EXPECT_NEAR(exact_top_probability(ft, 30), 1 - std::pow(0.99, 30), 1e-14);
}

TEST(Importance, FussellVeselyAndSpofs) {
  FaultTree ft = Tree({{"TOP", G(GateKind::kOr, {"A", "G1"})}, {"G1", G(GateKind::kAnd, {"B", "C"})}},
                      {{"A", 0.1}, {"B", 0.5}, {"C", 0.2}});
  CutSetList cs = minimal_cut_sets(ft, NoTruncation());
  auto fv = fussell_vesely(cs);
  ASSERT_EQ(fv.size(), 3u);
  EXPECT_EQ(fv[0].event, "A");
  EXPECT_NEAR(fv[0].fussell_vesely, 0.5, 1e-15);
  EXPECT_EQ(find_spofs(cs), std::vector<std::string>{"A"});
  EXPECT_THROW(fussell_vesely(CutSetList{}), DomainError);
}

// Truth-table oracle on random coherent trees.
TEST(CutSetsProperty, MatchesOracle) {
  testing::Rng rng(1234);
  for (int i = 0; i < 200; ++i) {
    FaultTree ft = testing::random_fault_tree(rng);
    std::set<std::vector<std::string>> expected = testing::oracle_cut_sets(ft);
    if (expected.count({})) continue;
    EXPECT_EQ(Sets(minimal_cut_sets(ft, NoTruncation())), expected) << "tree " << i;
    double exact = exact_top_probability(ft, 64);
    EXPECT_NEAR(exact, testing::oracle_probability(ft), 1e-12);
  }
}

TEST(CutSetsProperty, BoundChain) {
  testing::Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    FaultTree ft = testing::random_fault_tree(rng);
    CutSetList cs = minimal_cut_sets(ft, NoTruncation());
    double exact = exact_top_probability(ft, 64);
    double mcub = mcub_probability(cs);
    double rare = rare_event_probability(cs);
    EXPECT_LE(exact, mcub * (1 + 1e-12) + 1e-15);
    EXPECT_LE(mcub, rare * (1 + 1e-12) + 1e-15);
  }
}

TEST(CutSetsProperty, Deterministic) {
  testing::Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    FaultTree ft = testing::random_fault_tree(rng);
    EXPECT_EQ(minimal_cut_sets(ft, AnalysisConfig{}), minimal_cut_sets(ft, AnalysisConfig{}));
  }
}

// In-expansion pruning never changes which sets survive the final cut.
TEST(CutSetsProperty, PruningAgreesWithFinalTruncation) {
  testing::Rng rng(23);
  testing::FtShape shape;
  shape.min_p = 1e-5;
  shape.max_p = 1e-2;
  for (int i = 0; i < 200; ++i) {
    FaultTree ft = testing::random_fault_tree(rng, shape);
    AnalysisConfig late;
    late.truncation_probability = 1e-8;
    late.max_cutset_order = 3;
    AnalysisConfig early = late;
    early.truncate_during_expansion = true;
    EXPECT_EQ(minimal_cut_sets(ft, late).cutsets, minimal_cut_sets(ft, early).cutsets);
  }
}

}  // namespace
}  // namespace iradic
