#include <algorithm>
#include <filesystem>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tango/policy.hpp"

namespace tango {
namespace {

std::multiset<std::string> keys(const std::vector<Molecule>& mols) {
  std::multiset<std::string> out;
  for (const auto& m : mols) out.insert(m.canonical_key());
  return out;
}

TEST(CorpusTest, KeyMissIsEmpty) {
  ReactionCorpus corpus;
  EXPECT_TRUE(corpus.expand(parse_smiles("CCO"), 10).empty());
}

TEST(CorpusTest, TopNKeepsMostProbable) {
  ReactionCorpus corpus;
  const Molecule p = parse_smiles("CCOC");
  corpus.add(p, {parse_smiles("CC"), parse_smiles("OC")}, 0.2);
  corpus.add(p, {parse_smiles("CCO"), parse_smiles("C")}, 0.5);
  corpus.add(p, {parse_smiles("CC[O-]"), parse_smiles("C[I]")}, 0.3);
  const auto top = expand_one_step(corpus, parse_smiles("COCC"), 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_DOUBLE_EQ(top[0].probability, 0.5);
  EXPECT_DOUBLE_EQ(top[1].probability, 0.3);
  EXPECT_THROW(expand_one_step(corpus, p, 0), std::invalid_argument);
}

TEST(CorpusTest, RejectsBadProbability) {
  ReactionCorpus corpus;
  EXPECT_THROW(corpus.add(parse_smiles("CC"), {parse_smiles("C")}, 0.0), std::invalid_argument);
  EXPECT_THROW(corpus.add(parse_smiles("CC"), {parse_smiles("C")}, 1.5), std::invalid_argument);
  EXPECT_THROW(corpus.add(parse_smiles("CC"), {}, 0.5), std::invalid_argument);
}

TEST(CorpusTest, JsonlRoundTrip) {
  ReactionCorpus corpus;
  corpus.add(parse_smiles("CCOC(C)=O"), {parse_smiles("CCO"), parse_smiles("CC(=O)O")}, 0.7);
  corpus.add(parse_smiles("CCN"), {parse_smiles("CC=O"), parse_smiles("N")}, 0.25);
  const auto path = std::filesystem::temp_directory_path() / "tango_corpus_rt.jsonl";
  corpus.save_jsonl(path);
  const ReactionCorpus back = ReactionCorpus::load_jsonl(path);
  EXPECT_EQ(back.to_jsonl(), corpus.to_jsonl());
  std::filesystem::remove(path);
}

TEST(BondDisconnectionTest, Examples) {
  const auto cc = bond_disconnection_candidates(parse_smiles("CC"));
  ASSERT_EQ(cc.size(), 1u);
  EXPECT_DOUBLE_EQ(cc[0].probability, 1.0);
  EXPECT_EQ(keys(cc[0].precursors), (std::multiset<std::string>{"C", "C"}));

  EXPECT_TRUE(bond_disconnection_candidates(parse_smiles("C1CC1")).empty());
  EXPECT_EQ(bond_disconnection_candidates(parse_smiles("CCO")).size(), 2u);

  const auto ccoc = bond_disconnection_candidates(parse_smiles("CCOC"));
  ASSERT_EQ(ccoc.size(), 3u);
  for (const auto& c : ccoc) {
    EXPECT_EQ(c.precursors.size(), 2u);
    EXPECT_DOUBLE_EQ(c.probability, 1.0 / 3.0);
  }
}

TEST(BondDisconnectionTest, CapsWithHydrogenAndKeepsCharges) {
  const auto cands = bond_disconnection_candidates(parse_smiles("C[N+](C)(C)C"));
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(keys(cands[0].precursors), (std::multiset<std::string>{"C", "C[NH+](C)C"}));
  EXPECT_TRUE(bond_disconnection_candidates(parse_smiles("C=C")).empty());
}

TEST(BondDisconnectionTest, Deterministic) {
  const BondDisconnectionPolicy policy;
  const Molecule m = parse_smiles("CC(C)Cc1ccc(cc1)C(C)C(=O)O");
  const auto a = policy.expand(m, 50);
  const auto b = policy.expand(parse_smiles("OC(=O)C(C)c1ccc(CC(C)C)cc1"), 50);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(keys(a[i].precursors), keys(b[i].precursors));
}

TEST(GeneratorTest, DepthOneHasOneReaction) {
  const auto bench = generate_benchmark(7, 5, 1, 1);
  ASSERT_EQ(bench.instances.size(), 5u);
  for (const auto& inst : bench.instances) {
    EXPECT_EQ(inst.route_reactions.size(), 1u);
    EXPECT_EQ(inst.ground_truth_route->size(), 2u);
  }
}

TEST(GeneratorTest, SameSeedSameBytes) {
  const auto a = generate_benchmark(42, 10, 4, 1);
  const auto b = generate_benchmark(42, 10, 4, 1);
  EXPECT_EQ(a.corpus.to_jsonl(), b.corpus.to_jsonl());
  EXPECT_EQ(instances_to_jsonl(a.instances), instances_to_jsonl(b.instances));
  const auto c = generate_benchmark(43, 10, 4, 1);
  EXPECT_NE(a.corpus.to_jsonl(), c.corpus.to_jsonl());
}

class GeneratorDepthTest : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(GeneratorDepthTest, BfsDistanceEqualsDepth) {
  const auto [depth, branching] = GetParam();
  const auto bench = generate_benchmark(7, 20, depth, branching);
  for (const auto& inst : bench.instances) {
    EXPECT_EQ(oracle::corpus_distance(bench.corpus, inst.target, inst.sm), depth);
    ASSERT_TRUE(inst.ground_truth_route);
    const auto& route = *inst.ground_truth_route;
    ASSERT_EQ(route.size(), static_cast<std::size_t>(depth) + 1);
    EXPECT_EQ(route.front().canonical_key(), inst.target.canonical_key());
    EXPECT_EQ(route.back().canonical_key(), inst.sm.canonical_key());
    ASSERT_EQ(inst.route_reactions.size(), static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i) {
      const auto& rx = bench.corpus.reaction(inst.route_reactions[i]);
      EXPECT_EQ(rx.product.canonical_key(), route[i].canonical_key());
      EXPECT_EQ(rx.precursors.size(), static_cast<std::size_t>(1 + branching));
      EXPECT_TRUE(std::any_of(rx.precursors.begin(), rx.precursors.end(),
                              [&](const Molecule& m) { return m.canonical_key() == route[i + 1].canonical_key(); }));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Depths, GeneratorDepthTest,
                         ::testing::Values(std::pair{1, 1}, std::pair{3, 1}, std::pair{5, 1}, std::pair{6, 1},
                                           std::pair{4, 2}));

TEST(GeneratorTest, DistractorsPerProduct) {
  GeneratorConfig cfg;
  cfg.instances = 10;
  cfg.distractors = 2;
  const auto bench = generate_benchmark(cfg);
  for (const auto& inst : bench.instances) {
    for (std::size_t i = 0; i + 1 < inst.ground_truth_route->size(); ++i) {
      EXPECT_EQ(bench.corpus.reactions_for((*inst.ground_truth_route)[i].canonical_key()).size(), 3u);
    }
  }
}

TEST(GeneratorTest, InventoryHoldsBlocksOnly) {
  const auto bench = generate_benchmark(7, 5, 4, 1);
  EXPECT_EQ(bench.inventory.size(), fragment_alphabet().size());
}

TEST(InstancesTest, JsonlRoundTrip) {
  const auto bench = generate_benchmark(3, 4, 3, 1);
  const auto path = std::filesystem::temp_directory_path() / "tango_instances_rt.jsonl";
  save_instances(path, bench.instances);
  const auto back = load_instances(path);
  EXPECT_EQ(instances_to_jsonl(back), instances_to_jsonl(bench.instances));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace tango
