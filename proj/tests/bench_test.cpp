#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <zlib.h>

#include "tango/bench.hpp"

namespace tango {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name, const std::string& text) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(InventoryTest, EmptyFile) {
  const auto path = temp_file("tango_inv_empty.smi", "");
  EXPECT_EQ(Inventory::load(path).size(), 0u);
  fs::remove(path);
}

TEST(InventoryTest, DuplicatesCollapse) {
  const auto path = temp_file("tango_inv_dup.smi", "CCO\nOCC\n");
  const Inventory inv = Inventory::load(path);
  EXPECT_EQ(inv.size(), 1u);
  EXPECT_TRUE(inv.contains(parse_smiles("C(O)C")));
  EXPECT_TRUE(inv.contains(std::string_view("CCO")));
  EXPECT_FALSE(inv.contains(parse_smiles("CCN")));
  fs::remove(path);
}

TEST(InventoryTest, SkipsBadLinesAndIdentifiers) {
  const auto path = temp_file("tango_inv_bad.smi", "CCO mol-1\nC1CC\n\nc1ccccc1\tbenzene\r\nN");
  const Inventory inv = Inventory::load(path);
  EXPECT_EQ(inv.size(), 3u);
  EXPECT_EQ(inv.skipped_lines(), 1u);
  EXPECT_TRUE(inv.contains(parse_smiles("N")));
  fs::remove(path);
}

TEST(InventoryTest, Gzip) {
  const auto path = fs::temp_directory_path() / "tango_inv.smi.gz";
  gzFile f = gzopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  const std::string text = "CCO\nc1ccncc1\nC(=O)O\n";
  gzwrite(f, text.data(), static_cast<unsigned>(text.size()));
  gzclose(f);
  const Inventory inv = Inventory::load(path);
  EXPECT_EQ(inv.size(), 3u);
  EXPECT_TRUE(inv.contains(parse_smiles("OC=O")));
  fs::remove(path);
}

TEST(InventoryTest, MissingFileThrows) {
  EXPECT_THROW(Inventory::load("/nonexistent/tango.smi"), std::runtime_error);
}

// Linear chain C_n -> C_(n-1) -> ... -> C, solved after n - 1 expansions.
ReactionCorpus alkane_chain(int n) {
  ReactionCorpus corpus;
  for (int i = n; i > 1; --i) corpus.add(parse_smiles(std::string(i, 'C')), {parse_smiles(std::string(i - 1, 'C'))}, 0.9);
  return corpus;
}

TEST(EvaluateTest, Arithmetic) {
  const ReactionCorpus corpus = alkane_chain(31);
  std::vector<BenchmarkInstance> instances(2, BenchmarkInstance{parse_smiles("C"), parse_smiles("C"), {}, {}});
  instances[0].target = parse_smiles(std::string(31, 'C'));
  instances[1].target = parse_smiles("CCO");
  SearchConfig cfg;
  cfg.tango.k = 0.0;
  const MetricsReport r = evaluate(instances, corpus, Inventory{}, cfg, {10, 30, 50});
  EXPECT_DOUBLE_EQ(r.solve_rate_at.at(10), 0.0);
  EXPECT_DOUBLE_EQ(r.solve_rate_at.at(30), 0.5);
  EXPECT_DOUBLE_EQ(r.solve_rate_at.at(50), 0.5);
  EXPECT_DOUBLE_EQ(r.avg_expansions, 40.0);
  EXPECT_DOUBLE_EQ(r.avg_route_length, 30.0);
  EXPECT_EQ(r.outcomes[0].solve_expansions, 30u);
  EXPECT_FALSE(r.outcomes[1].solved);
}

TEST(EvaluateTest, EmptyAndInvalid) {
  const ReactionCorpus corpus;
  const MetricsReport r = evaluate({}, corpus, Inventory{}, SearchConfig{}, {10});
  EXPECT_EQ(r.instance_count(), 0u);
  EXPECT_EQ(count_lines(metrics_csv({{"x", 0, 0, &r}})), 1u);
  EXPECT_THROW(evaluate({}, corpus, Inventory{}, SearchConfig{}, {}), std::invalid_argument);
  EXPECT_THROW(evaluate({}, corpus, Inventory{}, SearchConfig{}, {50, 10}), std::invalid_argument);
}

TEST(EvaluateTest, SolveRateMonotoneAndParallelDeterministic) {
  GeneratorConfig gc;
  gc.instances = 24;
  gc.min_depth = 4;
  gc.max_depth = 6;
  const auto bench = generate_benchmark(gc);
  Inventory inv;
  for (const auto& s : bench.inventory) inv.insert_smiles(s);
  const std::vector<std::size_t> budgets{5, 10, 25, 50, 100};
  const auto serial = evaluate(bench.instances, bench.corpus, inv, SearchConfig{}, budgets);
  const auto parallel = evaluate(bench.instances, bench.corpus, inv, SearchConfig{}, budgets, {4, nullptr});
  for (std::size_t i = 1; i < budgets.size(); ++i) {
    EXPECT_LE(serial.solve_rate_at.at(budgets[i - 1]), serial.solve_rate_at.at(budgets[i]));
  }
  ASSERT_EQ(serial.outcomes.size(), parallel.outcomes.size());
  for (std::size_t i = 0; i < serial.outcomes.size(); ++i) {
    EXPECT_EQ(serial.outcomes[i].solve_expansions, parallel.outcomes[i].solve_expansions);
    EXPECT_EQ(serial.outcomes[i].route_length, parallel.outcomes[i].route_length);
  }
  EXPECT_EQ(serial.solve_rate_at, parallel.solve_rate_at);
  EXPECT_LE(serial.avg_expansions, 100.0);
}

TEST(EvaluateTest, ErrorsAreIsolated) {
  class Faulty final : public ValueOracle {
   public:
    double value(const Molecule& m) const override {
      if (m.canonical_key() == "CCO") throw std::runtime_error("no estimate");
      return 0.0;
    }
  };
  const ReactionCorpus corpus = alkane_chain(4);
  std::vector<BenchmarkInstance> instances{{parse_smiles("CCO"), parse_smiles("C"), {}, {}},
                                           {parse_smiles("CCCC"), parse_smiles("C"), {}, {}}};
  const auto r = evaluate(instances, corpus, Inventory{}, SearchConfig{}, {10}, {2, std::make_shared<Faulty>()});
  EXPECT_EQ(r.error_count(), 1u);
  ASSERT_TRUE(r.outcomes[0].error);
  EXPECT_EQ(*r.outcomes[0].error, "no estimate");
  EXPECT_FALSE(r.outcomes[0].solved);
  EXPECT_TRUE(r.outcomes[1].solved);
  EXPECT_DOUBLE_EQ(r.solve_rate_at.at(10), 0.5);

  SearchConfig bad;
  bad.top_n = 0;
  EXPECT_THROW(evaluate(instances, corpus, Inventory{}, bad, {10}), std::invalid_argument);
}

TEST(CommonRouteLengthTest, OnlyCommonlySolved) {
  MetricsReport a, b;
  a.outcomes = {{true, 3, 3, 2, 0, {}}, {true, 4, 4, 5, 0, {}}, {false, {}, 9, 0, 0, {}}};
  b.outcomes = {{true, 3, 3, 4, 0, {}}, {false, {}, 9, 0, 0, {}}, {true, 2, 2, 1, 0, {}}};
  const auto lengths = common_route_lengths({&a, &b});
  EXPECT_EQ(lengths[0], 2.0);
  EXPECT_EQ(lengths[1], 4.0);
}

TEST(MonotonicityTest, Examples) {
  EXPECT_DOUBLE_EQ(decreasing_fraction({5.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(decreasing_fraction({1.0, 1.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(decreasing_fraction({3.0, 1.0, 2.0}), 0.5);
  BenchmarkInstance inst{parse_smiles("CCCO"), parse_smiles("CO"), std::vector<Molecule>{parse_smiles("CCCO"), parse_smiles("CCO"), parse_smiles("CO")}, {}};
  const auto constant = monotonicity_analysis(inst, constant_route_cost(4.0));
  EXPECT_DOUBLE_EQ(constant.decreasing_fraction, 0.0);
  ASSERT_EQ(constant.points.size(), 3u);
  EXPECT_EQ(constant.points[0].distance, 2);
  EXPECT_EQ(constant.points[2].distance, 0);
  const auto tango = monotonicity_analysis(inst, tango_route_cost({}));
  EXPECT_DOUBLE_EQ(tango.points.back().cost, 0.0);
  EXPECT_EQ(count_lines(series_csv(tango)), 4u);
  inst.ground_truth_route.reset();
  EXPECT_THROW(monotonicity_analysis(inst, constant_route_cost()), std::invalid_argument);
}

TEST(MonotonicityTest, TangoDecreasesOnGeneratedRoutes) {
  GeneratorConfig gc;
  gc.instances = 30;
  gc.min_depth = 4;
  gc.max_depth = 6;
  const auto bench = generate_benchmark(gc);
  const auto cost = tango_route_cost({});
  double sum = 0;
  for (const auto& inst : bench.instances) sum += monotonicity_analysis(inst, cost).decreasing_fraction;
  EXPECT_GE(sum / 30.0, 0.8);
}

TEST(SweepTest, ShapeAndSingleCell) {
  const auto bench = generate_benchmark(5, 8, 4, 1);
  Inventory inv;
  for (const auto& s : bench.inventory) inv.insert_smiles(s);
  const auto one = hyperparameter_sweep(bench.instances, bench.corpus, inv, {25}, {0.3}, 50);
  ASSERT_EQ(one.size(), 1u);
  const auto direct = evaluate(bench.instances, bench.corpus, inv, SearchConfig{}, {50});
  EXPECT_EQ(one[0].report.solve_rate_at, direct.solve_rate_at);
  EXPECT_EQ(one[0].report.avg_expansions, direct.avg_expansions);

  const auto grid = hyperparameter_sweep(bench.instances, bench.corpus, inv, {0, 25}, {0.0, 0.3, 1.0}, 50);
  EXPECT_EQ(count_lines(sweep_csv(grid)), 1u + 6u);
  EXPECT_THROW(hyperparameter_sweep(bench.instances, bench.corpus, inv, {}, {0.3}, 50), std::invalid_argument);
}

}  // namespace
}  // namespace tango
