// Copyright 2026 The polyreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polyreg/experiment.h"

#include <gtest/gtest.h>
#include <stdlib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace polyreg {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.sizes = {6};
  c.horizon = 200;
  c.targets = {0, 3, 10};
  c.algorithms = {"camw_cold", "camw_geometric", "ogd", "fixed_share"};
  c.seeds = {0, 1};
  return c;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("polyreg_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(PresetTest, Contents) {
  const ExperimentConfig s = PresetConfig("stability_sweep");
  EXPECT_EQ(s.targets, (std::vector<int>{0, 1, 5, 20, 50, 200, 1000, 5000, 9999}));
  EXPECT_EQ(s.sizes, (std::vector<int>{20}));
  EXPECT_EQ(s.horizon, 10000);
  const ExperimentConfig d = PresetConfig("dimension_scaling");
  EXPECT_EQ(d.sizes, (std::vector<int>{10, 20, 50, 100, 200}));
  EXPECT_EQ(d.targets, (std::vector<int>{0}));
  const ExperimentConfig t = PresetConfig("transfer_floor");
  EXPECT_EQ(t.alphas, (std::vector<double>{0.001, 0.003, 0.01, 0.03, 0.1, 0.3}));
  EXPECT_EQ(t.sizes, (std::vector<int>{50}));
  EXPECT_EQ(t.horizon, 10000);
  EXPECT_EQ(t.seeds.size(), 10u);
  const ExperimentConfig p = PresetConfig("shortest_path");
  EXPECT_EQ(p.game, "shortest_path");
  EXPECT_EQ(p.sizes, (std::vector<int>{5, 6, 8}));
  for (const std::string& name : PresetNames()) {
    if (name != "custom") EXPECT_NO_THROW(ValidateConfig(PresetConfig(name)));
  }
  EXPECT_THROW(PresetConfig("nope"), std::invalid_argument);
}

TEST(ConfigTest, StrictParsing) {
  EXPECT_THROW(ParseConfig(json{{"n", 5}, {"bogus", 1}}), std::invalid_argument);
  EXPECT_THROW(ParseConfig(json{{"n", 5}, {"k", 5}}), std::invalid_argument);
  EXPECT_THROW(ParseConfig(json{{"n", "five"}}), std::invalid_argument);
  EXPECT_THROW(ParseConfig(json{{"game", "shortest_path"}, {"n", 5}}),
               std::invalid_argument);
  const ExperimentConfig c = ParseConfig(json::parse(R"({
      "n": 8, "T": 100, "targets": [0, 4], "algorithms": ["ogd"],
      "seeds": [3], "alpha": 0.05, "eta_x": 0.2})"));
  EXPECT_EQ(c.sizes, (std::vector<int>{8}));
  EXPECT_EQ(c.alphas, (std::vector<double>{0.05}));
  EXPECT_EQ(*c.eta_x, 0.2);
  EXPECT_FALSE(c.eta_y.has_value());
  EXPECT_NO_THROW(ValidateConfig(c));
  // Presets supply defaults that a config may override.
  const ExperimentConfig o =
      ParseConfig(json{{"experiment", "stability_sweep"}, {"seeds", {4}}});
  EXPECT_EQ(o.targets, PresetConfig("stability_sweep").targets);
  EXPECT_EQ(o.seeds, (std::vector<uint64_t>{4}));
}

TEST(ConfigTest, RoundTripsThroughJson) {
  ExperimentConfig c = SmallConfig();
  c.eta_y = 0.3;
  const ExperimentConfig back = ParseConfig(ConfigToJson(c));
  EXPECT_EQ(ConfigToJson(back), ConfigToJson(c));
  EXPECT_EQ(ConfigHash(back), ConfigHash(c));
  c.output_dir = "elsewhere";
  EXPECT_EQ(ConfigHash(back), ConfigHash(c));
  c.seeds = {0, 2};
  EXPECT_NE(ConfigHash(back), ConfigHash(c));
}

TEST(ConfigTest, ValidationRejectsBadConfigs) {
  auto expect_invalid = [](auto mutate) {
    ExperimentConfig c = SmallConfig();
    mutate(c);
    EXPECT_THROW(ValidateConfig(c), std::invalid_argument);
  };
  expect_invalid([](ExperimentConfig& c) { c.algorithms = {"nope"}; });
  expect_invalid([](ExperimentConfig& c) { c.algorithms = {"mw_restarts"}; });
  expect_invalid([](ExperimentConfig& c) { c.seeds.clear(); });
  expect_invalid([](ExperimentConfig& c) { c.targets = {200}; });
  expect_invalid([](ExperimentConfig& c) { c.targets = {-1}; });
  expect_invalid([](ExperimentConfig& c) { c.alphas = {1e-7}; });
  expect_invalid([](ExperimentConfig& c) { c.eta_x = -0.1; });
  expect_invalid([](ExperimentConfig& c) { c.game = "poker"; });
  expect_invalid([](ExperimentConfig& c) { c.restart_policy = "sometimes"; });
  expect_invalid([](ExperimentConfig& c) { c.cell_schedule = "zigzag"; });
  expect_invalid([](ExperimentConfig& c) {
    c.game = "shortest_path";
    c.algorithms = {"mw_restarts"};
    c.path_noise = c.path_margin;
  });
  expect_invalid([](ExperimentConfig& c) {
    c.game = "shortest_path";
    c.algorithms = {"ogd_fw"};
    c.sizes = {9};
  });
}

TEST(RunTest, RowCountsAndOrdering) {
  const ExperimentConfig c = SmallConfig();
  const RunRecord r = RunExperiment(c, 2);
  ASSERT_EQ(r.rows.size(), 4u * 2u * 3u);
  for (size_t i = 1; i < r.rows.size(); ++i) {
    const RunRow& a = r.rows[i - 1];
    const RunRow& b = r.rows[i];
    EXPECT_LE(std::tie(a.n_or_k, a.algo, a.target_switches, a.seed),
              std::tie(b.n_or_k, b.algo, b.target_switches, b.seed));
  }
  for (const RunRow& row : r.rows) {
    EXPECT_EQ(row.oracle_switches, row.target_switches);
    EXPECT_DOUBLE_EQ(row.avg_regret, row.cum_regret / c.horizon);
  }

  ExperimentConfig one = c;
  one.algorithms = {"camw_cold"};
  one.seeds = {0};
  one.targets = {3};
  EXPECT_EQ(RunExperiment(one, 1).rows.size(), 1u);
}

TEST(RunTest, EmptyAlgorithmListGivesHeaderOnlyCsv) {
  ExperimentConfig c = SmallConfig();
  c.algorithms.clear();
  const RunRecord r = RunExperiment(c, 1);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(FormatCsv(r.rows),
            "experiment,algo,seed,n_or_k,T,target_switches,observed_switches,"
            "oracle_switches,cum_regret,avg_regret,struct_norm,cont_norm\n");
}

TEST(RunTest, AlphaSweepLabels) {
  ExperimentConfig c = SmallConfig();
  c.algorithms = {"camw_cold", "camw_ws"};
  c.alphas = {0.01, 0.1};
  c.seeds = {0};
  c.targets = {3};
  const RunRecord r = RunExperiment(c, 1);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].algo, "camw_cold");
  EXPECT_EQ(r.rows[1].algo, "camw_ws[alpha=0.01]");
  EXPECT_EQ(r.rows[2].algo, "camw_ws[alpha=0.1]");
}

TEST(RunTest, DeterministicAcrossThreadCounts) {
  const ExperimentConfig c = SmallConfig();
  const std::string a = FormatCsv(RunExperiment(c, 1).rows);
  const std::string b = FormatCsv(RunExperiment(c, 3).rows);
  EXPECT_EQ(a, b);
}

TEST(RunTest, SeedIsolation) {
  ExperimentConfig a = SmallConfig();
  a.seeds = {0, 1};
  ExperimentConfig b = SmallConfig();
  b.seeds = {1, 2};
  auto seed_one = [](const RunRecord& r) {
    std::vector<RunRow> rows;
    for (const RunRow& row : r.rows) {
      if (row.seed == 1) rows.push_back(row);
    }
    return FormatCsv(rows);
  };
  EXPECT_EQ(seed_one(RunExperiment(a, 1)), seed_one(RunExperiment(b, 1)));
}

TEST(RunTest, OtherGames) {
  ExperimentConfig adv = SmallConfig();
  adv.game = "epoch_adversary";
  adv.sizes = {5};
  adv.noise_amplitude = 0.0;
  EXPECT_EQ(RunExperiment(adv, 1).rows.size(), 24u);

  ExperimentConfig path;
  path.game = "shortest_path";
  path.sizes = {3};
  path.horizon = 300;
  path.targets = {0, 4};
  path.algorithms = {"mw_restarts", "ogd_fw"};
  path.seeds = {0};
  const RunRecord r = RunExperiment(path, 1);
  ASSERT_EQ(r.rows.size(), 4u);
  for (const RunRow& row : r.rows) {
    EXPECT_EQ(row.oracle_switches, row.target_switches);
    if (row.algo == "mw_restarts") {
      EXPECT_EQ(row.observed_switches, row.target_switches);
    }
  }
  EXPECT_EQ(r.summary["crossover"].size(), 1u);
}

TEST(CsvTest, RoundTrip) {
  const RunRecord r = RunExperiment(SmallConfig(), 1);
  const std::string text = FormatCsv(r.rows);
  const std::vector<RunRow> parsed = ParseCsv(text);
  ASSERT_EQ(parsed.size(), r.rows.size());
  EXPECT_EQ(FormatCsv(parsed), text);
  EXPECT_EQ(parsed[5].cum_regret, r.rows[5].cum_regret);
  EXPECT_THROW(ParseCsv("a,b\n"), std::invalid_argument);
  EXPECT_THROW(ParseCsv(text + "x,y,z\n"), std::invalid_argument);
}

RunRow Synthetic(const std::string& algo, int size, int target, uint64_t seed,
                 double avg, double norm) {
  RunRow r;
  r.experiment = "custom";
  r.algo = algo;
  r.n_or_k = size;
  r.horizon = 100;
  r.target_switches = target;
  r.seed = seed;
  r.avg_regret = avg;
  r.cum_regret = 100 * avg;
  r.struct_norm = norm;
  r.cont_norm = norm;
  return r;
}

TEST(SummaryTest, PlantedPowerLaw) {
  std::vector<RunRow> rows;
  for (int s : {0, 1, 5, 20, 50}) {
    for (uint64_t seed : {0, 1}) {
      rows.push_back(Synthetic("a", 10, s, seed, 0.1 * std::sqrt(1.0 + s), 2.0));
    }
  }
  const json summary = Summarize(rows);
  const json& g = summary["groups"][0];
  EXPECT_NEAR(g["loglog_slope"].get<double>(), 0.5, 1e-9);
  EXPECT_EQ(g["cv_struct_norm"].get<double>(), 0.0);
  EXPECT_EQ(g["cv_cont_norm"].get<double>(), 0.0);
}

TEST(SummaryTest, SlopeOmittedWithReason) {
  const std::vector<RunRow> rows = {Synthetic("a", 10, 0, 0, 0.1, 1.0),
                                    Synthetic("a", 10, 4, 0, 0.2, 1.0)};
  const json g = Summarize(rows)["groups"][0];
  EXPECT_TRUE(g["loglog_slope"].is_null());
  EXPECT_EQ(g["slope_omitted_reason"], "fewer than 3 targets");
}

TEST(SummaryTest, Crossover) {
  std::vector<RunRow> rows;
  const std::vector<int> targets = {2, 5, 10, 20, 50};
  const std::vector<double> mw = {0.5, 0.9, 1.2, 1.5, 1.8};
  for (size_t i = 0; i < targets.size(); ++i) {
    rows.push_back(Synthetic("mw_restarts", 8, targets[i], 0, mw[i], 1.0));
    rows.push_back(Synthetic("ogd_fw", 8, targets[i], 0, 1.0, 1.0));
  }
  const json c = Summarize(rows)["crossover"][0];
  EXPECT_EQ(c["crossover_target"], 10);
  EXPECT_NEAR(c["spearman"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(c["theory_threshold"].get<double>(), 112 / std::log(3432.0), 1e-9);
  EXPECT_NEAR(c["theory_threshold"].get<double>(), 13.8, 0.05);
}

TEST(OutputTest, WritesAtomicallyAndReproducesFromManifest) {
  const fs::path dir = TempDir("outputs");
  ExperimentConfig c = SmallConfig();
  c.output_dir = dir.string();
  const RunRecord r = RunExperiment(c, 1);
  WriteOutputs(c, r, dir);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"manifest.json", "results.csv",
                                             "summary.json"}));
  EXPECT_EQ(ReadFile(dir / "results.csv"), FormatCsv(r.rows));

  const ExperimentConfig again = LoadConfig(dir / "manifest.json");
  EXPECT_EQ(ConfigHash(again), r.config_hash);
  EXPECT_EQ(FormatCsv(RunExperiment(again, 2).rows), FormatCsv(r.rows));
  fs::remove_all(dir);
}

TEST(OutputTest, ManifestHasNoVolatileFields) {
  const ExperimentConfig c = PresetConfig("dimension_scaling");
  RunRecord r;
  r.config_hash = ConfigHash(c);
  const json m = BuildManifest(c, r);
  EXPECT_EQ(m.dump(), BuildManifest(c, r).dump());
  EXPECT_FALSE(m["desk_scale_notes"].empty());
  EXPECT_EQ(m["config"], ConfigToJson(c));
}

TEST(ThreadBudgetTest, EnvironmentCap) {
  ::setenv("POLYREG_THREADS", "1", 1);
  EXPECT_EQ(ThreadBudget(), 1);
  ::setenv("POLYREG_THREADS", "zero", 1);
  EXPECT_THROW(ThreadBudget(), std::invalid_argument);
  ::unsetenv("POLYREG_THREADS");
  EXPECT_GE(ThreadBudget(), 1);
}

}  // namespace
}  // namespace polyreg
