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

// Experiment orchestration: JSON configs, presets, a deterministic parallel
// runner and the results.csv / summary.json / manifest.json writers.

#ifndef POLYREG_EXPERIMENT_H_
#define POLYREG_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace polyreg {

struct ExperimentConfig {
  std::string experiment = "custom";
  // chain_margin | epoch_adversary | shortest_path
  std::string game = "chain_margin";
  std::vector<int> sizes;  // n for Lovász games, k for shortest_path
  int horizon = 10000;
  std::vector<int> targets;
  std::vector<std::string> algorithms;
  std::vector<uint64_t> seeds;
  std::optional<double> eta_x;
  std::optional<double> eta_y;
  std::vector<double> alphas = {0.01};
  double fixed_share_beta = 0.01;
  std::string restart_policy = "adaptive";  // adaptive | none | periodic | random
  int restart_period = 100;
  double restart_rate = 0.01;
  // chain_margin
  double margin_scale = 1.5;
  std::string cell_schedule = "adjacent";
  // epoch_adversary
  double noise_amplitude = 1.0;
  double perturbation_scale = -1.0;  // negative: 1/n
  // shortest_path
  double path_margin = 0.03;
  double path_noise = 0.0;
  std::string designation = "flip";
  // Accepted for protocol parity; no in-scope generator is stochastic.
  int monte_carlo = 50;
  std::string output_dir = "results";
};

// One (size, algorithm, seed, target) run.
struct RunRow {
  std::string experiment;
  std::string algo;
  uint64_t seed = 0;
  int n_or_k = 0;
  int horizon = 0;
  int target_switches = 0;
  int observed_switches = 0;
  int oracle_switches = 0;
  double cum_regret = 0.0;
  double avg_regret = 0.0;
  double struct_norm = 0.0;
  double cont_norm = 0.0;
  // Not serialized: best responses replayed from the logged y_t.
  int sc_br_offline = 0;
};

struct RunRecord {
  std::string config_hash;
  std::vector<RunRow> rows;  // sorted
  nlohmann::json summary;
};

std::vector<std::string> PresetNames();
ExperimentConfig PresetConfig(const std::string& name);

// Strict parse: unknown keys and wrong types are errors.
ExperimentConfig ParseConfig(const nlohmann::json& j);
ExperimentConfig LoadConfig(const std::filesystem::path& path);
nlohmann::json ConfigToJson(const ExperimentConfig& config);
// Throws std::invalid_argument describing the first problem found.
void ValidateConfig(const ExperimentConfig& config);
std::string ConfigHash(const ExperimentConfig& config);

// Worker cap: hardware concurrency, lowered by POLYREG_THREADS when set.
int ThreadBudget();

// Runs every (size, algorithm, seed, target) task. `threads` <= 0 uses
// ThreadBudget(). Results do not depend on the thread count.
RunRecord RunExperiment(const ExperimentConfig& config, int threads = 0);

std::string FormatCsv(const std::vector<RunRow>& rows);
std::vector<RunRow> ParseCsv(const std::string& text);

nlohmann::json Summarize(const std::vector<RunRow>& rows);
nlohmann::json BuildManifest(const ExperimentConfig& config,
                             const RunRecord& record);

// Writes results.csv, summary.json and manifest.json into `dir` through
// temporary files and atomic renames.
void WriteOutputs(const ExperimentConfig& config, const RunRecord& record,
                  const std::filesystem::path& dir);

// Atomic single-file write (temp file in the same directory, then rename).
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents);

}  // namespace polyreg

#endif  // POLYREG_EXPERIMENT_H_
