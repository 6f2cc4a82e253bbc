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

// polyreg command line: run, preset, validate and summarize.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyreg/experiment.h"

namespace {

int RunAndWrite(const polyreg::ExperimentConfig& config,
                const std::filesystem::path& out) {
  polyreg::ValidateConfig(config);
  const polyreg::RunRecord record = polyreg::RunExperiment(config);
  polyreg::WriteOutputs(config, record, out);
  std::cout << "wrote " << record.rows.size() << " rows to " << out.string()
            << " (config " << record.config_hash << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switching-regret experiments over Lovász extensions and "
               "shortest paths"};
  app.require_subcommand(1);

  std::string run_config;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("config", run_config, "Config file (or an earlier manifest.json)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory (overrides output_dir)");

  std::string preset_name;
  std::vector<uint64_t> preset_seeds;
  std::string preset_out;
  CLI::App* preset = app.add_subcommand("preset", "Run a named preset");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember({"stability_sweep", "dimension_scaling",
                             "shortest_path", "transfer_floor"}));
  preset->add_option("--seeds", preset_seeds, "Comma-separated seeds")
      ->delimiter(',');
  preset->add_option("--out", preset_out, "Output directory");

  std::string validate_config;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", validate_config, "Config file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string summarize_dir;
  CLI::App* summarize = app.add_subcommand(
      "summarize", "Recompute summary.json from a results directory");
  summarize->add_option("results_dir", summarize_dir, "Directory with results.csv")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const polyreg::ExperimentConfig config = polyreg::LoadConfig(run_config);
      return RunAndWrite(config, run_out.empty() ? config.output_dir : run_out);
    }
    if (*preset) {
      polyreg::ExperimentConfig config = polyreg::PresetConfig(preset_name);
      if (!preset_seeds.empty()) config.seeds = preset_seeds;
      if (!preset_out.empty()) config.output_dir = preset_out;
      return RunAndWrite(config, config.output_dir);
    }
    if (*validate) {
      const polyreg::ExperimentConfig config =
          polyreg::LoadConfig(validate_config);
      polyreg::ValidateConfig(config);
      std::cout << "ok " << polyreg::ConfigHash(config) << "\n";
      return 0;
    }
    if (*summarize) {
      const std::filesystem::path dir = summarize_dir;
      std::ifstream in(dir / "results.csv", std::ios::binary);
      if (!in) throw std::runtime_error("no results.csv in " + dir.string());
      std::stringstream buffer;
      buffer << in.rdbuf();
      const auto rows = polyreg::ParseCsv(buffer.str());
      const std::string text = polyreg::Summarize(rows).dump(2) + "\n";
      polyreg::WriteFileAtomic(dir / "summary.json", text);
      std::cout << text;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
