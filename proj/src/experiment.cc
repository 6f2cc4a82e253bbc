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

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>
#include <tuple>

#include "polyreg/games.h"
#include "polyreg/learners.h"
#include "polyreg/metrics.h"
#include "polyreg/pathgame.h"
#include "polyreg/rng.h"

namespace polyreg {
namespace {

using nlohmann::json;

constexpr char kVersion[] = "1.0.0";
constexpr char kCsvHeader[] =
    "experiment,algo,seed,n_or_k,T,target_switches,observed_switches,"
    "oracle_switches,cum_regret,avg_regret,struct_norm,cont_norm";

const std::vector<std::string>& LovaszAlgorithms() {
  static const std::vector<std::string> names = {
      "camw_cold", "camw_ws", "camw_geometric", "olmda", "ogd", "fixed_share"};
  return names;
}

const std::vector<std::string>& PathAlgorithms() {
  static const std::vector<std::string> names = {"mw_restarts", "ogd_fw"};
  return names;
}

bool IsPathGame(const ExperimentConfig& c) { return c.game == "shortest_path"; }

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Shortest round-trip decimal form; independent of the global locale.
std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct AlgoSpec {
  std::string base;
  double alpha = 0.01;
  std::string label;
};

std::vector<AlgoSpec> ExpandAlgorithms(const ExperimentConfig& c) {
  std::vector<AlgoSpec> specs;
  for (const std::string& name : c.algorithms) {
    const bool uses_alpha = name == "camw_ws" || name == "camw_geometric";
    if (uses_alpha && c.alphas.size() > 1) {
      for (double a : c.alphas) {
        specs.push_back({name, a, name + "[alpha=" + FormatDouble(a) + "]"});
      }
    } else {
      specs.push_back({name, c.alphas.front(), name});
    }
  }
  return specs;
}

RestartPolicy MakeRestartPolicy(const ExperimentConfig& c, uint64_t seed) {
  if (c.restart_policy == "adaptive") return RestartPolicy::Adaptive();
  if (c.restart_policy == "none") return RestartPolicy::None();
  if (c.restart_policy == "periodic") {
    return RestartPolicy::Periodic(c.restart_period);
  }
  return RestartPolicy::Random(c.restart_rate, seed);
}

GameInstance MakeLovaszInstance(const ExperimentConfig& c, int n, int target,
                                uint64_t seed) {
  if (c.game == "epoch_adversary") {
    EpochAdversaryParams p;
    p.n = n;
    p.horizon = c.horizon;
    p.switches = target;
    p.noise_amplitude = c.noise_amplitude;
    p.perturbation_scale = c.perturbation_scale;
    p.seed = seed;
    return GenEpochAdversary(p);
  }
  MarginGameParams p;
  p.n = n;
  p.horizon = c.horizon;
  p.switches = target;
  p.margin_scale = c.margin_scale;
  p.schedule = ParseCellSchedule(c.cell_schedule);
  p.seed = seed;
  return GenMarginGame(p);
}

std::unique_ptr<Learner> MakeLearner(const ExperimentConfig& c,
                                     const AlgoSpec& spec, int n,
                                     const MaximizerDomain& domain,
                                     uint64_t seed) {
  StepSizes steps = StepSizes::Defaults(n, c.horizon);
  if (c.eta_x) steps.eta_x = *c.eta_x;
  if (c.eta_y) steps.eta_y = *c.eta_y;
  const RestartPolicy policy = MakeRestartPolicy(c, seed);
  if (spec.base == "camw_cold") {
    return std::make_unique<CamwLearner>(n, domain, steps, CamwVariant::kCold,
                                         spec.alpha, policy);
  }
  if (spec.base == "camw_ws") {
    return std::make_unique<CamwLearner>(
        n, domain, steps, CamwVariant::kWarmUniformFloor, spec.alpha, policy);
  }
  if (spec.base == "camw_geometric") {
    return std::make_unique<CamwLearner>(
        n, domain, steps, CamwVariant::kGeometric, spec.alpha, policy);
  }
  if (spec.base == "olmda") {
    return std::make_unique<ContinuousLearner>(ContinuousLearner::Kind::kOlmda,
                                               n, domain, steps);
  }
  if (spec.base == "ogd") {
    return std::make_unique<ContinuousLearner>(ContinuousLearner::Kind::kOgd, n,
                                               domain, steps);
  }
  if (spec.base == "fixed_share") {
    return std::make_unique<FixedShareLearner>(n, domain, steps,
                                               c.fixed_share_beta);
  }
  throw std::invalid_argument("unknown algorithm " + spec.base);
}

bool IsCellAware(const std::string& base) {
  return base.rfind("camw", 0) == 0 || base == "fixed_share";
}

RunRow RunLovaszTask(const ExperimentConfig& c, const AlgoSpec& spec, int n,
                     uint64_t seed, int target) {
  const GameInstance instance = MakeLovaszInstance(c, n, target, seed);
  std::unique_ptr<Learner> learner =
      MakeLearner(c, spec, n, instance.rounds.front().domain, seed);
  RegretTrace trace;
  int cell_changes = 0, br_changes = 0;
  std::optional<Permutation> last_cell, last_br;
  for (const GameRound& round : instance.rounds) {
    const Play play = learner->Step(round);
    trace.Append(SaddleRegretIncrement(round, play.x, play.y));
    Permutation br = BrPermutation(*round.payoff, play.y);
    if (last_br && !(br == *last_br)) ++br_changes;
    last_br = std::move(br);
    if (!IsCellAware(spec.base)) {
      Permutation cell = SortPermutation(play.x);
      if (last_cell && !(cell == *last_cell)) ++cell_changes;
      last_cell = std::move(cell);
    }
  }
  RunRow row;
  row.experiment = c.experiment;
  row.algo = spec.label;
  row.seed = seed;
  row.n_or_k = n;
  row.horizon = c.horizon;
  row.target_switches = target;
  row.observed_switches =
      IsCellAware(spec.base) ? learner->observed_switches() : cell_changes;
  row.oracle_switches = instance.schedule.interior_switches();
  row.cum_regret = trace.total();
  row.avg_regret = trace.average();
  row.struct_norm = TheoryNormalize(row.avg_regret, row.oracle_switches, n,
                                    c.horizon, NormalizeMode::kStruct);
  row.cont_norm = TheoryNormalize(row.avg_regret, row.oracle_switches, n,
                                  c.horizon, NormalizeMode::kCont, n);
  row.sc_br_offline = br_changes;
  return row;
}

RunRow RunPathTask(const ExperimentConfig& c, const AlgoSpec& spec, int k,
                   uint64_t seed, int target) {
  const GridDag dag(k);
  const PathSet paths = EnumeratePaths(dag);
  PathLossParams params;
  params.horizon = c.horizon;
  params.rs_target = target;
  params.margin = c.path_margin;
  params.noise_amplitude = c.path_noise;
  params.designation = ParseDesignation(c.designation);
  params.seed = seed;
  const PathLossSchedule schedule = GenPathLosses(dag, params);

  const double mw_eta =
      c.eta_x ? *c.eta_x
              : std::sqrt(std::log(static_cast<double>(paths.size())) /
                          c.horizon);
  std::optional<MwRestartsLearner> mw;
  std::optional<OgdFwLearner> fw;
  if (spec.base == "mw_restarts") {
    mw.emplace(dag, paths, mw_eta);
  } else {
    fw.emplace(dag, c.horizon, c.eta_y.value_or(0.0));
  }
  RegretTrace trace;
  int rs = 0, previous = -1;
  for (int t = 0; t < c.horizon; ++t) {
    const std::vector<double> costs = schedule.Costs(t);
    const FlowPoint z = mw ? mw->Step(costs) : fw->Step(costs);
    int arg = -1;
    trace.Append(PathRegretIncrement(costs, z, paths, &arg));
    if (previous >= 0 && arg != previous) ++rs;
    previous = arg;
  }
  RunRow row;
  row.experiment = c.experiment;
  row.algo = spec.label;
  row.seed = seed;
  row.n_or_k = k;
  row.horizon = c.horizon;
  row.target_switches = target;
  row.observed_switches = mw ? mw->restarts() : rs;
  row.oracle_switches = static_cast<int>(schedule.designated().size()) - 1;
  row.cum_regret = trace.total();
  row.avg_regret = trace.average();
  row.struct_norm = TheoryNormalize(row.avg_regret, row.oracle_switches,
                                    paths.size(), c.horizon,
                                    NormalizeMode::kStruct);
  row.cont_norm = TheoryNormalize(row.avg_regret, row.oracle_switches,
                                  paths.size(), c.horizon, NormalizeMode::kCont,
                                  dag.num_edges());
  row.sc_br_offline = rs;
  return row;
}

bool RowLess(const RunRow& a, const RunRow& b) {
  return std::tie(a.n_or_k, a.algo, a.target_switches, a.seed) <
         std::tie(b.n_or_k, b.algo, b.target_switches, b.seed);
}

// --- JSON helpers ----------------------------------------------------------

template <typename T>
T Get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument("config key '" + key + "': " + e.what());
  }
}

template <typename T>
std::vector<T> GetScalarOrList(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_array()) return Get<std::vector<T>>(j, key);
  return {Get<T>(j, key)};
}

void WriteStream(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::vector<std::string> PresetNames() {
  return {"stability_sweep", "dimension_scaling", "shortest_path",
          "transfer_floor", "custom"};
}

ExperimentConfig PresetConfig(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.output_dir = "results/" + name;
  const std::vector<uint64_t> ten = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  if (name == "stability_sweep") {
    c.sizes = {20};
    c.horizon = 10000;
    c.targets = {0, 1, 5, 20, 50, 200, 1000, 5000, 9999};
    c.algorithms = LovaszAlgorithms();
    c.seeds = ten;
  } else if (name == "dimension_scaling") {
    c.sizes = {10, 20, 50, 100, 200};
    c.horizon = 20000;
    c.targets = {0};
    c.algorithms = {"camw_cold", "olmda", "ogd"};
    c.seeds = {0, 1, 2, 3, 4};
  } else if (name == "shortest_path") {
    c.game = "shortest_path";
    c.sizes = {5, 6, 8};
    c.horizon = 20000;
    c.targets = {2, 5, 10, 20, 50};
    c.algorithms = PathAlgorithms();
    c.seeds = ten;
  } else if (name == "transfer_floor") {
    c.sizes = {50};
    c.horizon = 10000;
    c.targets = {10};
    c.algorithms = {"camw_cold", "camw_ws", "camw_geometric"};
    c.alphas = {0.001, 0.003, 0.01, 0.03, 0.1, 0.3};
    c.seeds = ten;
  } else if (name != "custom") {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

ExperimentConfig ParseConfig(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "experiment",      "game",          "n",
      "k",               "T",             "targets",
      "algorithms",      "seeds",         "eta_x",
      "eta_y",           "alpha",         "fixed_share_beta",
      "restart_policy",  "restart_period", "restart_rate",
      "margin_scale",    "cell_schedule", "noise_amplitude",
      "perturbation_scale", "path_margin", "path_noise",
      "designation",     "monte_carlo",   "output_dir"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  const std::string experiment =
      j.contains("experiment") ? Get<std::string>(j, "experiment") : "custom";
  ExperimentConfig c = PresetConfig(experiment);
  if (j.contains("game")) c.game = Get<std::string>(j, "game");
  if (j.contains("n") && j.contains("k")) {
    throw std::invalid_argument("config sets both 'n' and 'k'");
  }
  if (j.contains("n")) c.sizes = GetScalarOrList<int>(j, "n");
  if (j.contains("k")) c.sizes = GetScalarOrList<int>(j, "k");
  if (j.contains("k") != IsPathGame(c) && (j.contains("n") || j.contains("k"))) {
    throw std::invalid_argument(
        "use 'k' for shortest_path and 'n' for Lovász games");
  }
  if (j.contains("T")) c.horizon = Get<int>(j, "T");
  if (j.contains("targets")) c.targets = GetScalarOrList<int>(j, "targets");
  if (j.contains("algorithms")) {
    c.algorithms = Get<std::vector<std::string>>(j, "algorithms");
  }
  if (j.contains("seeds")) c.seeds = GetScalarOrList<uint64_t>(j, "seeds");
  if (j.contains("eta_x")) c.eta_x = Get<double>(j, "eta_x");
  if (j.contains("eta_y")) c.eta_y = Get<double>(j, "eta_y");
  if (j.contains("alpha")) c.alphas = GetScalarOrList<double>(j, "alpha");
  if (j.contains("fixed_share_beta")) {
    c.fixed_share_beta = Get<double>(j, "fixed_share_beta");
  }
  if (j.contains("restart_policy")) {
    c.restart_policy = Get<std::string>(j, "restart_policy");
  }
  if (j.contains("restart_period")) c.restart_period = Get<int>(j, "restart_period");
  if (j.contains("restart_rate")) c.restart_rate = Get<double>(j, "restart_rate");
  if (j.contains("margin_scale")) c.margin_scale = Get<double>(j, "margin_scale");
  if (j.contains("cell_schedule")) {
    c.cell_schedule = Get<std::string>(j, "cell_schedule");
  }
  if (j.contains("noise_amplitude")) {
    c.noise_amplitude = Get<double>(j, "noise_amplitude");
  }
  if (j.contains("perturbation_scale")) {
    c.perturbation_scale = Get<double>(j, "perturbation_scale");
  }
  if (j.contains("path_margin")) c.path_margin = Get<double>(j, "path_margin");
  if (j.contains("path_noise")) c.path_noise = Get<double>(j, "path_noise");
  if (j.contains("designation")) c.designation = Get<std::string>(j, "designation");
  if (j.contains("monte_carlo")) c.monte_carlo = Get<int>(j, "monte_carlo");
  if (j.contains("output_dir")) c.output_dir = Get<std::string>(j, "output_dir");
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path.string() +
                                " is not valid JSON: " + e.what());
  }
  // A manifest.json from an earlier run is accepted as a config.
  if (j.is_object() && j.contains("tool") && j.contains("config")) {
    return ParseConfig(j.at("config"));
  }
  return ParseConfig(j);
}

json ConfigToJson(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["game"] = c.game;
  j[IsPathGame(c) ? "k" : "n"] = c.sizes;
  j["T"] = c.horizon;
  j["targets"] = c.targets;
  j["algorithms"] = c.algorithms;
  j["seeds"] = c.seeds;
  if (c.eta_x) j["eta_x"] = *c.eta_x;
  if (c.eta_y) j["eta_y"] = *c.eta_y;
  j["alpha"] = c.alphas;
  j["fixed_share_beta"] = c.fixed_share_beta;
  j["restart_policy"] = c.restart_policy;
  j["restart_period"] = c.restart_period;
  j["restart_rate"] = c.restart_rate;
  j["margin_scale"] = c.margin_scale;
  j["cell_schedule"] = c.cell_schedule;
  j["noise_amplitude"] = c.noise_amplitude;
  j["perturbation_scale"] = c.perturbation_scale;
  j["path_margin"] = c.path_margin;
  j["path_noise"] = c.path_noise;
  j["designation"] = c.designation;
  j["monte_carlo"] = c.monte_carlo;
  j["output_dir"] = c.output_dir;
  return j;
}

void ValidateConfig(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument(msg);
  };
  if (!Contains(PresetNames(), c.experiment)) {
    fail("unknown experiment '" + c.experiment + "'");
  }
  if (c.game != "chain_margin" && c.game != "epoch_adversary" &&
      c.game != "shortest_path") {
    fail("unknown game '" + c.game +
         "' (expected chain_margin, epoch_adversary or shortest_path)");
  }
  if (c.horizon < 1) fail("T must be >= 1");
  if (c.sizes.empty()) fail(IsPathGame(c) ? "k list is empty" : "n list is empty");
  for (int s : c.sizes) {
    if (IsPathGame(c)) {
      if (s < 2 || s > kMaxEnumerableK) {
        fail("k must lie in [2, " + std::to_string(kMaxEnumerableK) + "]");
      }
    } else if (s < (c.game == "epoch_adversary" ? 3 : 2)) {
      fail("n too small for game " + c.game);
    }
  }
  if (c.targets.empty()) fail("targets list is empty");
  for (int t : c.targets) {
    if (t < 0 || t > c.horizon - 1) {
      fail("target " + std::to_string(t) + " outside [0, T-1]");
    }
  }
  const auto& valid = IsPathGame(c) ? PathAlgorithms() : LovaszAlgorithms();
  for (const std::string& a : c.algorithms) {
    if (!Contains(valid, a)) {
      fail("algorithm '" + a + "' not available for game " + c.game);
    }
  }
  if (c.seeds.empty()) fail("seed list is empty");
  if (c.eta_x && !(*c.eta_x > 0.0)) fail("eta_x must be > 0");
  if (c.eta_y && !(*c.eta_y > 0.0)) fail("eta_y must be > 0");
  if (c.alphas.empty()) fail("alpha list is empty");
  for (double a : c.alphas) {
    if (!(a >= 1e-6 && a <= 1.0)) fail("alpha must lie in [1e-6, 1]");
  }
  if (!(c.fixed_share_beta >= 0.0 && c.fixed_share_beta <= 1.0)) {
    fail("fixed_share_beta must lie in [0, 1]");
  }
  if (c.restart_policy != "adaptive" && c.restart_policy != "none" &&
      c.restart_policy != "periodic" && c.restart_policy != "random") {
    fail("restart_policy must be adaptive, none, periodic or random");
  }
  if (c.restart_period < 1) fail("restart_period must be >= 1");
  if (!(c.restart_rate >= 0.0 && c.restart_rate <= 1.0)) {
    fail("restart_rate must lie in [0, 1]");
  }
  if (!(c.margin_scale > 0.0)) fail("margin_scale must be > 0");
  ParseCellSchedule(c.cell_schedule);
  if (!std::isfinite(c.noise_amplitude) || !std::isfinite(c.perturbation_scale)) {
    fail("epoch adversary amplitudes must be finite");
  }
  ParseDesignation(c.designation);
  if (IsPathGame(c)) {
    const double m = c.path_margin, noise = c.path_noise;
    if (!(m > 0.0) || !(noise >= 0.0) || !(4.0 * noise <= m) ||
        !(m + noise <= 0.5)) {
      fail("path_margin/path_noise infeasible: need margin > 0, "
           "0 <= noise <= margin/4, margin + noise <= 0.5");
    }
  }
  if (c.monte_carlo < 1) fail("monte_carlo must be >= 1");
}

std::string ConfigHash(const ExperimentConfig& config) {
  // The output location does not affect results.
  json j = ConfigToJson(config);
  j.erase("output_dir");
  const std::string text = j.dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) h = (h ^ ch) * 0x100000001b3ULL;
  h = Mix64(h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int ThreadBudget() {
  int budget = static_cast<int>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  if (const char* env = std::getenv("POLYREG_THREADS")) {
    int cap = 0;
    const char* end = env + std::strlen(env);
    const auto res = std::from_chars(env, end, cap);
    if (res.ec != std::errc() || res.ptr != end || cap < 1) {
      throw std::invalid_argument("POLYREG_THREADS must be a positive integer");
    }
    budget = std::min(budget, cap);
  }
  return budget;
}

RunRecord RunExperiment(const ExperimentConfig& config, int threads) {
  ValidateConfig(config);
  struct Task {
    AlgoSpec spec;
    int size;
    uint64_t seed;
    int target;
  };
  std::vector<Task> tasks;
  for (int size : config.sizes) {
    for (const AlgoSpec& spec : ExpandAlgorithms(config)) {
      for (uint64_t seed : config.seeds) {
        for (int target : config.targets) {
          tasks.push_back({spec, size, seed, target});
        }
      }
    }
  }
  RunRecord record;
  record.config_hash = ConfigHash(config);
  record.rows.resize(tasks.size());

  const int workers = std::max(
      1, std::min<int>(threads > 0 ? threads : ThreadBudget(),
                       static_cast<int>(tasks.size())));
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const Task& t = tasks[i];
        record.rows[i] =
            IsPathGame(config)
                ? RunPathTask(config, t.spec, t.size, t.seed, t.target)
                : RunLovaszTask(config, t.spec, t.size, t.seed, t.target);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  if (!tasks.empty()) {
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  std::sort(record.rows.begin(), record.rows.end(), RowLess);
  record.summary = Summarize(record.rows);
  return record;
}

std::string FormatCsv(const std::vector<RunRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RunRow& r : rows) {
    out += r.experiment + ',' + r.algo + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.n_or_k) + ',' + std::to_string(r.horizon) + ',' +
           std::to_string(r.target_switches) + ',' +
           std::to_string(r.observed_switches) + ',' +
           std::to_string(r.oracle_switches) + ',' + FormatDouble(r.cum_regret) +
           ',' + FormatDouble(r.avg_regret) + ',' +
           FormatDouble(r.struct_norm) + ',' + FormatDouble(r.cont_norm) + '\n';
  }
  return out;
}

std::vector<RunRow> ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("results.csv: unexpected header");
  }
  std::vector<RunRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 12) {
      throw std::invalid_argument("results.csv line " + std::to_string(line_no) +
                                  ": expected 12 fields");
    }
    auto num = [&](const std::string& s, auto& out) {
      const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("results.csv line " +
                                    std::to_string(line_no) + ": bad number '" +
                                    s + "'");
      }
    };
    RunRow r;
    r.experiment = f[0];
    r.algo = f[1];
    num(f[2], r.seed);
    num(f[3], r.n_or_k);
    num(f[4], r.horizon);
    num(f[5], r.target_switches);
    num(f[6], r.observed_switches);
    num(f[7], r.oracle_switches);
    num(f[8], r.cum_regret);
    num(f[9], r.avg_regret);
    num(f[10], r.struct_norm);
    num(f[11], r.cont_norm);
    rows.push_back(std::move(r));
  }
  return rows;
}

json Summarize(const std::vector<RunRow>& rows) {
  json summary;
  summary["experiment"] = rows.empty() ? json(nullptr) : json(rows[0].experiment);
  summary["rows"] = rows.size();

  // (algo, size) -> target -> row pointers.
  std::map<std::pair<std::string, int>, std::map<int, std::vector<const RunRow*>>>
      groups;
  for (const RunRow& r : rows) {
    groups[{r.algo, r.n_or_k}][r.target_switches].push_back(&r);
  }
  auto column_mean = [](const std::vector<const RunRow*>& v, auto member) {
    std::vector<double> vals;
    for (const RunRow* r : v) vals.push_back(r->*member);
    return Mean(vals);
  };

  json group_list = json::array();
  // algo -> target -> size -> (struct mean, cont mean)
  std::map<std::string, std::map<int, std::map<int, std::pair<double, double>>>>
      by_size;
  for (const auto& [key, per_target] : groups) {
    json g;
    g["algo"] = key.first;
    g["n_or_k"] = key.second;
    std::vector<double> xs, means, stds, structs, conts;
    for (const auto& [target, v] : per_target) {
      std::vector<double> avg;
      for (const RunRow* r : v) avg.push_back(r->avg_regret);
      xs.push_back(1.0 + target);
      means.push_back(Mean(avg));
      stds.push_back(SampleStddev(avg));
      structs.push_back(column_mean(v, &RunRow::struct_norm));
      conts.push_back(column_mean(v, &RunRow::cont_norm));
      by_size[key.first][target][key.second] = {structs.back(), conts.back()};
    }
    json targets = json::array();
    for (double x : xs) targets.push_back(static_cast<int>(x - 1.0));
    g["targets"] = targets;
    g["mean_avg_regret"] = means;
    g["std_avg_regret"] = stds;
    g["mean_struct_norm"] = structs;
    g["mean_cont_norm"] = conts;
    const bool positive = std::all_of(means.begin(), means.end(),
                                      [](double m) { return m > 0.0; });
    if (xs.size() < 3) {
      g["loglog_slope"] = nullptr;
      g["slope_omitted_reason"] = "fewer than 3 targets";
    } else if (!positive) {
      g["loglog_slope"] = nullptr;
      g["slope_omitted_reason"] = "nonpositive mean regret";
    } else {
      g["loglog_slope"] = LoglogSlope(xs, means);
    }
    auto cv_or_null = [](const std::vector<double>& v) -> json {
      if (Mean(v) == 0.0) return nullptr;
      return CoeffVariation(v);
    };
    g["cv_struct_norm"] = cv_or_null(structs);
    g["cv_cont_norm"] = cv_or_null(conts);
    group_list.push_back(std::move(g));
  }
  summary["groups"] = group_list;

  json sweeps = json::array();
  for (const auto& [algo, per_target] : by_size) {
    for (const auto& [target, per_size] : per_target) {
      if (per_size.size() < 2) continue;
      std::vector<double> structs, conts;
      json sizes = json::array();
      for (const auto& [size, v] : per_size) {
        sizes.push_back(size);
        structs.push_back(v.first);
        conts.push_back(v.second);
      }
      json s;
      s["algo"] = algo;
      s["target"] = target;
      s["sizes"] = sizes;
      s["cv_struct_norm"] = CoeffVariation(structs);
      s["cv_cont_norm"] = CoeffVariation(conts);
      sweeps.push_back(std::move(s));
    }
  }
  summary["size_sweeps"] = sweeps;

  json crossovers = json::array();
  std::set<int> ks;
  for (const auto& [key, unused] : groups) ks.insert(key.second);
  for (int k : ks) {
    const auto mw = groups.find({"mw_restarts", k});
    const auto fw = groups.find({"ogd_fw", k});
    if (mw == groups.end() || fw == groups.end()) continue;
    json c;
    c["k"] = k;
    std::vector<double> targets, ratios;
    json crossing = nullptr;
    for (const auto& [target, v] : mw->second) {
      const auto it = fw->second.find(target);
      if (it == fw->second.end()) continue;
      const double ratio = column_mean(v, &RunRow::avg_regret) /
                           column_mean(it->second, &RunRow::avg_regret);
      targets.push_back(target);
      ratios.push_back(ratio);
      if (crossing.is_null() && ratio > 1.0) crossing = target;
    }
    json target_list = json::array();
    for (double t : targets) target_list.push_back(static_cast<int>(t));
    c["targets"] = target_list;
    c["mw_over_fw_ratio"] = ratios;
    c["crossover_target"] = crossing;
    c["spearman"] = targets.size() >= 2 ? json(SpearmanCorrelation(targets, ratios))
                                        : json(nullptr);
    const int d = 2 * k * (k - 1);
    double paths = 1.0;
    for (int i = 1; i <= k - 1; ++i) paths = paths * (k - 1 + i) / i;
    c["theory_threshold"] = d / std::log(paths);
    crossovers.push_back(std::move(c));
  }
  summary["crossover"] = crossovers;
  return summary;
}

json BuildManifest(const ExperimentConfig& config, const RunRecord& record) {
  json m;
  m["tool"] = "polyreg";
  m["version"] = kVersion;
  m["config"] = ConfigToJson(config);
  m["config_hash"] = record.config_hash;
  m["rows"] = record.rows.size();
  m["files"] = {"results.csv", "summary.json", "manifest.json"};
  m["rng"] =
      "counter-based SplitMix64 streams keyed by (seed, stream id, round)";
  m["instances"] =
      IsPathGame(config)
          ? "regenerated from (k, T, target, path_margin, path_noise, "
            "designation, seed)"
          : "regenerated from (game, n, T, target, game parameters, seed)";
  json notes = json::array();
  if (config.experiment == "dimension_scaling") {
    notes.push_back("reference protocol also uses n = 500, 1000; desk-scale "
                    "cap n <= 200");
  }
  if (config.experiment == "shortest_path") {
    notes.push_back("reference protocol uses k up to 12, T = 50000 and RS up "
                    "to 200; desk-scale cap k <= 8, T = 20000, RS <= 50");
  }
  if (config.horizon > 50000) {
    notes.push_back("T exceeds the desk-scale default cap of 50000");
  }
  m["desk_scale_notes"] = notes;
  return m;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  WriteStream(tmp, contents);
  std::filesystem::rename(tmp, path);
}

void WriteOutputs(const ExperimentConfig& config, const RunRecord& record,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"results.csv", FormatCsv(record.rows)},
      {"summary.json", record.summary.dump(2) + "\n"},
      {"manifest.json", BuildManifest(config, record).dump(2) + "\n"},
  };
  // Stage everything first so a failure leaves no partial output behind.
  std::vector<std::filesystem::path> staged;
  try {
    for (const auto& [name, data] : files) {
      std::filesystem::path tmp = dir / ("." + name + ".tmp");
      WriteStream(tmp, data);
      staged.push_back(tmp);
    }
  } catch (...) {
    for (const auto& p : staged) std::filesystem::remove(p);
    throw;
  }
  for (size_t i = 0; i < files.size(); ++i) {
    std::filesystem::rename(staged[i], dir / files[i].first);
  }
}

}  // namespace polyreg
