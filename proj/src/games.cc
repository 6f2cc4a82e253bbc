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

#include "polyreg/games.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "polyreg/rng.h"

namespace polyreg {

MaximizerDomain MaximizerDomain::Box(int m, double lo, double hi) {
  MaximizerDomain d{std::vector<double>(m, lo), std::vector<double>(m, hi)};
  d.Validate();
  return d;
}

std::vector<double> MaximizerDomain::Center() const {
  std::vector<double> c(lower.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
  return c;
}

bool MaximizerDomain::Contains(std::span<const double> y) const {
  if (y.size() != lower.size()) return false;
  for (size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] >= lower[i] && y[i] <= upper[i])) return false;
  }
  return true;
}

void MaximizerDomain::Validate() const {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("MaximizerDomain: bound sizes differ");
  }
  for (size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      throw std::invalid_argument("MaximizerDomain: lower > upper");
    }
  }
}

std::vector<int> EpochBoundaries(int rounds, int switches) {
  if (rounds < 1) throw std::invalid_argument("horizon T must be >= 1");
  if (switches < 0 || switches > rounds - 1) {
    throw std::invalid_argument("switch count must lie in [0, T-1], got " +
                                std::to_string(switches) + " for T=" +
                                std::to_string(rounds));
  }
  const int epochs = switches + 1;
  const int base = rounds / epochs;
  const int extra = rounds % epochs;
  std::vector<int> boundaries = {0};
  for (int j = 0; j < epochs; ++j) {
    boundaries.push_back(boundaries.back() + base + (j < extra ? 1 : 0));
  }
  return boundaries;
}

// ---------------------------------------------------------------------------
// Epoch adversary.

ChainLevelPayoff::ChainLevelPayoff(Permutation epoch_perm,
                                   std::vector<int> signs,
                                   double noise_amplitude,
                                   double perturbation_scale, int horizon)
    : perm_(std::move(epoch_perm)),
      position_(perm_.Inverse()),
      signs_(std::move(signs)),
      noise_amplitude_(noise_amplitude),
      level_slope_(perturbation_scale / horizon) {
  if (static_cast<int>(signs_.size()) != perm_.size() + 1) {
    throw std::invalid_argument("ChainLevelPayoff: need n+1 signs");
  }
}

int ChainLevelPayoff::Level(std::span<const int> set) const {
  std::vector<bool> has(perm_.size(), false);
  for (int e : set) has[position_[e]] = true;
  int k = 0;
  while (k < perm_.size() && has[k]) ++k;
  return k;
}

double ChainLevelPayoff::LevelValue(int k, double y) const {
  return noise_amplitude_ * y * signs_[k] + level_slope_ * k;
}

double ChainLevelPayoff::Value(std::span<const int> set,
                               std::span<const double> y) const {
  return LevelValue(Level(set), y[0]);
}

void ChainLevelPayoff::AddGradY(std::span<const int> set,
                                std::span<const double> /*y*/, double scale,
                                std::span<double> out) const {
  out[0] += scale * noise_amplitude_ * signs_[Level(set)];
}

std::vector<double> ChainLevelPayoff::ChainValues(
    const Permutation& pi, std::span<const double> y) const {
  // C_i^pi contains the epoch prefix of length j iff every element of that
  // prefix sits at a position < i in pi.
  const int n = perm_.size();
  const std::vector<int> pos_in_pi = pi.Inverse();
  std::vector<int> reach(n);
  int running = -1;
  for (int j = 0; j < n; ++j) {
    running = std::max(running, pos_in_pi[perm_[j]]);
    reach[j] = running;
  }
  std::vector<double> values(n + 1);
  int k = 0;
  for (int i = 0; i <= n; ++i) {
    while (k < n && reach[k] < i) ++k;
    values[i] = LevelValue(k, y[0]);
  }
  return values;
}

EquilibriumRecord EpochAdversaryEquilibrium(const ChainLevelPayoff& payoff,
                                            const Permutation& epoch_perm) {
  const int n = epoch_perm.size();
  const std::vector<int>& eps = payoff.signs();
  const double a = payoff.noise_amplitude();
  auto level = [&](int k) { return payoff.LevelValue(k, 0.0); };

  // Candidates: pure vertices, then 50/50 mixes of opposite-sign vertices.
  double best = std::numeric_limits<double>::infinity();
  int best_i = -1, best_j = -1;
  for (int i = 0; i <= n; ++i) {
    const double v = std::abs(a) + level(i);
    if (v < best) best = v, best_i = i, best_j = -1;
  }
  for (int i = 0; i <= n; ++i) {
    if (eps[i] != 1) continue;
    for (int j = 0; j <= n; ++j) {
      if (eps[j] != -1) continue;
      const double v = 0.5 * (level(i) + level(j));
      if (v < best) best = v, best_i = i, best_j = j;
    }
  }
  ChainWeights p(n + 1, 0.0);
  if (best_j < 0) {
    p[best_i] = 1.0;
  } else {
    p[best_i] = 0.5;
    p[best_j] = 0.5;
  }

  // Maximizer: argmax over y of the lower envelope min_k f(C_k, y). Only the
  // lowest-level vertex of each sign can be active on that envelope.
  int k_plus = -1, k_minus = -1;
  for (int k = 0; k <= n; ++k) {
    int& slot = eps[k] == 1 ? k_plus : k_minus;
    if (slot < 0 || level(k) < level(slot)) slot = k;
  }
  double y_star = 0.0;
  if (a != 0.0) {
    if (k_plus >= 0 && k_minus >= 0) {
      y_star = (level(k_minus) - level(k_plus)) / (2.0 * a);
      y_star = std::clamp(y_star, -1.0, 1.0);
    } else {
      y_star = (k_plus >= 0 ? 1.0 : -1.0) * (a > 0 ? 1.0 : -1.0);
    }
  }

  EquilibriumRecord record;
  record.x_star = WeightsToThreshold(p, epoch_perm);
  record.y_star = {y_star};
  record.pi_star = epoch_perm;
  record.value = best;
  return record;
}

GameInstance GenEpochAdversary(const EpochAdversaryParams& params) {
  const int n = params.n;
  const int horizon = params.horizon;
  if (n < 3) throw std::invalid_argument("epoch adversary needs n >= 3");
  const std::vector<int> boundaries =
      EpochBoundaries(horizon, params.switches);
  const double c = params.perturbation_scale < 0.0
                       ? 1.0 / n
                       : params.perturbation_scale;
  const double a = params.noise_amplitude;
  if (!std::isfinite(a) || !std::isfinite(c)) {
    throw std::invalid_argument("epoch adversary amplitudes must be finite");
  }

  GameInstance instance;
  instance.rounds.reserve(horizon);
  const MaximizerDomain domain = MaximizerDomain::Box(1, -1.0, 1.0);
  const uint64_t key = HashWords(
      {params.seed, static_cast<uint64_t>(Stream::kPayoff)});
  for (int j = 0; j + 1 < static_cast<int>(boundaries.size()); ++j) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = (i + j) % n;
    Permutation perm(std::move(order));
    instance.schedule.boundaries.push_back(boundaries[j]);
    instance.schedule.cell_permutations.push_back(perm);
    for (int t = boundaries[j]; t < boundaries[j + 1]; ++t) {
      CounterRng rng(HashWords({key, static_cast<uint64_t>(t)}));
      std::vector<int> signs(n + 1);
      for (int& s : signs) s = rng.Rademacher();
      auto payoff = std::make_shared<ChainLevelPayoff>(perm, std::move(signs),
                                                       a, c, horizon);
      GameRound round;
      round.domain = domain;
      round.bound_m = std::abs(a) + std::abs(c) * n / horizon;
      round.lipschitz_y = std::abs(a);
      round.equilibrium = std::make_shared<EquilibriumRecord>(
          EpochAdversaryEquilibrium(*payoff, perm));
      round.payoff = std::move(payoff);
      instance.rounds.push_back(std::move(round));
    }
  }
  instance.schedule.boundaries.push_back(horizon);
  return instance;
}

// ---------------------------------------------------------------------------
// Coverage family.

CoveragePayoff::CoveragePayoff(int n, std::vector<std::vector<int>> covers,
                               std::vector<double> weights)
    : n_(n), covered_by_(n), weights_(std::move(weights)) {
  if (covers.size() != weights_.size()) {
    throw std::invalid_argument("CoveragePayoff: one weight per item");
  }
  for (int u = 0; u < static_cast<int>(covers.size()); ++u) {
    for (int e : covers[u]) {
      if (e < 0 || e >= n) throw std::invalid_argument("cover id out of range");
      covered_by_[e].push_back(u);
    }
  }
}

double CoveragePayoff::Value(std::span<const int> set,
                             std::span<const double> y) const {
  std::vector<char> covered(weights_.size(), 0);
  for (int e : set) {
    for (int u : covered_by_[e]) covered[u] = 1;
  }
  double total = 0.0;
  for (size_t u = 0; u < weights_.size(); ++u) {
    if (covered[u]) total += y[u] * weights_[u];
  }
  return total;
}

void CoveragePayoff::AddGradY(std::span<const int> set,
                              std::span<const double> /*y*/, double scale,
                              std::span<double> out) const {
  std::vector<char> covered(weights_.size(), 0);
  for (int e : set) {
    for (int u : covered_by_[e]) covered[u] = 1;
  }
  for (size_t u = 0; u < weights_.size(); ++u) {
    if (covered[u]) out[u] += scale * weights_[u];
  }
}

std::vector<GameRound> GenCoverageGame(int n, int universe_size, int horizon,
                                       uint64_t seed, double drift) {
  if (n < 1) throw std::invalid_argument("coverage game needs n >= 1");
  if (universe_size < 1) {
    throw std::invalid_argument("coverage game needs universe_size >= 1");
  }
  if (horizon < 1) throw std::invalid_argument("horizon T must be >= 1");
  if (!(drift >= 0.0 && drift <= 1.0)) {
    throw std::invalid_argument("coverage drift must lie in [0, 1]");
  }
  CounterRng rng(seed, Stream::kPayoff);
  std::vector<std::vector<int>> covers(universe_size);
  for (auto& cover : covers) {
    for (int e = 0; e < n; ++e) {
      if (rng.Bernoulli(0.5)) cover.push_back(e);
    }
    if (cover.empty()) cover.push_back(rng.UniformInt(n));
  }
  std::vector<double> start(universe_size), end(universe_size);
  for (double& w : start) w = rng.Uniform(0.1, 1.0);
  for (double& w : end) w = rng.Uniform(0.1, 1.0);

  const MaximizerDomain domain = MaximizerDomain::Box(universe_size, 0.0, 1.0);
  std::vector<GameRound> rounds;
  rounds.reserve(horizon);
  std::shared_ptr<const CoveragePayoff> shared;
  for (int t = 0; t < horizon; ++t) {
    const double lambda =
        horizon > 1 ? drift * t / static_cast<double>(horizon - 1) : 0.0;
    if (shared == nullptr || lambda != 0.0) {
      std::vector<double> w(universe_size);
      for (int u = 0; u < universe_size; ++u) {
        w[u] = (1.0 - lambda) * start[u] + lambda * end[u];
      }
      shared = std::make_shared<CoveragePayoff>(n, covers, std::move(w));
    }
    GameRound round;
    round.payoff = shared;
    round.domain = domain;
    double total = 0.0, norm2 = 0.0;
    for (double w : shared->weights()) total += w, norm2 += w * w;
    round.bound_m = total;
    round.lipschitz_y = std::sqrt(norm2);
    rounds.push_back(std::move(round));
  }
  return rounds;
}

// ---------------------------------------------------------------------------
// Chain-margin family.

ChainMarginPayoff::ChainMarginPayoff(const Permutation& epoch_perm, int pivot,
                                     double gap) {
  const int n = epoch_perm.size();
  if (n < 2 || pivot < 1 || pivot > n - 1) {
    throw std::invalid_argument("ChainMarginPayoff: need 1 <= pivot <= n-1");
  }
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw std::invalid_argument("ChainMarginPayoff: gap must be positive");
  }
  const double slope = gap / n;
  theta_.assign(n, 0.0);
  cardinality_.assign(n + 1, 0.0);
  for (int r = 1; r <= n; ++r) {
    const double theta = (r <= pivot ? -gap : gap) + slope * r;
    // Chain increments are -gap into the pivot level, +gap out of it and 0
    // elsewhere; the cardinality term absorbs the difference. Its increments
    // decrease in r, so the set function is submodular.
    const double chain_step = r == pivot ? -gap : (r == pivot + 1 ? gap : 0.0);
    theta_[epoch_perm[r - 1]] = theta;
    cardinality_[r] = cardinality_[r - 1] + chain_step - theta;
  }
}

double ChainMarginPayoff::Value(std::span<const int> set,
                                std::span<const double> /*y*/) const {
  double total = cardinality_[set.size()];
  for (int e : set) total += theta_[e];
  return total;
}

std::vector<double> ChainMarginPayoff::ChainValues(
    const Permutation& pi, std::span<const double> /*y*/) const {
  const int n = pi.size();
  std::vector<double> values(n + 1);
  double modular = 0.0;
  values[0] = cardinality_[0];
  for (int i = 1; i <= n; ++i) {
    modular += theta_[pi[i - 1]];
    values[i] = modular + cardinality_[i];
  }
  return values;
}

double ChainMarginPayoff::Bound() const {
  std::vector<double> sorted = theta_;
  std::sort(sorted.begin(), sorted.end());
  const int n = static_cast<int>(sorted.size());
  double low = 0.0, high = 0.0, bound = std::abs(cardinality_[0]);
  for (int k = 1; k <= n; ++k) {
    low += sorted[k - 1];
    high += sorted[n - k];
    bound = std::max({bound, std::abs(low + cardinality_[k]),
                      std::abs(high + cardinality_[k])});
  }
  return bound;
}

CellSchedule ParseCellSchedule(const std::string& name) {
  if (name == "adjacent") return CellSchedule::kAdjacent;
  if (name == "rotation") return CellSchedule::kRotation;
  if (name == "random") return CellSchedule::kRandom;
  throw std::invalid_argument("unknown cell schedule '" + name +
                              "' (expected adjacent, rotation or random)");
}

std::string CellScheduleName(CellSchedule schedule) {
  switch (schedule) {
    case CellSchedule::kAdjacent:
      return "adjacent";
    case CellSchedule::kRotation:
      return "rotation";
    case CellSchedule::kRandom:
      return "random";
  }
  return "unknown";
}

GameInstance GenMarginGame(const MarginGameParams& params) {
  const int n = params.n;
  if (n < 2) throw std::invalid_argument("margin game needs n >= 2");
  if (!(params.margin_scale > 0.0) || !std::isfinite(params.margin_scale)) {
    throw std::invalid_argument("margin_scale must be positive");
  }
  const std::vector<int> boundaries =
      EpochBoundaries(params.horizon, params.switches);
  CounterRng rng(params.seed, Stream::kSchedule);
  const int pivot = std::min(
      n - 1, rng.UniformIntInclusive(std::max(1, n / 4), std::max(2, 3 * n / 4)));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);

  GameInstance instance;
  instance.rounds.reserve(params.horizon);
  const MaximizerDomain domain = MaximizerDomain::Box(1, 0.0, 1.0);
  for (int j = 0; j + 1 < static_cast<int>(boundaries.size()); ++j) {
    if (j > 0) {
      switch (params.schedule) {
        case CellSchedule::kAdjacent: {
          const int r = rng.UniformInt(n - 1);
          std::swap(order[r], order[r + 1]);
          break;
        }
        case CellSchedule::kRotation:
          std::rotate(order.begin(), order.begin() + 1, order.end());
          break;
        case CellSchedule::kRandom: {
          const std::vector<int> previous = order;
          while (order == previous) rng.Shuffle(order);
          break;
        }
      }
    }
    const Permutation perm(order);
    const int length = boundaries[j + 1] - boundaries[j];
    const double gap =
        params.margin_scale * std::sqrt(std::log(n + 1.0) / length);
    auto payoff = std::make_shared<ChainMarginPayoff>(perm, pivot, gap);

    auto record = std::make_shared<EquilibriumRecord>();
    record->x_star.assign(n, 0.0);
    for (int r = 0; r < pivot; ++r) record->x_star[perm[r]] = 1.0;
    record->y_star = domain.Center();
    record->pi_star = perm;
    record->value = -gap;

    instance.schedule.boundaries.push_back(boundaries[j]);
    instance.schedule.cell_permutations.push_back(perm);
    GameRound round;
    round.payoff = payoff;
    round.domain = domain;
    round.bound_m = payoff->Bound();
    round.lipschitz_y = 0.0;
    round.equilibrium = record;
    for (int t = boundaries[j]; t < boundaries[j + 1]; ++t) {
      instance.rounds.push_back(round);
    }
  }
  instance.schedule.boundaries.push_back(params.horizon);
  return instance;
}

// ---------------------------------------------------------------------------
// Grid-search saddle oracle.

namespace {

// Points of a box grid with `steps` intervals per coordinate.
std::vector<std::vector<double>> BoxGrid(const MaximizerDomain& domain,
                                         double h) {
  const int m = domain.dim();
  std::vector<int> counts(m);
  for (int i = 0; i < m; ++i) {
    const double width = domain.upper[i] - domain.lower[i];
    counts[i] = width > 0.0 ? static_cast<int>(std::lround(width / h)) : 0;
  }
  std::vector<std::vector<double>> points;
  std::vector<int> idx(m, 0);
  while (true) {
    std::vector<double> y(m);
    for (int i = 0; i < m; ++i) {
      y[i] = counts[i] == 0 ? domain.lower[i]
                            : domain.lower[i] + (domain.upper[i] -
                                                 domain.lower[i]) *
                                                    idx[i] / counts[i];
    }
    points.push_back(std::move(y));
    int i = 0;
    while (i < m && idx[i] == counts[i]) idx[i++] = 0;
    if (i == m) break;
    ++idx[i];
  }
  return points;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  ThresholdPoint x;
  std::vector<double> y;
};

// Max over the y grid of sum_i p[i] * table[i][y], evaluated in telescoped
// form table[0] + sum_i tail_i * (table[i] - table[i-1]) so that a constant
// payoff is reproduced exactly. Returns value and index.
std::pair<double, int> MaxOverY(std::span<const double> p,
                                const std::vector<std::vector<double>>& table,
                                int num_y) {
  std::vector<double> tail(p.size(), 0.0);
  double acc = 0.0;
  for (size_t i = p.size(); i-- > 1;) {
    acc += p[i];
    tail[i] = acc;
  }
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  for (int k = 0; k < num_y; ++k) {
    double v = table[0][k];
    for (size_t i = 1; i < p.size(); ++i) {
      if (tail[i] != 0.0) v += tail[i] * (table[i][k] - table[i - 1][k]);
    }
    if (v > best) best = v, arg = k;
  }
  return {best, arg};
}

void ForEachComposition(int total, int parts, std::vector<int>& current,
                        int index, const auto& visit) {
  if (index == parts - 1) {
    current[index] = total;
    visit(current);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    current[index] = v;
    ForEachComposition(total - v, parts, current, index + 1, visit);
  }
}

std::vector<Permutation> AllPermutations(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Permutation> perms;
  do {
    perms.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return perms;
}

}  // namespace

EquilibriumRecord BruteForceSaddle(const GameRound& round,
                                   const SaddleSearch& search) {
  const SetFunction& f = *round.payoff;
  const int n = f.ground_size();
  if (round.domain.dim() > 2) {
    throw std::invalid_argument("BruteForceSaddle: maximizer dimension m <= 2");
  }
  if (!(search.h > 0.0 && search.h <= 1.0) || !(search.h_y > 0.0)) {
    throw std::invalid_argument("BruteForceSaddle: grid resolutions in (0,1]");
  }
  const std::vector<std::vector<double>> ys = BoxGrid(round.domain, search.h_y);
  const int num_y = static_cast<int>(ys.size());
  const int steps = static_cast<int>(std::lround(1.0 / search.h));
  Best best;

  if (search.mode == SaddleSearchMode::kCube) {
    if (n > 4) throw std::invalid_argument("BruteForceSaddle: cube mode n <= 4");
    // Table of f over all subsets (bitmask) and y grid points.
    std::vector<std::vector<double>> subset_values(1 << n);
    for (int mask = 0; mask < (1 << n); ++mask) {
      ElementSet s;
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) s.push_back(e);
      }
      subset_values[mask].resize(num_y);
      for (int k = 0; k < num_y; ++k) subset_values[mask][k] = f.Value(s, ys[k]);
    }
    std::vector<int> idx(n, 0);
    std::vector<std::vector<double>> table(n + 1);
    while (true) {
      ThresholdPoint x(n);
      for (int e = 0; e < n; ++e) x[e] = static_cast<double>(idx[e]) / steps;
      const Permutation pi = SortPermutation(x);
      const ChainWeights p = ThresholdToWeights(x, pi);
      int mask = 0;
      for (int i = 0; i <= n; ++i) {
        if (i > 0) mask |= 1 << pi[i - 1];
        table[i] = subset_values[mask];
      }
      const auto [value, arg] = MaxOverY(p, table, num_y);
      if (value < best.value) best = {value, x, ys[arg]};
      int e = 0;
      while (e < n && idx[e] == steps) idx[e++] = 0;
      if (e == n) break;
      ++idx[e];
    }
  } else {
    if (n > 10) {
      throw std::invalid_argument("BruteForceSaddle: chain mode n <= 10");
    }
    std::vector<Permutation> perms = search.permutations;
    if (perms.empty()) {
      if (n > 7) {
        throw std::invalid_argument(
            "BruteForceSaddle: supply permutations for n > 7");
      }
      perms = AllPermutations(n);
    }
    for (const Permutation& pi : perms) {
      if (pi.size() != n) {
        throw std::invalid_argument("BruteForceSaddle: permutation size");
      }
      std::vector<std::vector<double>> table(n + 1, std::vector<double>(num_y));
      for (int k = 0; k < num_y; ++k) {
        const std::vector<double> chain = f.ChainValues(pi, ys[k]);
        for (int i = 0; i <= n; ++i) table[i][k] = chain[i];
      }
      std::vector<int> counts(n + 1);
      ChainWeights p(n + 1);
      ForEachComposition(steps, n + 1, counts, 0, [&](const std::vector<int>& c) {
        for (int i = 0; i <= n; ++i) p[i] = static_cast<double>(c[i]) / steps;
        const auto [value, arg] = MaxOverY(p, table, num_y);
        if (value < best.value) {
          best = {value, WeightsToThreshold(p, pi), ys[arg]};
        }
      });
    }
  }

  EquilibriumRecord record;
  record.x_star = best.x;
  record.y_star = best.y;
  record.pi_star = SortPermutation(best.x);
  record.value = best.value;
  return record;
}

EpochSchedule SwitchScheduleOf(std::span<const Permutation> perms) {
  if (perms.empty()) {
    throw std::invalid_argument("SwitchScheduleOf: empty sequence");
  }
  EpochSchedule schedule;
  schedule.boundaries.push_back(0);
  schedule.cell_permutations.push_back(perms[0]);
  for (size_t t = 1; t < perms.size(); ++t) {
    if (!(perms[t] == perms[t - 1])) {
      schedule.boundaries.push_back(static_cast<int>(t));
      schedule.cell_permutations.push_back(perms[t]);
    }
  }
  schedule.boundaries.push_back(static_cast<int>(perms.size()));
  return schedule;
}

EpochSchedule SwitchScheduleOf(std::span<const EquilibriumRecord> records) {
  std::vector<Permutation> perms;
  perms.reserve(records.size());
  for (const EquilibriumRecord& r : records) perms.push_back(r.pi_star);
  return SwitchScheduleOf(perms);
}

EpochSchedule SwitchScheduleOf(const std::vector<GameRound>& rounds) {
  std::vector<Permutation> perms;
  perms.reserve(rounds.size());
  for (const GameRound& r : rounds) {
    if (r.equilibrium == nullptr) {
      throw std::invalid_argument(
          "SwitchScheduleOf: round without equilibrium record");
    }
    perms.push_back(r.equilibrium->pi_star);
  }
  return SwitchScheduleOf(perms);
}

}  // namespace polyreg
