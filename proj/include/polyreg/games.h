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

// Game rounds, instance generators with a designed number of cell switches,
// and a grid-search saddle oracle for tiny instances.

#ifndef POLYREG_GAMES_H_
#define POLYREG_GAMES_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "polyreg/lovasz.h"

namespace polyreg {

// Box [lower, upper] of the maximizer.
struct MaximizerDomain {
  std::vector<double> lower;
  std::vector<double> upper;

  static MaximizerDomain Box(int m, double lo, double hi);
  int dim() const { return static_cast<int>(lower.size()); }
  std::vector<double> Center() const;
  bool Contains(std::span<const double> y) const;
  void Validate() const;
};

struct EquilibriumRecord {
  ThresholdPoint x_star;
  std::vector<double> y_star;
  Permutation pi_star;
  double value = 0.0;
};

struct GameRound {
  std::shared_ptr<const SetFunction> payoff;
  MaximizerDomain domain;
  double bound_m = 0.0;      // sup |f(S, y)|
  double lipschitz_y = 0.0;  // sup ||d/dy f(S, y)||_2
  // Null when the family has no closed-form saddle point.
  std::shared_ptr<const EquilibriumRecord> equilibrium;
};

// Epochs are half-open round ranges [boundaries[j], boundaries[j+1]) with
// 0-based rounds, so boundaries runs from 0 to T.
struct EpochSchedule {
  std::vector<int> boundaries;
  std::vector<Permutation> cell_permutations;

  int num_epochs() const { return static_cast<int>(cell_permutations.size()); }
  int interior_switches() const { return num_epochs() - 1; }
};

struct GameInstance {
  std::vector<GameRound> rounds;
  EpochSchedule schedule;
};

// Epoch lengths floor(T/(s+1)), with the remainder given one round each to
// the earliest epochs. Returns the boundary list.
std::vector<int> EpochBoundaries(int rounds, int switches);

// f(S, y) = a * y * eps[k(S)] + c * k(S) / T where k(S) is the length of the
// longest prefix of the epoch chain contained in S. y ranges over [-1, 1].
class ChainLevelPayoff : public SetFunction {
 public:
  ChainLevelPayoff(Permutation epoch_perm, std::vector<int> signs,
                   double noise_amplitude, double perturbation_scale,
                   int horizon);

  int ground_size() const override { return perm_.size(); }
  int y_dim() const override { return 1; }
  double Value(std::span<const int> set,
               std::span<const double> y) const override;
  void AddGradY(std::span<const int> set, std::span<const double> y,
                double scale, std::span<double> out) const override;
  std::vector<double> ChainValues(const Permutation& pi,
                                  std::span<const double> y) const override;

  int Level(std::span<const int> set) const;
  double LevelValue(int k, double y) const;
  const std::vector<int>& signs() const { return signs_; }
  double noise_amplitude() const { return noise_amplitude_; }

 private:
  Permutation perm_;
  std::vector<int> position_;  // position of each element in perm_
  std::vector<int> signs_;     // eps[0..n], each +1 or -1
  double noise_amplitude_;
  double level_slope_;         // perturbation_scale / T
};

struct EpochAdversaryParams {
  int n = 3;
  int horizon = 6;
  int switches = 0;
  double noise_amplitude = 1.0;
  // Negative means the default 1/n.
  double perturbation_scale = -1.0;
  uint64_t seed = 0;
};

// Lower-bound family with rotation schedule pi^(j) = shift by j and a
// closed-form equilibrium record on every round.
GameInstance GenEpochAdversary(const EpochAdversaryParams& params);

// Exact saddle point of one ChainLevelPayoff round.
EquilibriumRecord EpochAdversaryEquilibrium(const ChainLevelPayoff& payoff,
                                            const Permutation& epoch_perm);

// f(S, y) = sum_u y_u w_u min(1, |S ∩ cover(u)|) with y in [0,1]^U.
class CoveragePayoff : public SetFunction {
 public:
  CoveragePayoff(int n, std::vector<std::vector<int>> covers,
                 std::vector<double> weights);

  int ground_size() const override { return n_; }
  int y_dim() const override { return static_cast<int>(weights_.size()); }
  double Value(std::span<const int> set,
               std::span<const double> y) const override;
  void AddGradY(std::span<const int> set, std::span<const double> y,
                double scale, std::span<double> out) const override;

  const std::vector<double>& weights() const { return weights_; }

 private:
  int n_;
  // covered_by_[e] lists the universe items covered by element e.
  std::vector<std::vector<int>> covered_by_;
  std::vector<double> weights_;
};

std::vector<GameRound> GenCoverageGame(int n, int universe_size, int horizon,
                                       uint64_t seed, double drift);

// Modular-plus-concave-cardinality payoff whose chain along the epoch
// permutation is flat at 0 except for a dip of depth `gap` at the pivot
// level m. Singleton marginals sort exactly into the epoch permutation, so
// the observable best response tracks the scheduled cell. y is inert.
class ChainMarginPayoff : public SetFunction {
 public:
  ChainMarginPayoff(const Permutation& epoch_perm, int pivot, double gap);

  int ground_size() const override { return static_cast<int>(theta_.size()); }
  int y_dim() const override { return 1; }
  double Value(std::span<const int> set,
               std::span<const double> y) const override;
  std::vector<double> ChainValues(const Permutation& pi,
                                  std::span<const double> y) const override;

  // max |f(S)| over all sets.
  double Bound() const;

 private:
  std::vector<double> theta_;       // per-element modular part
  std::vector<double> cardinality_; // h(0..n), concave
};

enum class CellSchedule { kAdjacent, kRotation, kRandom };

CellSchedule ParseCellSchedule(const std::string& name);
std::string CellScheduleName(CellSchedule schedule);

struct MarginGameParams {
  int n = 20;
  int horizon = 10000;
  int switches = 0;
  // Gap per epoch is margin_scale * sqrt(ln(n+1) / epoch_length).
  double margin_scale = 1.5;
  CellSchedule schedule = CellSchedule::kAdjacent;
  uint64_t seed = 0;
};

GameInstance GenMarginGame(const MarginGameParams& params);

enum class SaddleSearchMode { kCube, kChain };

struct SaddleSearch {
  SaddleSearchMode mode = SaddleSearchMode::kChain;
  double h = 0.01;    // x grid (cube) or simplex (chain) resolution
  double h_y = 0.01;  // y grid resolution
  // Chain mode only: permutations whose simplices are searched. Empty means
  // all n! permutations (n <= 7).
  std::vector<Permutation> permutations;
};

// argmin over the x grid of max over the y grid of the extension. Ties go to
// the first grid point in enumeration order.
EquilibriumRecord BruteForceSaddle(const GameRound& round,
                                   const SaddleSearch& search);

// Boundaries at every round where the permutation changes.
EpochSchedule SwitchScheduleOf(std::span<const Permutation> perms);
EpochSchedule SwitchScheduleOf(std::span<const EquilibriumRecord> records);
EpochSchedule SwitchScheduleOf(const std::vector<GameRound>& rounds);

}  // namespace polyreg

#endif  // POLYREG_GAMES_H_
