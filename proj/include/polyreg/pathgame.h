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

// Online shortest path on k x k grid DAGs: path enumeration, a dynamic
// programming linear minimization oracle, designed loss schedules, and two
// learners (MW with restarts over paths, online Frank-Wolfe over flows).

#ifndef POLYREG_PATHGAME_H_
#define POLYREG_PATHGAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polyreg/metrics.h"

namespace polyreg {

// Nodes are (row, col) with id row * k + col. Right edges come first in
// row-major order, then down edges in row-major order.
class GridDag {
 public:
  explicit GridDag(int k);

  int k() const { return k_; }
  int num_edges() const { return 2 * k_ * (k_ - 1); }
  int num_nodes() const { return k_ * k_; }
  int RightEdge(int row, int col) const { return row * (k_ - 1) + col; }
  int DownEdge(int row, int col) const {
    return k_ * (k_ - 1) + row * k_ + col;
  }
  int tail(int edge) const { return tail_[edge]; }
  int head(int edge) const { return head_[edge]; }

 private:
  int k_;
  std::vector<int> tail_;
  std::vector<int> head_;
};

GridDag BuildGrid(int k);

// A source-to-sink path as its sorted edge indices.
using Path = std::vector<int>;
// Edge flow vector in [0,1]^d.
using FlowPoint = std::vector<double>;

struct PathSet {
  std::vector<Path> paths;
  int size() const { return static_cast<int>(paths.size()); }
};

// binomial(2(k-1), k-1) paths in lexicographic order of move sequences with
// right before down. Refuses k > 8.
PathSet EnumeratePaths(const GridDag& dag);
inline constexpr int kMaxEnumerableK = 8;

// Min-cost path; at equal continuation values the right edge wins.
Path ShortestPathLmo(const GridDag& dag, std::span<const double> costs);

double PathCost(const Path& path, std::span<const double> costs);
FlowPoint IndicatorFlow(const GridDag& dag, const Path& path);
// Mean flow of the uniform distribution over all paths.
FlowPoint UniformPathFlow(const GridDag& dag);
// Largest violation of conservation, unit outflow at the source, or [0,1].
double FlowResidual(const GridDag& dag, std::span<const double> z);

// How the designated path moves between epochs.
enum class Designation {
  kRandom,  // fresh uniform draw, distinct from the previous path
  kFlip,    // swap one adjacent right/down corner of the previous path
};

Designation ParseDesignation(const std::string& name);
std::string DesignationName(Designation designation);

struct PathLossParams {
  int horizon = 20000;
  int rs_target = 0;
  double margin = 0.05;
  double noise_amplitude = 0.0;
  Designation designation = Designation::kFlip;
  uint64_t seed = 0;
};

class PathLossSchedule {
 public:
  PathLossSchedule(const GridDag& dag, const PathLossParams& params,
                   std::vector<int> boundaries,
                   std::vector<Path> designated);

  int horizon() const { return params_.horizon; }
  const PathLossParams& params() const { return params_; }
  const std::vector<int>& boundaries() const { return boundaries_; }
  const std::vector<Path>& designated() const { return designated_; }
  int EpochOf(int t) const;

  // Edge costs of round t (0-based), recomputed from the seed on demand.
  std::vector<double> Costs(int t) const;

 private:
  int num_edges_;
  PathLossParams params_;
  std::vector<int> boundaries_;
  std::vector<Path> designated_;
  uint64_t noise_key_;
};

// Rejects unless margin > 0, 0 <= noise <= margin / 4 and
// margin + noise <= 1/2. Under that rule every other path is worse than the
// designated one by at least the margin on every round, which is verified
// per epoch against worst-case noise when k <= 8.
PathLossSchedule GenPathLosses(const GridDag& dag, const PathLossParams& params);

class MwRestartsLearner {
 public:
  MwRestartsLearner(const GridDag& dag, const PathSet& paths, double eta);

  // Plays the mean flow, observes `costs`, restarts on an argmin change and
  // applies the exponential update.
  FlowPoint Step(std::span<const double> costs);
  FlowPoint MeanFlow() const;

  const std::vector<double>& weights() const { return weights_; }
  int restarts() const { return restarts_; }

 private:
  const GridDag& dag_;
  const PathSet& paths_;
  double eta_;
  std::vector<double> weights_;
  int last_best_ = -1;
  int restarts_ = 0;
};

class OgdFwLearner {
 public:
  // eta <= 0 means 1 / sqrt(horizon).
  OgdFwLearner(const GridDag& dag, int horizon, double eta = 0.0);

  FlowPoint Step(std::span<const double> costs);
  const FlowPoint& flow() const { return z_; }

 private:
  const GridDag& dag_;
  double eta_;
  FlowPoint z1_;
  FlowPoint z_;
  std::vector<double> grad_sum_;
  int t_ = 1;
};

// <c_t, z_t> - min_p <c_t, 1_p>; also returns the argmin path index through
// `argmin` when non-null (ties by path index).
double PathRegretIncrement(std::span<const double> costs,
                           std::span<const double> z, const PathSet& paths,
                           int* argmin = nullptr);

struct PathRegretResult {
  RegretTrace trace;
  int rs = 0;  // rounds where the argmin path changes
};

PathRegretResult PathRegret(std::span<const FlowPoint> plays,
                            const PathLossSchedule& schedule,
                            const PathSet& paths);

}  // namespace polyreg

#endif  // POLYREG_PATHGAME_H_
