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

#include "polyreg/pathgame.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "polyreg/games.h"
#include "polyreg/rng.h"

namespace polyreg {

GridDag::GridDag(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("grid side k must be >= 2");
  tail_.resize(num_edges());
  head_.resize(num_edges());
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c + 1 < k; ++c) {
      tail_[RightEdge(r, c)] = r * k + c;
      head_[RightEdge(r, c)] = r * k + c + 1;
    }
  }
  for (int r = 0; r + 1 < k; ++r) {
    for (int c = 0; c < k; ++c) {
      tail_[DownEdge(r, c)] = r * k + c;
      head_[DownEdge(r, c)] = (r + 1) * k + c;
    }
  }
}

GridDag BuildGrid(int k) { return GridDag(k); }

namespace {

// Move sequences: false = right, true = down.
Path MovesToPath(const GridDag& dag, const std::vector<bool>& moves) {
  Path path;
  int r = 0, c = 0;
  for (bool down : moves) {
    path.push_back(down ? dag.DownEdge(r, c) : dag.RightEdge(r, c));
    (down ? r : c) += 1;
  }
  std::sort(path.begin(), path.end());
  return path;
}

void Enumerate(const GridDag& dag, int r, int c, Path& current,
               std::vector<Path>& out) {
  const int k = dag.k();
  if (r == k - 1 && c == k - 1) {
    Path sorted = current;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    return;
  }
  if (c + 1 < k) {
    current.push_back(dag.RightEdge(r, c));
    Enumerate(dag, r, c + 1, current, out);
    current.pop_back();
  }
  if (r + 1 < k) {
    current.push_back(dag.DownEdge(r, c));
    Enumerate(dag, r + 1, c, current, out);
    current.pop_back();
  }
}

}  // namespace

PathSet EnumeratePaths(const GridDag& dag) {
  if (dag.k() > kMaxEnumerableK) {
    throw std::invalid_argument("path enumeration limited to k <= " +
                                std::to_string(kMaxEnumerableK) + ", got k=" +
                                std::to_string(dag.k()));
  }
  PathSet set;
  Path current;
  Enumerate(dag, 0, 0, current, set.paths);
  return set;
}

Path ShortestPathLmo(const GridDag& dag, std::span<const double> costs) {
  const int k = dag.k();
  std::vector<double> value(k * k, 0.0);
  std::vector<int> choice(k * k, -1);
  for (int r = k - 1; r >= 0; --r) {
    for (int c = k - 1; c >= 0; --c) {
      if (r == k - 1 && c == k - 1) continue;
      double best = std::numeric_limits<double>::infinity();
      int edge = -1;
      if (c + 1 < k) {
        edge = dag.RightEdge(r, c);
        best = costs[edge] + value[r * k + c + 1];
      }
      if (r + 1 < k) {
        const int down = dag.DownEdge(r, c);
        const double v = costs[down] + value[(r + 1) * k + c];
        if (v < best) best = v, edge = down;
      }
      value[r * k + c] = best;
      choice[r * k + c] = edge;
    }
  }
  Path path;
  for (int node = 0; node != k * k - 1; node = dag.head(choice[node])) {
    path.push_back(choice[node]);
  }
  std::sort(path.begin(), path.end());
  return path;
}

double PathCost(const Path& path, std::span<const double> costs) {
  double total = 0.0;
  for (int e : path) total += costs[e];
  return total;
}

FlowPoint IndicatorFlow(const GridDag& dag, const Path& path) {
  FlowPoint z(dag.num_edges(), 0.0);
  for (int e : path) z[e] = 1.0;
  return z;
}

FlowPoint UniformPathFlow(const GridDag& dag) {
  // Flow on edge u->v is paths(source->u) * paths(v->sink) / total.
  const int k = dag.k();
  std::vector<double> from_source(k * k, 0.0), to_sink(k * k, 0.0);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      from_source[r * k + c] =
          (r == 0 && c == 0)
              ? 1.0
              : (r > 0 ? from_source[(r - 1) * k + c] : 0.0) +
                    (c > 0 ? from_source[r * k + c - 1] : 0.0);
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    for (int c = k - 1; c >= 0; --c) {
      to_sink[r * k + c] =
          (r == k - 1 && c == k - 1)
              ? 1.0
              : (r + 1 < k ? to_sink[(r + 1) * k + c] : 0.0) +
                    (c + 1 < k ? to_sink[r * k + c + 1] : 0.0);
    }
  }
  const double total = to_sink[0];
  FlowPoint z(dag.num_edges());
  for (int e = 0; e < dag.num_edges(); ++e) {
    z[e] = from_source[dag.tail(e)] * to_sink[dag.head(e)] / total;
  }
  return z;
}

double FlowResidual(const GridDag& dag, std::span<const double> z) {
  std::vector<double> net(dag.num_nodes(), 0.0);
  double worst = 0.0;
  for (int e = 0; e < dag.num_edges(); ++e) {
    net[dag.tail(e)] += z[e];
    net[dag.head(e)] -= z[e];
    worst = std::max({worst, -z[e], z[e] - 1.0});
  }
  const int sink = dag.num_nodes() - 1;
  for (int v = 0; v < dag.num_nodes(); ++v) {
    const double target = v == 0 ? 1.0 : (v == sink ? -1.0 : 0.0);
    worst = std::max(worst, std::abs(net[v] - target));
  }
  return worst;
}

Designation ParseDesignation(const std::string& name) {
  if (name == "random") return Designation::kRandom;
  if (name == "flip") return Designation::kFlip;
  throw std::invalid_argument("unknown designation '" + name +
                              "' (expected random or flip)");
}

std::string DesignationName(Designation designation) {
  return designation == Designation::kRandom ? "random" : "flip";
}

PathLossSchedule::PathLossSchedule(const GridDag& dag,
                                   const PathLossParams& params,
                                   std::vector<int> boundaries,
                                   std::vector<Path> designated)
    : num_edges_(dag.num_edges()),
      params_(params),
      boundaries_(std::move(boundaries)),
      designated_(std::move(designated)),
      noise_key_(HashWords(
          {params.seed, static_cast<uint64_t>(Stream::kNoise)})) {}

int PathLossSchedule::EpochOf(int t) const {
  return static_cast<int>(
      std::upper_bound(boundaries_.begin(), boundaries_.end(), t) -
      boundaries_.begin() - 1);
}

std::vector<double> PathLossSchedule::Costs(int t) const {
  std::vector<double> costs(num_edges_, 0.5);
  for (int e : designated_[EpochOf(t)]) costs[e] -= params_.margin;
  if (params_.noise_amplitude > 0.0) {
    const uint64_t base = static_cast<uint64_t>(t) * num_edges_;
    for (int e = 0; e < num_edges_; ++e) {
      const double u = CounterRng::UniformAt(noise_key_, base + e);
      costs[e] = std::clamp(costs[e] + params_.noise_amplitude * (2.0 * u - 1.0),
                            0.0, 1.0);
    }
  }
  return costs;
}

PathLossSchedule GenPathLosses(const GridDag& dag,
                               const PathLossParams& params) {
  const double m = params.margin;
  const double noise = params.noise_amplitude;
  if (!(m > 0.0) || !(noise >= 0.0) || !(4.0 * noise <= m) ||
      !(m + noise <= 0.5)) {
    throw std::invalid_argument(
        "infeasible path losses: need margin > 0, 0 <= noise <= margin/4 and "
        "margin + noise <= 0.5");
  }
  const std::vector<int> boundaries =
      EpochBoundaries(params.horizon, params.rs_target);
  const int k = dag.k();
  CounterRng rng(params.seed, Stream::kSchedule);

  std::vector<bool> moves(2 * (k - 1), false);
  std::fill(moves.begin() + (k - 1), moves.end(), true);
  rng.Shuffle(moves);
  std::vector<Path> designated;
  for (int j = 0; j + 1 < static_cast<int>(boundaries.size()); ++j) {
    if (j > 0) {
      if (params.designation == Designation::kFlip) {
        std::vector<int> corners;
        for (size_t i = 0; i + 1 < moves.size(); ++i) {
          if (moves[i] != moves[i + 1]) corners.push_back(static_cast<int>(i));
        }
        const int i = corners[rng.UniformInt(static_cast<int>(corners.size()))];
        std::swap(moves[i], moves[i + 1]);
      } else {
        const std::vector<bool> previous = moves;
        while (moves == previous) rng.Shuffle(moves);
      }
    }
    designated.push_back(MovesToPath(dag, moves));
  }

  if (k <= kMaxEnumerableK) {
    // Worst case over the noise box: edges only on the rival path at their
    // lowest cost, edges only on the designated path at their highest.
    const PathSet all = EnumeratePaths(dag);
    for (const Path& star : designated) {
      std::vector<char> on_star(dag.num_edges(), 0);
      for (int e : star) on_star[e] = 1;
      for (const Path& p : all.paths) {
        if (p == star) continue;
        double gap = 0.0;
        std::vector<char> on_p(dag.num_edges(), 0);
        for (int e : p) {
          on_p[e] = 1;
          if (!on_star[e]) gap += 0.5 - noise;
        }
        for (int e : star) {
          if (!on_p[e]) gap -= 0.5 - m + noise;
        }
        if (gap < m - 1e-12) {
          throw std::logic_error("designated path margin invariant violated");
        }
      }
    }
  }
  return PathLossSchedule(dag, params, boundaries, std::move(designated));
}

MwRestartsLearner::MwRestartsLearner(const GridDag& dag, const PathSet& paths,
                                     double eta)
    : dag_(dag),
      paths_(paths),
      eta_(eta),
      weights_(paths.size(), 1.0 / paths.size()) {
  if (!(eta >= 0.0)) throw std::invalid_argument("MW step size must be >= 0");
}

FlowPoint MwRestartsLearner::MeanFlow() const {
  FlowPoint z(dag_.num_edges(), 0.0);
  for (int p = 0; p < paths_.size(); ++p) {
    for (int e : paths_.paths[p]) z[e] += weights_[p];
  }
  return z;
}

FlowPoint MwRestartsLearner::Step(std::span<const double> costs) {
  FlowPoint play = MeanFlow();
  const int size = paths_.size();
  std::vector<double> losses(size);
  int best = 0;
  for (int p = 0; p < size; ++p) {
    losses[p] = PathCost(paths_.paths[p], costs);
    if (losses[p] < losses[best]) best = p;
  }
  if (last_best_ >= 0 && best != last_best_) {
    std::fill(weights_.begin(), weights_.end(), 1.0 / size);
    ++restarts_;
  }
  last_best_ = best;
  double z = 0.0;
  for (int p = 0; p < size; ++p) {
    weights_[p] *= std::exp(-eta_ * (losses[p] - losses[best]));
    z += weights_[p];
  }
  for (double& w : weights_) w /= z;
  return play;
}

OgdFwLearner::OgdFwLearner(const GridDag& dag, int horizon, double eta)
    : dag_(dag),
      eta_(eta > 0.0 ? eta : 1.0 / std::sqrt(static_cast<double>(horizon))),
      z1_(UniformPathFlow(dag)),
      z_(z1_),
      grad_sum_(dag.num_edges(), 0.0) {}

FlowPoint OgdFwLearner::Step(std::span<const double> costs) {
  FlowPoint play = z_;
  const int d = dag_.num_edges();
  std::vector<double> direction(d);
  for (int e = 0; e < d; ++e) {
    grad_sum_[e] += costs[e];
    direction[e] = eta_ * grad_sum_[e] + 2.0 * (z_[e] - z1_[e]);
  }
  const Path v = ShortestPathLmo(dag_, direction);
  const double gamma = std::min(1.0, 1.0 / std::sqrt(static_cast<double>(t_)));
  for (double& ze : z_) ze *= 1.0 - gamma;
  for (int e : v) z_[e] += gamma;
  ++t_;
  return play;
}

double PathRegretIncrement(std::span<const double> costs,
                           std::span<const double> z, const PathSet& paths,
                           int* argmin) {
  double played = 0.0;
  for (size_t e = 0; e < z.size(); ++e) played += costs[e] * z[e];
  double best = std::numeric_limits<double>::infinity();
  int arg = -1;
  for (int p = 0; p < paths.size(); ++p) {
    const double v = PathCost(paths.paths[p], costs);
    if (v < best) best = v, arg = p;
  }
  if (argmin != nullptr) *argmin = arg;
  return played - best;
}

PathRegretResult PathRegret(std::span<const FlowPoint> plays,
                            const PathLossSchedule& schedule,
                            const PathSet& paths) {
  if (static_cast<int>(plays.size()) != schedule.horizon()) {
    throw std::invalid_argument("PathRegret: plays and schedule misaligned");
  }
  PathRegretResult result;
  int previous = -1;
  for (int t = 0; t < schedule.horizon(); ++t) {
    int arg = -1;
    result.trace.Append(
        PathRegretIncrement(schedule.Costs(t), plays[t], paths, &arg));
    if (previous >= 0 && arg != previous) ++result.rs;
    previous = arg;
  }
  return result;
}

}  // namespace polyreg
