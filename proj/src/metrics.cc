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

#include "polyreg/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polyreg {

void RegretTrace::Append(double increment) {
  increments_.push_back(increment);
  cumulative_.push_back(total() + increment);
}

double RegretTrace::average() const {
  return increments_.empty() ? 0.0 : total() / rounds();
}

double SaddleRegretIncrement(const GameRound& round, std::span<const double> x,
                             std::span<const double> y) {
  if (round.equilibrium == nullptr) {
    throw std::invalid_argument(
        "round has no equilibrium record; compute one with BruteForceSaddle");
  }
  const EquilibriumRecord& eq = *round.equilibrium;
  return LovaszValue(*round.payoff, x, eq.y_star) -
         LovaszValue(*round.payoff, eq.x_star, y);
}

int SwitchCount(std::span<const Permutation> perms) {
  if (perms.empty()) throw std::invalid_argument("SwitchCount: empty sequence");
  int count = 0;
  for (size_t t = 1; t < perms.size(); ++t) {
    if (!(perms[t] == perms[t - 1])) ++count;
  }
  return count;
}

double TheoryNormalize(double avg_regret, double kappa, double v_eff,
                       int horizon, NormalizeMode mode, double d_eff) {
  if (!std::isfinite(avg_regret)) {
    throw std::invalid_argument("TheoryNormalize: non-finite regret");
  }
  if (horizon < 1) throw std::invalid_argument("TheoryNormalize: T >= 1");
  if (mode == NormalizeMode::kStruct) {
    if (!(v_eff >= 2.0)) {
      throw std::invalid_argument("TheoryNormalize: v_eff must be >= 2");
    }
    return avg_regret / std::sqrt((1.0 + kappa) * std::log(v_eff) / horizon);
  }
  if (!(d_eff > 0.0)) {
    throw std::invalid_argument("TheoryNormalize: d_eff must be > 0");
  }
  return avg_regret / std::sqrt(d_eff / horizon);
}

double LoglogSlope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw std::invalid_argument("LoglogSlope: need >= 3 paired points");
  }
  const size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("LoglogSlope: inputs must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = Mean(lx), my = Mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("LoglogSlope: constant xs");
  return sxy / sxx;
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("Mean: empty input");
  return std::accumulate(values.begin(), values.end(), 0.0) / values.size();
}

double SampleStddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / (values.size() - 1));
}

double CoeffVariation(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("CoeffVariation: empty input");
  if (values.size() == 1) return 0.0;
  const double m = Mean(values);
  if (m == 0.0) throw std::invalid_argument("CoeffVariation: zero mean");
  return SampleStddev(values) / m;
}

namespace {

std::vector<double> Ranks(std::span<const double> v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < idx.size();) {
    size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double SpearmanCorrelation(std::span<const double> xs,
                           std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("SpearmanCorrelation: need >= 2 paired points");
  }
  const std::vector<double> rx = Ranks(xs), ry = Ranks(ys);
  const double mx = Mean(rx), my = Mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace polyreg
