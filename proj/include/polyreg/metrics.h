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

// Regret accounting, switch statistics and summary statistics.

#ifndef POLYREG_METRICS_H_
#define POLYREG_METRICS_H_

#include <span>
#include <vector>

#include "polyreg/games.h"
#include "polyreg/lovasz.h"

namespace polyreg {

class RegretTrace {
 public:
  void Append(double increment);

  int rounds() const { return static_cast<int>(increments_.size()); }
  const std::vector<double>& increments() const { return increments_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  // total() / rounds(), 0 for an empty trace.
  double average() const;

 private:
  std::vector<double> increments_;
  std::vector<double> cumulative_;
};

struct SwitchStats {
  int sc_oracle = 0;      // designed, from equilibrium permutations
  int sc_observed = 0;    // learner's best-response changes
  int sc_br_offline = 0;  // best responses replayed from logged y_t
  int rs = 0;             // argmin-region changes (path game)
};

// f_L(x_t, y*) - f_L(x*, y_t). Throws if the round has no equilibrium record.
double SaddleRegretIncrement(const GameRound& round, std::span<const double> x,
                             std::span<const double> y);

// Number of t with perms[t+1] != perms[t].
int SwitchCount(std::span<const Permutation> perms);

enum class NormalizeMode { kStruct, kCont };

// kStruct divides by sqrt((1 + kappa) ln(v_eff) / T); kCont divides by
// sqrt(d_eff / T).
double TheoryNormalize(double avg_regret, double kappa, double v_eff,
                       int horizon, NormalizeMode mode, double d_eff = 0.0);

// OLS slope of ln(ys) on ln(xs).
double LoglogSlope(std::span<const double> xs, std::span<const double> ys);

// Sample standard deviation over mean. A single element gives 0.
double CoeffVariation(std::span<const double> values);

double Mean(std::span<const double> values);
// Sample (n-1) standard deviation; 0 for fewer than two values.
double SampleStddev(std::span<const double> values);

// Spearman rank correlation with average ranks for ties.
double SpearmanCorrelation(std::span<const double> xs,
                           std::span<const double> ys);

}  // namespace polyreg

#endif  // POLYREG_METRICS_H_
