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

// Online learners for Lovász games: cell-aware multiplicative weights with
// cold, warm and geometric restarts, projected gradient baselines, and
// fixed-share MW. The minimizer descends, the maximizer ascends.

#ifndef POLYREG_LEARNERS_H_
#define POLYREG_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyreg/games.h"
#include "polyreg/lovasz.h"
#include "polyreg/rng.h"

namespace polyreg {

struct StepSizes {
  double eta_x = 0.0;
  double eta_y = 0.0;

  // eta_x = sqrt(ln n / T), eta_y = 1 / sqrt(T).
  static StepSizes Defaults(int n, int horizon);
  void Validate() const;
};

// p'[i] proportional to p[i] * exp(-eta * losses[i]).
ChainWeights MwUpdate(std::span<const double> p, std::span<const double> losses,
                      double eta);

// Shared indices keep (1 - alpha) of their mass, every index gets
// alpha / (n+1), then the result is renormalized.
ChainWeights GeometricTransfer(std::span<const double> p,
                               std::span<const int> shared, double alpha);

// (1 - beta) * MwUpdate(p, losses, eta) + beta * uniform.
ChainWeights FixedShareUpdate(std::span<const double> p,
                              std::span<const double> losses, double eta,
                              double beta);

// Projected ascent step clamped into the box.
std::vector<double> MirrorAscentY(std::span<const double> y,
                                  std::span<const double> grad, double eta,
                                  const MaximizerDomain& domain);

enum class CamwVariant { kCold, kWarmUniformFloor, kGeometric };

struct RestartPolicy {
  enum class Kind { kAdaptive, kNone, kPeriodic, kRandom };
  Kind kind = Kind::kAdaptive;
  int period = 0;     // kPeriodic: reset every `period` rounds
  double rate = 0.0;  // kRandom: per-round reset probability
  uint64_t seed = 0;  // kRandom stream

  static RestartPolicy Adaptive() { return {}; }
  static RestartPolicy None() { return {Kind::kNone}; }
  static RestartPolicy Periodic(int period) {
    return {Kind::kPeriodic, period};
  }
  static RestartPolicy Random(double rate, uint64_t seed) {
    return {Kind::kRandom, 0, rate, seed};
  }
};

struct CamwState {
  ChainWeights weights;
  // Unset before the first round.
  std::optional<Permutation> current_perm;
  double transfer_alpha = 0.01;
  RestartPolicy restart_policy;
  int observed_switches = 0;
  int resets = 0;
  int round = 0;

  static CamwState Initial(int n, double alpha, RestartPolicy policy);
};

// Cell selection and weight reset for one round. Returns x_t and leaves the
// MW update to CamwObserve. With `oracle_perm` set, that permutation replaces
// the observed best response (test harness mode).
ThresholdPoint CamwStep(CamwState& state, const GameRound& round,
                        CamwVariant variant, std::span<const double> y,
                        const Permutation* oracle_perm = nullptr);

// MW update on the chain of the current cell with losses f(C_i, y).
void CamwObserve(CamwState& state, const GameRound& round,
                 const StepSizes& steps, std::span<const double> y);

struct ContinuousState {
  ThresholdPoint x;
  std::vector<double> y;

  static ContinuousState Initial(int n, const MaximizerDomain& domain);
};

struct Play {
  ThresholdPoint x;
  std::vector<double> y;
};

// Projected subgradient descent on the cube paired with projected ascent in y.
Play OlmdaStep(ContinuousState& state, const GameRound& round,
               const StepSizes& steps);
Play OgdStep(ContinuousState& state, const GameRound& round,
             const StepSizes& steps);

// A full-information learner for the Lovász game.
class Learner {
 public:
  virtual ~Learner() = default;
  // Plays (x_t, y_t) for `round`, observes it and advances.
  virtual Play Step(const GameRound& round) = 0;
  virtual int observed_switches() const { return 0; }
  virtual std::string name() const = 0;
};

class CamwLearner : public Learner {
 public:
  CamwLearner(int n, const MaximizerDomain& domain, const StepSizes& steps,
              CamwVariant variant, double alpha,
              RestartPolicy policy = RestartPolicy::Adaptive(),
              bool use_oracle_perm = false);

  Play Step(const GameRound& round) override;
  int observed_switches() const override { return state_.observed_switches; }
  std::string name() const override;
  const CamwState& state() const { return state_; }

 private:
  CamwState state_;
  CamwVariant variant_;
  StepSizes steps_;
  std::vector<double> y_;
  bool use_oracle_perm_;
};

class ContinuousLearner : public Learner {
 public:
  enum class Kind { kOlmda, kOgd };
  ContinuousLearner(Kind kind, int n, const MaximizerDomain& domain,
                    const StepSizes& steps);

  Play Step(const GameRound& round) override;
  std::string name() const override;

 private:
  Kind kind_;
  ContinuousState state_;
  StepSizes steps_;
};

// MW over the chain vertices of the current best-response cell with
// continuous mixing toward uniform instead of restarts.
class FixedShareLearner : public Learner {
 public:
  FixedShareLearner(int n, const MaximizerDomain& domain,
                    const StepSizes& steps, double beta);

  Play Step(const GameRound& round) override;
  int observed_switches() const override { return switches_; }
  std::string name() const override { return "fixed_share"; }

 private:
  ChainWeights weights_;
  std::optional<Permutation> current_perm_;
  StepSizes steps_;
  double beta_;
  std::vector<double> y_;
  int switches_ = 0;
};

}  // namespace polyreg

#endif  // POLYREG_LEARNERS_H_
