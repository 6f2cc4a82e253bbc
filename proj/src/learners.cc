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

#include "polyreg/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polyreg {

StepSizes StepSizes::Defaults(int n, int horizon) {
  if (n < 1 || horizon < 1) {
    throw std::invalid_argument("StepSizes::Defaults: need n >= 1, T >= 1");
  }
  // ln 1 = 0 would freeze a single-element learner; use the two-vertex
  // chain's ln 2 instead.
  const double log_n = std::log(std::max(n, 2));
  return {std::sqrt(log_n / horizon), 1.0 / std::sqrt(horizon)};
}

void StepSizes::Validate() const {
  if (!(eta_x > 0.0) || !(eta_y > 0.0) || !std::isfinite(eta_x) ||
      !std::isfinite(eta_y)) {
    throw std::invalid_argument("step sizes must be finite and > 0");
  }
}

ChainWeights MwUpdate(std::span<const double> p, std::span<const double> losses,
                      double eta) {
  if (p.size() != losses.size()) {
    throw std::invalid_argument("MwUpdate: size mismatch");
  }
  double shift = std::numeric_limits<double>::infinity();
  for (double l : losses) {
    if (!std::isfinite(l)) throw std::invalid_argument("MwUpdate: non-finite loss");
    shift = std::min(shift, l);
  }
  ChainWeights out(p.size());
  double z = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] * std::exp(-eta * (losses[i] - shift));
    z += out[i];
  }
  for (double& v : out) v /= z;
  return out;
}

ChainWeights GeometricTransfer(std::span<const double> p,
                               std::span<const int> shared, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("GeometricTransfer: alpha must lie in (0, 1]");
  }
  const int size = static_cast<int>(p.size());
  const double floor = alpha / size;
  ChainWeights out(size, floor);
  for (int k : shared) {
    if (k < 0 || k >= size) {
      throw std::invalid_argument("GeometricTransfer: shared index range");
    }
    out[k] = (1.0 - alpha) * p[k] + floor;
  }
  // Z <= 1 in exact arithmetic; clamping keeps rounding from undercutting
  // the floor and the shared-element lower bound.
  const double z = std::min(1.0, std::accumulate(out.begin(), out.end(), 0.0));
  for (double& v : out) v /= z;
  return out;
}

ChainWeights FixedShareUpdate(std::span<const double> p,
                              std::span<const double> losses, double eta,
                              double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("FixedShareUpdate: beta must lie in [0, 1]");
  }
  ChainWeights out = MwUpdate(p, losses, eta);
  const double uniform = 1.0 / out.size();
  for (double& v : out) v = (1.0 - beta) * v + beta * uniform;
  return out;
}

std::vector<double> MirrorAscentY(std::span<const double> y,
                                  std::span<const double> grad, double eta,
                                  const MaximizerDomain& domain) {
  std::vector<double> out(y.size());
  for (size_t i = 0; i < y.size(); ++i) {
    out[i] = std::clamp(y[i] + eta * grad[i], domain.lower[i], domain.upper[i]);
  }
  return out;
}

CamwState CamwState::Initial(int n, double alpha, RestartPolicy policy) {
  if (!(alpha >= 1e-6 && alpha <= 1.0)) {
    throw std::invalid_argument("transfer alpha must lie in [1e-6, 1]");
  }
  if (policy.kind == RestartPolicy::Kind::kPeriodic && policy.period < 1) {
    throw std::invalid_argument("periodic restart needs period >= 1");
  }
  if (policy.kind == RestartPolicy::Kind::kRandom &&
      !(policy.rate >= 0.0 && policy.rate <= 1.0)) {
    throw std::invalid_argument("random restart rate must lie in [0, 1]");
  }
  CamwState state;
  state.weights.assign(n + 1, 1.0 / (n + 1));
  state.transfer_alpha = alpha;
  state.restart_policy = policy;
  return state;
}

namespace {

void ResetWeights(CamwState& state, CamwVariant variant,
                  const Permutation& next, const Permutation& previous) {
  const int size = static_cast<int>(state.weights.size());
  switch (variant) {
    case CamwVariant::kCold:
      state.weights.assign(size, 1.0 / size);
      break;
    case CamwVariant::kWarmUniformFloor: {
      std::vector<int> all(size);
      std::iota(all.begin(), all.end(), 0);
      state.weights =
          GeometricTransfer(state.weights, all, state.transfer_alpha);
      break;
    }
    case CamwVariant::kGeometric:
      state.weights = GeometricTransfer(
          state.weights, SharedPrefixIndices(next, previous),
          state.transfer_alpha);
      break;
  }
  ++state.resets;
}

}  // namespace

ThresholdPoint CamwStep(CamwState& state, const GameRound& round,
                        CamwVariant variant, std::span<const double> y,
                        const Permutation* oracle_perm) {
  const int n = round.payoff->ground_size();
  if (static_cast<int>(state.weights.size()) != n + 1) {
    throw std::invalid_argument("CamwStep: state dimension mismatch");
  }
  Permutation pi =
      oracle_perm != nullptr ? *oracle_perm : BrPermutation(*round.payoff, y);
  const bool switched =
      state.current_perm.has_value() && !(pi == *state.current_perm);
  if (switched) ++state.observed_switches;

  bool fire = false;
  const RestartPolicy& policy = state.restart_policy;
  switch (policy.kind) {
    case RestartPolicy::Kind::kAdaptive:
      fire = switched;
      break;
    case RestartPolicy::Kind::kNone:
      break;
    case RestartPolicy::Kind::kPeriodic:
      fire = state.round > 0 && state.round % policy.period == 0;
      break;
    case RestartPolicy::Kind::kRandom:
      fire = state.round > 0 &&
             CounterRng::UniformAt(
                 HashWords({policy.seed,
                            static_cast<uint64_t>(Stream::kLearner)}),
                 state.round) < policy.rate;
      break;
  }
  if (fire) {
    ResetWeights(state, variant, pi,
                 state.current_perm.has_value() ? *state.current_perm : pi);
  }
  state.current_perm = std::move(pi);
  return WeightsToThreshold(state.weights, *state.current_perm);
}

void CamwObserve(CamwState& state, const GameRound& round,
                 const StepSizes& steps, std::span<const double> y) {
  const std::vector<double> losses =
      round.payoff->ChainValues(*state.current_perm, y);
  state.weights = MwUpdate(state.weights, losses, steps.eta_x);
  ++state.round;
}

ContinuousState ContinuousState::Initial(int n, const MaximizerDomain& domain) {
  return {ThresholdPoint(n, 0.5), domain.Center()};
}

Play OlmdaStep(ContinuousState& state, const GameRound& round,
               const StepSizes& steps) {
  Play play{state.x, state.y};
  const SetFunction& f = *round.payoff;
  const std::vector<double> gx = LovaszSubgradientX(f, state.x, state.y);
  if (round.lipschitz_y > 0.0) {
    const std::vector<double> gy = LovaszGradY(f, state.x, state.y);
    state.y = MirrorAscentY(state.y, gy, steps.eta_y, round.domain);
  }
  for (size_t i = 0; i < state.x.size(); ++i) {
    state.x[i] = std::clamp(state.x[i] - steps.eta_x * gx[i], 0.0, 1.0);
  }
  return play;
}

Play OgdStep(ContinuousState& state, const GameRound& round,
             const StepSizes& steps) {
  return OlmdaStep(state, round, steps);
}

CamwLearner::CamwLearner(int n, const MaximizerDomain& domain,
                         const StepSizes& steps, CamwVariant variant,
                         double alpha, RestartPolicy policy,
                         bool use_oracle_perm)
    : state_(CamwState::Initial(n, alpha, policy)),
      variant_(variant),
      steps_(steps),
      y_(domain.Center()),
      use_oracle_perm_(use_oracle_perm) {
  steps_.Validate();
}

Play CamwLearner::Step(const GameRound& round) {
  const Permutation* oracle = nullptr;
  if (use_oracle_perm_) {
    if (round.equilibrium == nullptr) {
      throw std::invalid_argument("oracle CAMW needs equilibrium records");
    }
    oracle = &round.equilibrium->pi_star;
  }
  Play play{CamwStep(state_, round, variant_, y_, oracle), y_};
  std::vector<double> gy;
  if (round.lipschitz_y > 0.0) {
    gy = round.payoff->ChainGradY(*state_.current_perm, state_.weights, y_);
  }
  CamwObserve(state_, round, steps_, y_);
  if (!gy.empty()) y_ = MirrorAscentY(y_, gy, steps_.eta_y, round.domain);
  return play;
}

std::string CamwLearner::name() const {
  switch (variant_) {
    case CamwVariant::kCold:
      return "camw_cold";
    case CamwVariant::kWarmUniformFloor:
      return "camw_ws";
    case CamwVariant::kGeometric:
      return "camw_geometric";
  }
  return "camw";
}

ContinuousLearner::ContinuousLearner(Kind kind, int n,
                                     const MaximizerDomain& domain,
                                     const StepSizes& steps)
    : kind_(kind), state_(ContinuousState::Initial(n, domain)), steps_(steps) {
  steps_.Validate();
}

Play ContinuousLearner::Step(const GameRound& round) {
  return kind_ == Kind::kOlmda ? OlmdaStep(state_, round, steps_)
                               : OgdStep(state_, round, steps_);
}

std::string ContinuousLearner::name() const {
  return kind_ == Kind::kOlmda ? "olmda" : "ogd";
}

FixedShareLearner::FixedShareLearner(int n, const MaximizerDomain& domain,
                                     const StepSizes& steps, double beta)
    : weights_(n + 1, 1.0 / (n + 1)),
      steps_(steps),
      beta_(beta),
      y_(domain.Center()) {
  steps_.Validate();
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("fixed-share beta must lie in [0, 1]");
  }
}

Play FixedShareLearner::Step(const GameRound& round) {
  Permutation pi = BrPermutation(*round.payoff, y_);
  if (current_perm_.has_value() && !(pi == *current_perm_)) ++switches_;
  current_perm_ = std::move(pi);
  Play play{WeightsToThreshold(weights_, *current_perm_), y_};
  std::vector<double> gy;
  if (round.lipschitz_y > 0.0) {
    gy = round.payoff->ChainGradY(*current_perm_, weights_, y_);
  }
  const std::vector<double> losses =
      round.payoff->ChainValues(*current_perm_, y_);
  weights_ = FixedShareUpdate(weights_, losses, steps_.eta_x, beta_);
  if (!gy.empty()) y_ = MirrorAscentY(y_, gy, steps_.eta_y, round.domain);
  return play;
}

}  // namespace polyreg
