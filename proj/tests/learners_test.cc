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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "polyreg/games.h"
#include "polyreg/rng.h"
#include "test_util.h"

namespace polyreg {
namespace {

using testing::ModularFunction;

GameRound ModularRound(std::vector<double> c) {
  GameRound r;
  r.payoff = std::make_shared<ModularFunction>(std::move(c));
  r.domain = MaximizerDomain::Box(1, 0.0, 1.0);
  r.bound_m = 10.0;
  return r;
}

TEST(StepSizesTest, Defaults) {
  const StepSizes s = StepSizes::Defaults(20, 10000);
  EXPECT_DOUBLE_EQ(s.eta_x, std::sqrt(std::log(20.0) / 10000));
  EXPECT_DOUBLE_EQ(s.eta_y, 0.01);
  EXPECT_GT(StepSizes::Defaults(1, 100).eta_x, 0.0);
  EXPECT_THROW((StepSizes{-1.0, 0.1}.Validate()), std::invalid_argument);
}

TEST(MwUpdateTest, Examples) {
  const std::vector<double> p = {0.2, 0.3, 0.5};
  EXPECT_EQ(MwUpdate(p, std::vector<double>{4, 4, 4}, 0.7), p);
  EXPECT_EQ(MwUpdate(p, std::vector<double>{1, 2, 3}, 0.0), p);
  const ChainWeights q = MwUpdate(std::vector<double>{0.5, 0.5},
                                  std::vector<double>{0.0, std::log(2.0)}, 1.0);
  EXPECT_NEAR(q[0], 2.0 / 3, 1e-15);
  EXPECT_NEAR(q[1], 1.0 / 3, 1e-15);
  EXPECT_THROW(MwUpdate(p, std::vector<double>{0, NAN, 0}, 1.0),
               std::invalid_argument);
  EXPECT_THROW(MwUpdate(p, std::vector<double>{0, INFINITY, 0}, 1.0),
               std::invalid_argument);
}

TEST(GeometricTransferTest, Examples) {
  const std::vector<double> p = {0.5, 0.3, 0.2};
  const ChainWeights full = GeometricTransfer(p, std::vector<int>{0}, 1.0);
  for (double v : full) EXPECT_NEAR(v, 1.0 / 3, 1e-15);

  const ChainWeights near =
      GeometricTransfer(p, std::vector<int>{0, 1, 2}, 1e-9);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(near[i], p[i], 1e-6);

  const ChainWeights q = GeometricTransfer(p, std::vector<int>{0, 2}, 0.3);
  EXPECT_NEAR(q[0], 0.45 / 0.79, 1e-12);
  EXPECT_NEAR(q[1], 0.10 / 0.79, 1e-12);
  EXPECT_NEAR(q[2], 0.24 / 0.79, 1e-12);
  EXPECT_NEAR(q[0], 0.5696, 1e-4);
  EXPECT_NEAR(q[1], 0.1266, 1e-4);
  EXPECT_NEAR(q[2], 0.3038, 1e-4);

  EXPECT_THROW(GeometricTransfer(p, std::vector<int>{0}, 0.0),
               std::invalid_argument);
  EXPECT_THROW(GeometricTransfer(p, std::vector<int>{0}, 1.5),
               std::invalid_argument);
}

TEST(GeometricTransferTest, FloorAndSharedBound) {
  CounterRng rng(21, Stream::kTest);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + rng.UniformInt(30);
    std::vector<double> p(n + 1);
    double sum = 0.0;
    for (double& v : p) sum += v = -std::log(1.0 - rng.Uniform());
    for (double& v : p) v /= sum;
    std::vector<int> shared = {0};
    for (int i = 1; i < n; ++i) {
      if (rng.Bernoulli(0.5)) shared.push_back(i);
    }
    shared.push_back(n);
    const double alpha = std::exp(rng.Uniform(std::log(1e-6), 0.0));
    const ChainWeights q = GeometricTransfer(p, shared, alpha);
    for (double v : q) EXPECT_GE(v, alpha / (n + 1));
    for (int i : shared) EXPECT_GE(q[i], (1 - alpha) * p[i] + alpha / (n + 1));
  }
}

TEST(FixedShareUpdateTest, Examples) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> losses = {0.0, std::log(2.0)};
  EXPECT_EQ(FixedShareUpdate(p, losses, 1.0, 0.0), MwUpdate(p, losses, 1.0));
  const ChainWeights u = FixedShareUpdate(p, losses, 1.0, 1.0);
  EXPECT_NEAR(u[0], 0.5, 1e-15);
  const ChainWeights h = FixedShareUpdate(p, losses, 1.0, 0.5);
  EXPECT_NEAR(h[0], 7.0 / 12, 1e-15);
  EXPECT_NEAR(h[1], 5.0 / 12, 1e-15);
}

TEST(MirrorAscentYTest, Examples) {
  const MaximizerDomain d = MaximizerDomain::Box(2, -1.0, 1.0);
  const std::vector<double> y = {0.25, -0.5};
  EXPECT_EQ(MirrorAscentY(y, std::vector<double>{0, 0}, 0.5, d), y);
  EXPECT_EQ(MirrorAscentY(y, std::vector<double>{10, -10}, 0.5, d),
            (std::vector<double>{1.0, -1.0}));
  EXPECT_EQ(MirrorAscentY(std::vector<double>{0.0},
                          std::vector<double>{3.0}, 0.5,
                          MaximizerDomain::Box(1, -1.0, 1.0)),
            (std::vector<double>{1.0}));
}

TEST(ContinuousStepTest, OlmdaExample) {
  const GameRound r = ModularRound({1.0, -1.0});
  ContinuousState s = ContinuousState::Initial(2, r.domain);
  const Play play = OlmdaStep(s, r, StepSizes{0.1, 0.1});
  EXPECT_EQ(play.x, (ThresholdPoint{0.5, 0.5}));
  EXPECT_NEAR(s.x[0], 0.4, 1e-15);
  EXPECT_NEAR(s.x[1], 0.6, 1e-15);
}

TEST(ContinuousStepTest, ZeroGradientAndClamp) {
  const GameRound zero = ModularRound({0.0, 0.0});
  ContinuousState s = ContinuousState::Initial(2, zero.domain);
  OgdStep(s, zero, StepSizes{0.3, 0.3});
  EXPECT_EQ(s.x, (ThresholdPoint{0.5, 0.5}));
  const GameRound push = ModularRound({5.0, -5.0});
  OgdStep(s, push, StepSizes{1.0, 1.0});
  EXPECT_EQ(s.x, (ThresholdPoint{0.0, 1.0}));
}

TEST(ContinuousStepTest, OneDimensionalConvergence) {
  const int horizon = 10000;
  const StepSizes steps = StepSizes::Defaults(1, horizon);
  for (double c : {0.7, -0.4}) {
    const GameRound r = ModularRound({c});
    ContinuousState s = ContinuousState::Initial(1, r.domain);
    for (int t = 0; t < horizon; ++t) OgdStep(s, r, steps);
    const double target = c > 0 ? 0.0 : 1.0;
    EXPECT_LE(std::abs(s.x[0] - target), 1.0 / std::sqrt(horizon));
  }
}

TEST(CamwTest, StationaryVariantsCoincide) {
  MarginGameParams p;
  p.n = 8;
  p.horizon = 500;
  p.seed = 4;
  const GameInstance g = GenMarginGame(p);
  const StepSizes steps = StepSizes::Defaults(8, 500);
  CamwLearner cold(8, g.rounds[0].domain, steps, CamwVariant::kCold, 0.01);
  CamwLearner warm(8, g.rounds[0].domain, steps, CamwVariant::kWarmUniformFloor,
                   0.01);
  CamwLearner geo(8, g.rounds[0].domain, steps, CamwVariant::kGeometric, 0.01);
  for (const GameRound& r : g.rounds) {
    const Play a = cold.Step(r), b = warm.Step(r), c = geo.Step(r);
    ASSERT_EQ(a.x, b.x);
    ASSERT_EQ(a.x, c.x);
    ASSERT_EQ(cold.state().weights, geo.state().weights);
  }
  EXPECT_EQ(cold.observed_switches(), 0);
}

TEST(CamwTest, ResetBehaviourOnSwitch) {
  const GameRound a = ModularRound({1.0, 2.0, 3.0});
  const GameRound b = ModularRound({3.0, 2.0, 1.0});
  const std::vector<double> y = {0.5};
  const StepSizes steps{0.5, 0.1};

  CamwState cold = CamwState::Initial(3, 0.01, RestartPolicy::Adaptive());
  CamwStep(cold, a, CamwVariant::kCold, y);
  CamwObserve(cold, a, steps, y);
  CamwStep(cold, b, CamwVariant::kCold, y);
  for (double v : cold.weights) EXPECT_DOUBLE_EQ(v, 0.25);
  EXPECT_EQ(cold.observed_switches, 1);

  CamwState none = CamwState::Initial(3, 0.01, RestartPolicy::None());
  CamwStep(none, a, CamwVariant::kCold, y);
  CamwObserve(none, a, steps, y);
  const ChainWeights before = none.weights;
  CamwStep(none, b, CamwVariant::kCold, y);
  EXPECT_EQ(none.weights, before);
  EXPECT_EQ(none.observed_switches, 1);
  EXPECT_EQ(none.resets, 0);

  // Reversal shares only the trivial prefixes 0 and n.
  CamwState geo = CamwState::Initial(3, 0.1, RestartPolicy::Adaptive());
  CamwStep(geo, a, CamwVariant::kGeometric, y);
  CamwObserve(geo, a, steps, y);
  const ChainWeights expected =
      GeometricTransfer(geo.weights, std::vector<int>{0, 3}, 0.1);
  CamwStep(geo, b, CamwVariant::kGeometric, y);
  EXPECT_EQ(geo.weights, expected);

  CamwState ws = CamwState::Initial(3, 0.1, RestartPolicy::Adaptive());
  CamwStep(ws, a, CamwVariant::kWarmUniformFloor, y);
  CamwObserve(ws, a, steps, y);
  const ChainWeights floor_only =
      GeometricTransfer(ws.weights, std::vector<int>{0, 1, 2, 3}, 0.1);
  CamwStep(ws, b, CamwVariant::kWarmUniformFloor, y);
  EXPECT_EQ(ws.weights, floor_only);
}

TEST(CamwTest, PeriodicPolicyResets) {
  const GameRound a = ModularRound({1.0, 2.0});
  const std::vector<double> y = {0.5};
  CamwState s = CamwState::Initial(2, 0.01, RestartPolicy::Periodic(3));
  for (int t = 0; t < 10; ++t) {
    CamwStep(s, a, CamwVariant::kCold, y);
    CamwObserve(s, a, StepSizes{0.5, 0.1}, y);
  }
  EXPECT_EQ(s.resets, 3);
  EXPECT_EQ(s.observed_switches, 0);
}

// Standard regret ceiling for plain MW on a fixed chain.
TEST(MwRegretTest, CeilingOnAdversarialSequences) {
  for (int n : {5, 20}) {
    const int horizon = 10000;
    const double m = 1.0;
    const double eta = std::sqrt(std::log(n + 1.0) / horizon);
    for (uint64_t seed = 0; seed < 50; ++seed) {
      CounterRng rng(seed * 31 + n, Stream::kTest);
      std::vector<double> p(n + 1, 1.0 / (n + 1)), cum(n + 1, 0.0);
      std::vector<double> losses(n + 1);
      double learner = 0.0;
      // Bias a random expert so the best vertex is nontrivial.
      const int good = rng.UniformInt(n + 1);
      for (int t = 0; t < horizon; ++t) {
        for (int i = 0; i <= n; ++i) {
          losses[i] = m * (2.0 * rng.Uniform() - 1.0) - (i == good ? 0.05 : 0.0);
          losses[i] = std::clamp(losses[i], -m, m);
        }
        for (int i = 0; i <= n; ++i) {
          learner += p[i] * losses[i];
          cum[i] += losses[i];
        }
        p = MwUpdate(p, losses, eta);
      }
      const double best = *std::min_element(cum.begin(), cum.end());
      EXPECT_LE(learner - best, 2 * m * std::sqrt(horizon * std::log(n + 1.0)));
    }
  }
}

TEST(LearnerTest, DeterministicPlays) {
  MarginGameParams p;
  p.n = 10;
  p.horizon = 300;
  p.switches = 5;
  p.seed = 2;
  const GameInstance g = GenMarginGame(p);
  const StepSizes steps = StepSizes::Defaults(10, 300);
  auto run = [&](auto make) {
    std::unique_ptr<Learner> l = make();
    std::vector<double> xs;
    for (const GameRound& r : g.rounds) {
      const Play play = l->Step(r);
      xs.insert(xs.end(), play.x.begin(), play.x.end());
    }
    return xs;
  };
  const MaximizerDomain& d = g.rounds[0].domain;
  auto geo = [&] {
    return std::make_unique<CamwLearner>(10, d, steps, CamwVariant::kGeometric, 0.01);
  };
  auto fs = [&] { return std::make_unique<FixedShareLearner>(10, d, steps, 0.01); };
  auto ogd = [&] {
    return std::make_unique<ContinuousLearner>(ContinuousLearner::Kind::kOgd, 10, d,
                                               steps);
  };
  EXPECT_EQ(run(geo), run(geo));
  EXPECT_EQ(run(fs), run(fs));
  EXPECT_EQ(run(ogd), run(ogd));
}

TEST(LearnerTest, CamwDetectsDesignedSwitches) {
  MarginGameParams p;
  p.n = 12;
  p.horizon = 2000;
  p.switches = 7;
  p.seed = 8;
  const GameInstance g = GenMarginGame(p);
  CamwLearner cold(12, g.rounds[0].domain, StepSizes::Defaults(12, 2000),
                   CamwVariant::kCold, 0.01);
  for (const GameRound& r : g.rounds) cold.Step(r);
  EXPECT_EQ(cold.observed_switches(), 7);
  EXPECT_EQ(cold.state().resets, 7);
}

}  // namespace
}  // namespace polyreg
