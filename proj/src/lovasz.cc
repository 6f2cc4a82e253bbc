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

#include "polyreg/lovasz.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polyreg {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int n = size();
  std::vector<bool> seen(n, false);
  for (int e : order_) {
    if (e < 0 || e >= n || seen[e]) {
      throw std::invalid_argument("Permutation: not a bijection on 0..n-1: " +
                                  ToString());
    }
    seen[e] = true;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return Permutation(std::move(order));
}

Permutation Permutation::FromOneBased(std::initializer_list<int> order) {
  std::vector<int> v;
  v.reserve(order.size());
  for (int e : order) v.push_back(e - 1);
  return Permutation(std::move(v));
}

std::vector<int> Permutation::Inverse() const {
  std::vector<int> inv(order_.size());
  for (int j = 0; j < size(); ++j) inv[order_[j]] = j;
  return inv;
}

std::string Permutation::ToString() const {
  std::string s = "(";
  for (size_t j = 0; j < order_.size(); ++j) {
    if (j > 0) s += ",";
    s += std::to_string(order_[j]);
  }
  return s + ")";
}

void ValidateThresholdPoint(std::span<const double> x) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("threshold point outside [0,1]^n");
    }
  }
}

void ValidateChainWeights(std::span<const double> p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("chain weights must be finite and >= 0");
    }
    sum += v;
  }
  if (p.empty() || std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("chain weights must sum to 1");
  }
}

void SetFunction::AddGradY(std::span<const int> /*set*/,
                           std::span<const double> /*y*/, double /*scale*/,
                           std::span<double> /*out*/) const {}

std::vector<double> SetFunction::ChainValues(const Permutation& pi,
                                             std::span<const double> y) const {
  const int n = pi.size();
  std::vector<double> values;
  values.reserve(n + 1);
  ElementSet prefix;
  prefix.reserve(n);
  values.push_back(Value(prefix, y));
  for (int j = 0; j < n; ++j) {
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), pi[j]),
                  pi[j]);
    values.push_back(Value(prefix, y));
  }
  return values;
}

std::vector<double> SetFunction::ChainGradY(const Permutation& pi,
                                            std::span<const double> weights,
                                            std::span<const double> y) const {
  std::vector<double> grad(y_dim(), 0.0);
  if (grad.empty()) return grad;
  const int n = pi.size();
  ElementSet prefix;
  prefix.reserve(n);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), pi[i - 1]),
                    pi[i - 1]);
    }
    if (weights[i] != 0.0) AddGradY(prefix, y, weights[i], grad);
  }
  return grad;
}

Permutation SortPermutation(std::span<const double> x) {
  ValidateThresholdPoint(x);
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });
  return Permutation(std::move(order));
}

Chain ChainOf(const Permutation& pi) {
  Chain chain;
  chain.sets.reserve(pi.size() + 1);
  ElementSet prefix;
  chain.sets.push_back(prefix);
  for (int j = 0; j < pi.size(); ++j) {
    prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), pi[j]),
                  pi[j]);
    chain.sets.push_back(prefix);
  }
  return chain;
}

ChainWeights ThresholdToWeights(std::span<const double> x,
                                const Permutation& pi) {
  const int n = pi.size();
  ChainWeights p(n + 1);
  double above = 1.0;
  for (int i = 0; i < n; ++i) {
    p[i] = above - x[pi[i]];
    above = x[pi[i]];
  }
  p[n] = above;
  return p;
}

ThresholdPoint WeightsToThreshold(std::span<const double> p,
                                  const Permutation& pi) {
  const int n = pi.size();
  if (static_cast<int>(p.size()) != n + 1) {
    throw std::invalid_argument("WeightsToThreshold: size mismatch");
  }
  ValidateChainWeights(p);
  ThresholdPoint x(n);
  double tail = p[n];
  for (int j = n - 1; j >= 0; --j) {
    x[pi[j]] = std::min(1.0, tail);
    tail += p[j];
  }
  return x;
}

double LovaszValue(const SetFunction& f, std::span<const double> x,
                   std::span<const double> y) {
  const Permutation pi = SortPermutation(x);
  const std::vector<double> values = f.ChainValues(pi, y);
  const ChainWeights p = ThresholdToWeights(x, pi);
  double total = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] != 0.0) total += p[i] * values[i];
  }
  return total;
}

std::vector<double> LovaszSubgradientX(const SetFunction& f,
                                       std::span<const double> x,
                                       std::span<const double> y) {
  const Permutation pi = SortPermutation(x);
  const std::vector<double> values = f.ChainValues(pi, y);
  std::vector<double> g(x.size());
  for (int i = 0; i < pi.size(); ++i) g[pi[i]] = values[i + 1] - values[i];
  return g;
}

std::vector<double> LovaszGradY(const SetFunction& f,
                                std::span<const double> x,
                                std::span<const double> y) {
  const Permutation pi = SortPermutation(x);
  return f.ChainGradY(pi, ThresholdToWeights(x, pi), y);
}

Permutation BrPermutation(const SetFunction& f, std::span<const double> y) {
  const int n = f.ground_size();
  const double empty = f.Value({}, y);
  std::vector<double> marginal(n);
  for (int i = 0; i < n; ++i) {
    const int singleton[1] = {i};
    marginal[i] = f.Value(singleton, y) - empty;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return marginal[a] < marginal[b]; });
  return Permutation(std::move(order));
}

std::vector<int> SharedPrefixIndices(const Permutation& a,
                                     const Permutation& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("SharedPrefixIndices: size mismatch");
  }
  const int n = a.size();
  // Prefixes of length j coincide iff max position in b of a[0..j-1] is j-1.
  const std::vector<int> pos_b = b.Inverse();
  std::vector<int> shared = {0};
  int max_pos = -1;
  for (int j = 1; j <= n; ++j) {
    max_pos = std::max(max_pos, pos_b[a[j - 1]]);
    if (max_pos == j - 1) shared.push_back(j);
  }
  return shared;
}

}  // namespace polyreg
