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

// Geometry of the Lovász extension: permutations, chains, threshold points
// and the value/subgradient of the extension of a set function.
//
// Element ids are 0-based throughout the library. A permutation of n
// elements stores the ids 0..n-1; position j (0-based) holds the element
// ranked j+1 in the descending order of a threshold point.

#ifndef POLYREG_LOVASZ_H_
#define POLYREG_LOVASZ_H_

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace polyreg {

class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `order` is a bijection on 0..n-1.
  explicit Permutation(std::vector<int> order);

  static Permutation Identity(int n);
  // Convenience for writing examples with ids 1..n.
  static Permutation FromOneBased(std::initializer_list<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int position) const { return order_[position]; }
  const std::vector<int>& order() const { return order_; }
  // position_of()[e] is the position of element e.
  std::vector<int> Inverse() const;
  std::string ToString() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<int> order_;
};

// A set of element ids, sorted ascending.
using ElementSet = std::vector<int>;

// Nested sets C_0 = {} ⊂ C_1 ⊂ ... ⊂ C_n.
struct Chain {
  std::vector<ElementSet> sets;
};

// Point in [0,1]^n, one coordinate per element.
using ThresholdPoint = std::vector<double>;
// Probability vector over the n+1 vertices of a chain.
using ChainWeights = std::vector<double>;

void ValidateThresholdPoint(std::span<const double> x);
void ValidateChainWeights(std::span<const double> p);

// Payoff f(S, y) of the minimizer, submodular in S and concave in y.
// Implementations must be pure so that instances can be shared across
// worker threads.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual int ground_size() const = 0;
  virtual int y_dim() const = 0;

  // f(S, y) for a sorted id list S.
  virtual double Value(std::span<const int> set,
                       std::span<const double> y) const = 0;

  // Adds scale * d/dy f(S, y) into `out`. The default is a y-free payoff.
  virtual void AddGradY(std::span<const int> set, std::span<const double> y,
                        double scale, std::span<double> out) const;

  // f(C_i, y) for i = 0..n along the chain of `pi`. The default issues
  // exactly n+1 calls to Value; families with cheap prefix structure
  // override it.
  virtual std::vector<double> ChainValues(const Permutation& pi,
                                          std::span<const double> y) const;

  // Sum_i weights[i] * d/dy f(C_i, y) along the chain of `pi`.
  virtual std::vector<double> ChainGradY(const Permutation& pi,
                                         std::span<const double> weights,
                                         std::span<const double> y) const;
};

// Descending by value, ties by ascending id.
Permutation SortPermutation(std::span<const double> x);

Chain ChainOf(const Permutation& pi);

// Telescoping weights p_i = x[pi(i)] - x[pi(i+1)] with x[pi(0)] = 1 and
// x[pi(n+1)] = 0. Inverse of WeightsToThreshold.
ChainWeights ThresholdToWeights(std::span<const double> x,
                                const Permutation& pi);

// x[pi(j)] = sum_{i >= j} p[i] for j = 1..n.
ThresholdPoint WeightsToThreshold(std::span<const double> p,
                                  const Permutation& pi);

double LovaszValue(const SetFunction& f, std::span<const double> x,
                   std::span<const double> y);

// g[pi(i)] = f(C_i, y) - f(C_{i-1}, y) with pi = SortPermutation(x).
std::vector<double> LovaszSubgradientX(const SetFunction& f,
                                       std::span<const double> x,
                                       std::span<const double> y);

// Gradient in y of the extension at (x, y).
std::vector<double> LovaszGradY(const SetFunction& f,
                                std::span<const double> x,
                                std::span<const double> y);

// Orders elements by ascending singleton marginal f({i}, y) - f({}, y),
// ties by ascending id.
Permutation BrPermutation(const SetFunction& f, std::span<const double> y);

// Indices j in 0..n whose prefix sets coincide. Always contains 0 and n.
std::vector<int> SharedPrefixIndices(const Permutation& a,
                                     const Permutation& b);

}  // namespace polyreg

#endif  // POLYREG_LOVASZ_H_
