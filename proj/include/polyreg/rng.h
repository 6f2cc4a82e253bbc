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

#ifndef POLYREG_RNG_H_
#define POLYREG_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace polyreg {

// SplitMix64 finalizer. Bijective on 64-bit words.
uint64_t Mix64(uint64_t z);

// Folds a list of words into one key. Order matters.
uint64_t HashWords(std::initializer_list<uint64_t> words);

// Stream identifiers keep generators for different purposes disjoint even
// when they share a seed.
enum class Stream : uint64_t {
  kSchedule = 1,
  kNoise = 2,
  kPayoff = 3,
  kLearner = 4,
  kTest = 5,
};

// Counter-based generator: draw i of key K is Mix64(K + (i+1) * golden).
// Any draw can be recomputed from (key, index) alone, which is what lets
// per-round randomness be derived without replaying earlier rounds.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}
  CounterRng(uint64_t seed, Stream stream)
      : key_(HashWords({seed, static_cast<uint64_t>(stream)})) {}

  // Stateless access to draw `index` of `key`.
  static uint64_t At(uint64_t key, uint64_t index);
  // Uniform double in [0, 1) with 53 random bits.
  static double UniformAt(uint64_t key, uint64_t index);

  uint64_t NextU64() { return At(key_, counter_++); }
  double Uniform() { return UniformAt(key_, counter_++); }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  int UniformInt(int bound);
  // Uniform integer in [lo, hi].
  int UniformIntInclusive(int lo, int hi) { return lo + UniformInt(hi - lo + 1); }
  int Rademacher() { return (NextU64() >> 63) != 0 ? 1 : -1; }
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[UniformInt(i + 1)]);
    }
  }

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace polyreg

#endif  // POLYREG_RNG_H_
