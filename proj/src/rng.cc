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

#include "polyreg/rng.h"

#include <stdexcept>

namespace polyreg {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t HashWords(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x6a09e667f3bcc908ULL;
  for (uint64_t w : words) h = Mix64(h ^ Mix64(w + kGolden));
  return h;
}

uint64_t CounterRng::At(uint64_t key, uint64_t index) {
  return Mix64(key + (index + 1) * kGolden);
}

double CounterRng::UniformAt(uint64_t key, uint64_t index) {
  return static_cast<double>(At(key, index) >> 11) * 0x1.0p-53;
}

int CounterRng::UniformInt(int bound) {
  if (bound <= 0) throw std::invalid_argument("UniformInt: bound must be > 0");
  const uint64_t b = static_cast<uint64_t>(bound);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % b;
  uint64_t r;
  do {
    r = NextU64();
  } while (r >= limit);
  return static_cast<int>(r % b);
}

}  // namespace polyreg
