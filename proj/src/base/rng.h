// base/rng.h

// Copyright 2026  The chainlet authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CHAINLET_BASE_RNG_H_
#define CHAINLET_BASE_RNG_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace chainlet {

// Deterministic generator with a fixed algorithm (splitmix64 core), so that
// sampled values are reproducible across platforms and standard libraries.
// Every consumer derives its own stream from (seed, purpose, indices); no
// generator state is ever shared between pipeline stages.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextUint64();

  // Uniform in [0, 1).
  double NextDouble();

  // Uniform integer in [lo, hi] inclusive. Requires lo <= hi.
  int64_t NextInt(int64_t lo, int64_t hi);

  // Standard normal via Box-Muller (no internal caching).
  double NextGaussian();

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T> *items) {
    for (int64_t i = static_cast<int64_t>(items->size()) - 1; i > 0; --i) {
      int64_t j = NextInt(0, i);
      std::swap((*items)[i], (*items)[j]);
    }
  }

 private:
  uint64_t state_;
};

// Stable 64-bit hash combiner used to derive independent substreams:
// DeriveSeed(seed, "mam", step, utt) gives the alteration stream for one
// utterance at one training step.
uint64_t HashCombine(uint64_t h, uint64_t value);
uint64_t HashString(std::string_view s);

inline uint64_t DeriveSeed(uint64_t seed, std::string_view purpose,
                           uint64_t a = 0, uint64_t b = 0) {
  uint64_t h = HashCombine(seed, HashString(purpose));
  h = HashCombine(h, a);
  h = HashCombine(h, b);
  return h;
}

}  // namespace chainlet

#endif  // CHAINLET_BASE_RNG_H_
