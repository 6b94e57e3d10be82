// base/rng.cc

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

#include "base/rng.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

uint64_t Rng::NextUint64() {
  // splitmix64 (Steele et al.), public domain reference constants.
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::NextDouble() {
  return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
}

int64_t Rng::NextInt(int64_t lo, int64_t hi) {
  CL_REQUIRE(lo <= hi);
  uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<int64_t>(NextUint64());  // full range
  // Rejection sampling to avoid modulo bias.
  uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t draw;
  do {
    draw = NextUint64();
  } while (draw >= limit);
  return lo + static_cast<int64_t>(draw % range);
}

double Rng::NextGaussian() {
  // u1 in (0, 1] so the log is finite.
  double u1 = (static_cast<double>(NextUint64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = NextDouble();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

uint64_t HashCombine(uint64_t h, uint64_t value) {
  // 64-bit FNV-1a over the value bytes, seeded with h.
  uint64_t x = h ^ 0xCBF29CE484222325ull;
  for (int i = 0; i < 8; ++i) {
    x ^= (value >> (8 * i)) & 0xFF;
    x *= 0x100000001B3ull;
  }
  return x;
}

uint64_t HashString(std::string_view s) {
  uint64_t x = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    x ^= c;
    x *= 0x100000001B3ull;
  }
  return x;
}

}  // namespace chainlet
