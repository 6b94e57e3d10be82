// tests/test-util.h

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

#ifndef CHAINLET_TESTS_TEST_UTIL_H_
#define CHAINLET_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

#include "base/rng.h"
#include "graphs/fst.h"
#include "numerics/tensor.h"

namespace chainlet {
namespace testing {

// Random acceptor guaranteed to accept length-T paths: a linear backbone of
// T+1 states with random labels/weights, plus random extra arcs, self-loops
// and finals. Small enough for the enumeration oracle.
inline Fst RandomFst(Rng *rng, int64_t num_frames, int num_pdfs) {
  Fst fst;
  int n = static_cast<int>(num_frames) + 1;
  for (int s = 0; s < n; ++s) fst.AddState();
  fst.SetStart(0);
  for (int s = 0; s + 1 < n; ++s)
    fst.AddArc(s, s + 1, static_cast<int>(rng->NextInt(0, num_pdfs - 1)),
               -rng->NextDouble());
  fst.SetFinal(n - 1, -rng->NextDouble());
  int extra = static_cast<int>(rng->NextInt(n, 2 * n));
  for (int e = 0; e < extra; ++e) {
    int src = static_cast<int>(rng->NextInt(0, n - 1));
    int dst = static_cast<int>(rng->NextInt(0, n - 1));
    fst.AddArc(src, dst, static_cast<int>(rng->NextInt(0, num_pdfs - 1)),
               -2.0 * rng->NextDouble());
  }
  if (rng->NextDouble() < 0.5)
    fst.SetFinal(static_cast<int>(rng->NextInt(1, n - 1)), -rng->NextDouble());
  fst.BuildIndex();
  return fst;
}

inline Tensor RandomLogits(Rng *rng, int64_t num_frames, int num_pdfs,
                           double scale = 1.0) {
  Tensor logits({num_frames, static_cast<int64_t>(num_pdfs)});
  logits.FillGaussian(rng, 0.0, scale);
  return logits;
}

// Unique scratch directory under the system temp root, removed on
// destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("chainlet-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string &name = "") const {
    return name.empty() ? dir_.string() : (dir_ / name).string();
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace testing
}  // namespace chainlet

#endif  // CHAINLET_TESTS_TEST_UTIL_H_
