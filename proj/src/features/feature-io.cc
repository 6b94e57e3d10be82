// features/feature-io.cc

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

#include "features/feature-io.h"

#include <fstream>

#include "base/error.h"
#include "base/io.h"

namespace chainlet {

void WriteFeatureFile(const std::string &path, const FeatureMatrix &features) {
  CL_REQUIRE(features.frames.Rank() == 2);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) CL_DATA_ERR << "cannot write feature file " << path;
  WriteUint64(os, static_cast<uint64_t>(features.NumFrames()));
  WriteUint64(os, static_cast<uint64_t>(features.NumMel()));
  WriteDoubleArray(os, features.frames.Data(),
                   static_cast<size_t>(features.frames.NumEl()));
  if (!os) CL_DATA_ERR << "short write to " << path;
}

FeatureMatrix ReadFeatureFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) CL_DATA_ERR << "cannot open feature file " << path;
  auto rows = static_cast<int64_t>(ReadUint64(is));
  auto cols = static_cast<int64_t>(ReadUint64(is));
  if (rows <= 0 || cols <= 0 || rows > (1 << 24) || cols > (1 << 16))
    CL_DATA_ERR << path << ": implausible feature shape " << rows << " x "
                << cols;
  FeatureMatrix f;
  f.frames = Tensor({rows, cols});
  ReadDoubleArray(is, f.frames.Data(), static_cast<size_t>(rows * cols));
  if (!f.frames.AllFinite()) CL_DATA_ERR << path << ": non-finite features";
  return f;
}

}  // namespace chainlet
