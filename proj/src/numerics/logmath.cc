// numerics/logmath.cc

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

#include "numerics/logmath.h"

#include "base/error.h"

namespace chainlet {

double LogSumExp(std::span<const double> values) {
  if (values.empty()) CL_CONTRACT_ERR << "LogSumExp of empty input";
  double hi = kLogZero;
  for (double v : values) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      CL_CONTRACT_ERR << "LogSumExp input must be in [-inf, +inf), got " << v;
    if (v > hi) hi = v;
  }
  if (hi == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

}  // namespace chainlet
