// numerics/logmath.h

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

#ifndef CHAINLET_NUMERICS_LOGMATH_H_
#define CHAINLET_NUMERICS_LOGMATH_H_

#include <cmath>
#include <limits>
#include <span>

namespace chainlet {

// Log-semiring zero. -inf is a first-class value here: it absorbs under
// addition-of-logs and is the identity under LogAdd.
constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; exact identity when either side is
// kLogZero.
inline double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log sum_i exp(values[i]) via max-shift. Empty input is a contract
// violation; all -inf yields -inf.
double LogSumExp(std::span<const double> values);

}  // namespace chainlet

#endif  // CHAINLET_NUMERICS_LOGMATH_H_
