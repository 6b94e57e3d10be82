// train/schedule.h

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

#ifndef CHAINLET_TRAIN_SCHEDULE_H_
#define CHAINLET_TRAIN_SCHEDULE_H_

#include <cstdint>
#include <string>

namespace chainlet {

enum class ScheduleKind { kWarmupLinear, kPolynomial };

// warmup-linear: lr rises linearly to `peak` over the first warmup_frac of
// total_steps, then decays linearly to zero. polynomial:
// lr = (start - end) * (1 - step/total)^power + end.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::kWarmupLinear;
  int64_t total_steps = 0;
  double peak = 2e-4;         // warmup-linear
  double warmup_frac = 0.07;  // warmup-linear
  double start = 1e-3;        // polynomial
  double end = 3e-5;          // polynomial
  double power = 1.0;         // polynomial

  void Validate() const;

  static ScheduleSpec WarmupLinear(double peak, double warmup_frac,
                                   int64_t total_steps);
  static ScheduleSpec Polynomial(double start, double end, double power,
                                 int64_t total_steps);
};

std::string ScheduleKindName(ScheduleKind kind);
ScheduleKind ScheduleKindFromName(const std::string &name);

// Steps past total clamp to the end value.
double LrAt(const ScheduleSpec &schedule, int64_t step);

}  // namespace chainlet

#endif  // CHAINLET_TRAIN_SCHEDULE_H_
