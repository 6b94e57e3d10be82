// train/schedule.cc

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

#include "train/schedule.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

void ScheduleSpec::Validate() const {
  CL_REQUIRE(total_steps >= 1);
  if (kind == ScheduleKind::kWarmupLinear) {
    CL_REQUIRE(peak > 0.0);
    CL_REQUIRE(warmup_frac > 0.0 && warmup_frac < 1.0);
  } else {
    CL_REQUIRE(start > 0.0 && end > 0.0);
  }
}

ScheduleSpec ScheduleSpec::WarmupLinear(double peak, double warmup_frac,
                                        int64_t total_steps) {
  ScheduleSpec spec;
  spec.kind = ScheduleKind::kWarmupLinear;
  spec.peak = peak;
  spec.warmup_frac = warmup_frac;
  spec.total_steps = total_steps;
  spec.Validate();
  return spec;
}

ScheduleSpec ScheduleSpec::Polynomial(double start, double end, double power,
                                      int64_t total_steps) {
  ScheduleSpec spec;
  spec.kind = ScheduleKind::kPolynomial;
  spec.start = start;
  spec.end = end;
  spec.power = power;
  spec.total_steps = total_steps;
  spec.Validate();
  return spec;
}

std::string ScheduleKindName(ScheduleKind kind) {
  return kind == ScheduleKind::kWarmupLinear ? "warmup-linear" : "polynomial";
}

ScheduleKind ScheduleKindFromName(const std::string &name) {
  if (name == "warmup-linear") return ScheduleKind::kWarmupLinear;
  if (name == "polynomial") return ScheduleKind::kPolynomial;
  CL_CONFIG_ERR << "unknown schedule kind '" << name << "'";
}

double LrAt(const ScheduleSpec &schedule, int64_t step) {
  schedule.Validate();
  CL_REQUIRE(step >= 0);
  auto t = static_cast<double>(schedule.total_steps);
  if (schedule.kind == ScheduleKind::kWarmupLinear) {
    if (step > schedule.total_steps) return 0.0;
    double warmup_end = schedule.warmup_frac * t;
    auto s = static_cast<double>(step);
    if (s <= warmup_end) return schedule.peak * s / warmup_end;
    return schedule.peak * (t - s) / (t - warmup_end);
  }
  if (step > schedule.total_steps) return schedule.end;
  double remaining = 1.0 - static_cast<double>(step) / t;
  return (schedule.start - schedule.end) *
             std::pow(remaining, schedule.power) +
         schedule.end;
}

}  // namespace chainlet
