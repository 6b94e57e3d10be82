// train/adam.h

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

#ifndef CHAINLET_TRAIN_ADAM_H_
#define CHAINLET_TRAIN_ADAM_H_

#include <string>
#include <vector>

#include "numerics/tensor.h"

namespace chainlet {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam over named parameter tensors, with per-group learning
// rates (e.g. pretrained encoder vs head). Only trainable tensors may be
// registered; frozen parameters carry no optimizer state at all.
class AdamOptimizer {
 public:
  struct Entry {
    std::string name;
    Tensor *param = nullptr;
    int group = 0;
  };

  AdamOptimizer(std::vector<Entry> entries, int num_groups,
                AdamConfig config = {});

  // One update from the accumulated grads, reading lr_per_group[group] for
  // each tensor, then zeroes the grads. If any gradient entry is non-finite
  // the whole step is skipped (grads still zeroed) and the anomaly counter
  // increments; returns whether the step was applied.
  bool Step(const std::vector<double> &lr_per_group);

  void ZeroGrads();
  int64_t StepCount() const { return step_; }
  int64_t SkippedSteps() const { return skipped_; }
  int NumGroups() const { return num_groups_; }

  // Moment access for checkpointing; restore must preserve the step count.
  const std::vector<Entry> &Entries() const { return entries_; }
  Tensor *FirstMoment(const std::string &name);
  Tensor *SecondMoment(const std::string &name);
  void SetStepCount(int64_t step) { step_ = step; }

 private:
  std::vector<Entry> entries_;
  std::vector<Tensor> first_;
  std::vector<Tensor> second_;
  int num_groups_;
  AdamConfig config_;
  int64_t step_ = 0;
  int64_t skipped_ = 0;
};

}  // namespace chainlet

#endif  // CHAINLET_TRAIN_ADAM_H_
