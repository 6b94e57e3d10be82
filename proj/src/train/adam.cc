// train/adam.cc

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

#include "train/adam.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

AdamOptimizer::AdamOptimizer(std::vector<Entry> entries, int num_groups,
                             AdamConfig config)
    : entries_(std::move(entries)), num_groups_(num_groups), config_(config) {
  CL_REQUIRE(num_groups_ >= 1);
  for (const Entry &entry : entries_) {
    CL_REQUIRE(entry.param != nullptr);
    CL_REQUIRE(entry.param->requires_grad);
    CL_REQUIRE(entry.group >= 0 && entry.group < num_groups_);
    first_.emplace_back(entry.param->Shape());
    second_.emplace_back(entry.param->Shape());
  }
}

bool AdamOptimizer::Step(const std::vector<double> &lr_per_group) {
  CL_REQUIRE(static_cast<int>(lr_per_group.size()) == num_groups_);
  // All-or-nothing: a non-finite gradient anywhere skips the whole step so
  // the moment buffers never absorb garbage.
  for (size_t i = 0; i < entries_.size(); ++i) {
    Tensor *param = entries_[i].param;
    if (!param->HasGrad()) continue;
    for (double g : param->Grad())
      if (!std::isfinite(g)) {
        ++skipped_;
        ZeroGrads();
        return false;
      }
  }
  ++step_;
  double bias1 = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  double bias2 = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));
  for (size_t i = 0; i < entries_.size(); ++i) {
    Tensor *param = entries_[i].param;
    double lr = lr_per_group[entries_[i].group];
    double *m = first_[i].Data();
    double *v = second_[i].Data();
    double *x = param->Data();
    // Untouched grads decay the moments exactly like zero gradients.
    static const std::vector<double> kNoGrad;
    const std::vector<double> &grad =
        param->HasGrad() ? param->Grad() : kNoGrad;
    for (int64_t j = 0; j < param->NumEl(); ++j) {
      double g = grad.empty() ? 0.0 : grad[j];
      m[j] = config_.beta1 * m[j] + (1.0 - config_.beta1) * g;
      v[j] = config_.beta2 * v[j] + (1.0 - config_.beta2) * g * g;
      double m_hat = m[j] / bias1;
      double v_hat = v[j] / bias2;
      x[j] -= lr * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
  ZeroGrads();
  return true;
}

void AdamOptimizer::ZeroGrads() {
  for (const Entry &entry : entries_) entry.param->ZeroGrad();
}

Tensor *AdamOptimizer::FirstMoment(const std::string &name) {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return &first_[i];
  CL_CONTRACT_ERR << "no optimizer state for " << name;
}

Tensor *AdamOptimizer::SecondMoment(const std::string &name) {
  for (size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return &second_[i];
  CL_CONTRACT_ERR << "no optimizer state for " << name;
}

}  // namespace chainlet
