// mam/alteration.h

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

#ifndef CHAINLET_MAM_ALTERATION_H_
#define CHAINLET_MAM_ALTERATION_H_

#include <vector>

#include "base/rng.h"
#include "features/fbank.h"
#include "numerics/tape.h"

namespace chainlet {

// Masked-reconstruction corruption parameters. The defaults are the working
// configuration: ~15% of frames altered in 7-frame blocks, per-block action
// zero/replace/keep at 0.8/0.1/0.1, up to 16 zeroed channels, and a 0.15
// chance of additive Gaussian noise with variance 0.2.
struct AlterationConfig {
  int block_len = 7;
  double target_mask_frac = 0.15;
  double zero_prob = 0.8;
  double replace_prob = 0.1;
  double keep_prob = 0.1;
  int max_freq_channels = 16;  // W_c
  double magnitude_prob = 0.15;
  double magnitude_var = 0.2;
  uint64_t rng_seed = 0;

  void Validate() const;
};

struct AlterationOutcome {
  FeatureMatrix corrupted;
  FeatureMatrix clean;
  std::vector<bool> time_mask;  // length T, marked regardless of block action
  std::vector<bool> freq_mask;  // length F
};

enum class BlockAction { kZero = 0, kReplace = 1, kKeep = 2 };

// Draws ceil(frac*T/block_len) block starts uniformly with replacement;
// blocks may overlap and are clipped to [0, T). One categorical draw per
// block chooses zero / replace-with-random-segment / keep. Every frame in
// the union is marked in time_mask. block_actions, when given, records the
// per-block draws for audit statistics.
void TimeAlteration(FeatureMatrix *features, const AlterationConfig &config,
                    Rng *rng, std::vector<bool> *time_mask,
                    std::vector<BlockAction> *block_actions = nullptr);

// Zeroes a block of w consecutive channels across all frames, w uniform on
// {0..W_c} and the start uniform over valid positions. width_out, when
// given, receives w.
void FrequencyAlteration(FeatureMatrix *features,
                         const AlterationConfig &config, Rng *rng,
                         std::vector<bool> *freq_mask,
                         int *width_out = nullptr);

// With probability magnitude_prob adds iid N(0, magnitude_var) to every
// entry; otherwise leaves the features bit-identical. Returns whether the
// noise branch was taken.
bool MagnitudeAlteration(FeatureMatrix *features,
                         const AlterationConfig &config, Rng *rng);

// time -> frequency -> magnitude, preserving a clean copy.
AlterationOutcome MakeTrainingPair(const FeatureMatrix &features,
                                   const AlterationConfig &config, Rng *rng);

// Mean absolute error between prediction and the clean target over all
// T x F entries, differentiable through the tape.
Tape::Node *L1ReconstructionLoss(Tape *tape, Tape::Node *prediction,
                                 const AlterationOutcome &outcome);

}  // namespace chainlet

#endif  // CHAINLET_MAM_ALTERATION_H_
