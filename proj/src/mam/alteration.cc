// mam/alteration.cc

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

#include "mam/alteration.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"

namespace chainlet {

void AlterationConfig::Validate() const {
  CL_REQUIRE(block_len >= 1);
  CL_REQUIRE(target_mask_frac >= 0.0 && target_mask_frac <= 1.0);
  if (std::abs(zero_prob + replace_prob + keep_prob - 1.0) > 1e-12)
    CL_CONTRACT_ERR << "block action probabilities must sum to 1, got "
                    << zero_prob + replace_prob + keep_prob;
  CL_REQUIRE(zero_prob >= 0.0 && replace_prob >= 0.0 && keep_prob >= 0.0);
  CL_REQUIRE(max_freq_channels >= 0);
  CL_REQUIRE(magnitude_prob >= 0.0 && magnitude_prob <= 1.0);
  CL_REQUIRE(magnitude_var >= 0.0);
}

void TimeAlteration(FeatureMatrix *features, const AlterationConfig &config,
                    Rng *rng, std::vector<bool> *time_mask,
                    std::vector<BlockAction> *block_actions) {
  config.Validate();
  int64_t num_frames = features->NumFrames();
  int64_t num_mel = features->NumMel();
  if (num_frames < config.block_len)
    CL_DATA_ERR << "utterance of " << num_frames
                << " frames shorter than alteration block " << config.block_len;
  time_mask->assign(static_cast<size_t>(num_frames), false);
  if (block_actions != nullptr) block_actions->clear();

  auto num_blocks = static_cast<int64_t>(
      std::ceil(config.target_mask_frac * static_cast<double>(num_frames) /
                static_cast<double>(config.block_len)));
  Tensor &frames = features->frames;
  for (int64_t b = 0; b < num_blocks; ++b) {
    int64_t start = rng->NextInt(0, num_frames - 1);
    int64_t end = std::min<int64_t>(start + config.block_len, num_frames);
    for (int64_t t = start; t < end; ++t) (*time_mask)[t] = true;

    double draw = rng->NextDouble();
    if (block_actions != nullptr)
      block_actions->push_back(draw < config.zero_prob ? BlockAction::kZero
                               : draw < config.zero_prob + config.replace_prob
                                   ? BlockAction::kReplace
                                   : BlockAction::kKeep);
    if (draw < config.zero_prob) {
      for (int64_t t = start; t < end; ++t)
        for (int64_t m = 0; m < num_mel; ++m) frames.At(t, m) = 0.0;
    } else if (draw < config.zero_prob + config.replace_prob) {
      // Replacement source: a contiguous window of the same utterance with
      // matching length.
      int64_t len = end - start;
      int64_t src_start = rng->NextInt(0, num_frames - len);
      std::vector<double> copy(static_cast<size_t>(len * num_mel));
      for (int64_t t = 0; t < len; ++t)
        for (int64_t m = 0; m < num_mel; ++m)
          copy[t * num_mel + m] = frames.At(src_start + t, m);
      for (int64_t t = 0; t < len; ++t)
        for (int64_t m = 0; m < num_mel; ++m)
          frames.At(start + t, m) = copy[t * num_mel + m];
    }
    // else: marked but left unaltered
  }
}

void FrequencyAlteration(FeatureMatrix *features,
                         const AlterationConfig &config, Rng *rng,
                         std::vector<bool> *freq_mask, int *width_out) {
  config.Validate();
  int64_t num_mel = features->NumMel();
  CL_REQUIRE(num_mel >= config.max_freq_channels);
  freq_mask->assign(static_cast<size_t>(num_mel), false);
  int64_t width = rng->NextInt(0, config.max_freq_channels);
  if (width_out != nullptr) *width_out = static_cast<int>(width);
  if (width == 0) return;
  int64_t start = rng->NextInt(0, num_mel - width);
  for (int64_t m = start; m < start + width; ++m) (*freq_mask)[m] = true;
  Tensor &frames = features->frames;
  for (int64_t t = 0; t < features->NumFrames(); ++t)
    for (int64_t m = start; m < start + width; ++m) frames.At(t, m) = 0.0;
}

bool MagnitudeAlteration(FeatureMatrix *features,
                         const AlterationConfig &config, Rng *rng) {
  config.Validate();
  if (rng->NextDouble() >= config.magnitude_prob) return false;
  double stddev = std::sqrt(config.magnitude_var);
  Tensor &frames = features->frames;
  for (int64_t i = 0; i < frames.NumEl(); ++i)
    frames.Data()[i] += stddev * rng->NextGaussian();
  return true;
}

AlterationOutcome MakeTrainingPair(const FeatureMatrix &features,
                                   const AlterationConfig &config, Rng *rng) {
  AlterationOutcome outcome;
  outcome.clean = features;
  outcome.corrupted = features;
  TimeAlteration(&outcome.corrupted, config, rng, &outcome.time_mask);
  FrequencyAlteration(&outcome.corrupted, config, rng, &outcome.freq_mask);
  MagnitudeAlteration(&outcome.corrupted, config, rng);
  return outcome;
}

Tape::Node *L1ReconstructionLoss(Tape *tape, Tape::Node *prediction,
                                 const AlterationOutcome &outcome) {
  if (!prediction->Value().SameShape(outcome.clean.frames))
    CL_CONTRACT_ERR << "prediction shape does not match clean target";
  Tape::Node *target = tape->Leaf(outcome.clean.frames, false);
  return tape->MeanAbsDiff(prediction, target);
}

}  // namespace chainlet
