// train/trainer.h

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

#ifndef CHAINLET_TRAIN_TRAINER_H_
#define CHAINLET_TRAIN_TRAINER_H_

#include <string>

#include "mam/alteration.h"
#include "nnet/model.h"
#include "recognize/per.h"
#include "train/adam.h"
#include "train/manifest.h"
#include "train/schedule.h"

namespace chainlet {

// ---- self-supervised pretraining ----

struct PretrainConfig {
  uint64_t seed = 1;
  std::string manifest_path;
  std::string out_dir;
  TransformerConfig encoder;
  AlterationConfig mam;
  AdamConfig adam;
  double peak_lr = 2e-4;
  double warmup_frac = 0.07;
  int64_t total_steps = 1000;
  int batch_size = 4;
  int64_t checkpoint_every = 0;  // 0: only the final checkpoint
  int64_t max_frames = 0;        // random-crop length for training, 0 = off
  std::string resume_from;       // optional checkpoint to continue from
};

struct PretrainResult {
  std::string final_checkpoint;
  std::string log_path;
  double initial_loss = 0.0;
  double last_window_loss = 0.0;  // mean over the final 100 steps
  int64_t steps_run = 0;
  int64_t skipped_utterances = 0;
};

// Deterministic given (seed, config, manifest): batch composition,
// alterations, dropout and crops are all pure functions of (seed, step,
// batch slot), so a resumed run reproduces a straight run bit-exactly.
PretrainResult Pretrain(const PretrainConfig &config);

// ---- supervised adaptation ----

enum class Criterion { kLfmmi, kCrossEntropy };
std::string CriterionName(Criterion criterion);
Criterion CriterionFromName(const std::string &name);

struct FinetuneConfig {
  uint64_t seed = 1;
  std::string train_manifest;
  std::string out_dir;
  AmMode mode = AmMode::kScratch;
  Criterion criterion = Criterion::kLfmmi;
  std::string pretrained_checkpoint;  // encoder source for non-scratch modes
  TdnnfConfig tdnnf = TdnnfConfig::Preset("tdnnf-tiny");
  int num_content_phones = 12;
  int frame_subsampling_factor = 1;
  bool optional_silence = false;
  AdamConfig adam;
  double head_lr_start = 1e-3;
  double head_lr_end = 3e-5;
  double lr_power = 1.0;
  // The pretrained encoder starts at its own (lower) rate and follows the
  // same decay shape, ending at encoder_lr_start * (head_end / head_start).
  double encoder_lr_start = 3e-5;
  int batch_size = 8;
  int64_t epochs = 6;
  double max_skip_frac = 0.1;
  int constrain_every = 4;  // semi-orthogonal steps, in optimizer steps
  int64_t checkpoint_every = 0;
  std::string resume_from;
};

struct FinetuneResult {
  std::string final_checkpoint;
  std::string log_path;
  double final_epoch_loss = 0.0;
  int64_t steps_run = 0;
  int64_t skipped_utterances = 0;
};

FinetuneResult Finetune(const FinetuneConfig &config);

// ---- acoustic-model checkpoints and evaluation ----

struct LoadedAcousticModel {
  AcousticModel model;
  PhoneBigram bigram;
  int num_phones = 0;
  int64_t step = 0;
};

void SaveAcousticModel(const std::string &path, AcousticModel *model,
                       const PhoneBigram &bigram, int num_phones, int64_t step,
                       AdamOptimizer *optimizer);
LoadedAcousticModel LoadAcousticModel(const std::string &path);

// Viterbi-decodes every utterance of a labeled manifest over the model's
// denominator graph and scores phone error rate against the transcripts.
PerReport EvaluateModel(LoadedAcousticModel *loaded, const Manifest &manifest);

}  // namespace chainlet

#endif  // CHAINLET_TRAIN_TRAINER_H_
