// nnet/model.h

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

#ifndef CHAINLET_NNET_MODEL_H_
#define CHAINLET_NNET_MODEL_H_

#include <optional>
#include <string>

#include "nnet/tdnnf.h"
#include "nnet/transformer.h"

namespace chainlet {

enum class AmMode { kScratch, kFrozenExtractor, kFineTune };

std::string AmModeName(AmMode mode);
AmMode AmModeFromName(const std::string &name);

// Supervised acoustic model: an optional pretrained encoder feeding a TDNNF
// head. In frozen-extractor mode the encoder parameters are excluded from
// gradient updates entirely; scratch mode has no encoder at all.
struct AcousticModel {
  AmMode mode = AmMode::kScratch;
  std::optional<TransformerConfig> encoder_config;
  TdnnfConfig tdnnf_config;
  int frame_subsampling_factor = 1;
  int num_pdfs = 0;
  ParamStore params;

  static constexpr const char *kEncoderPrefix = "encoder.";
  static constexpr const char *kTdnnfPrefix = "tdnnf.";
};

// Wires the configured blocks and initializes parameters from `seed`;
// tdnnf input width is the encoder model dim (or the feature dim for
// scratch). Throws when a non-scratch mode has no encoder config.
AcousticModel AssembleModel(AmMode mode,
                            std::optional<TransformerConfig> encoder_config,
                            TdnnfConfig tdnnf_config, int num_pdfs,
                            int frame_subsampling_factor, uint64_t seed);

// features (T x input_dim) -> pdf log-activations (ceil(T/subsampling) x
// num_pdfs).
Tape::Node *AcousticModelForward(AcousticModel *model, Tape *tape,
                                 const Tensor &features, bool train,
                                 Rng *dropout_rng);

// Self-supervised reconstruction model: encoder plus affine head.
struct PretrainModel {
  TransformerConfig config;
  ParamStore params;
  static constexpr const char *kEncoderPrefix = "encoder.";
  static constexpr const char *kReconPrefix = "recon.";
};

PretrainModel MakePretrainModel(const TransformerConfig &config,
                                uint64_t seed);

// corrupted features -> reconstructed features (T x input_dim).
Tape::Node *PretrainForward(PretrainModel *model, Tape *tape,
                            const Tensor &corrupted, bool train,
                            Rng *dropout_rng);

}  // namespace chainlet

#endif  // CHAINLET_NNET_MODEL_H_
