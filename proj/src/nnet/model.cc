// nnet/model.cc

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

#include "nnet/model.h"

#include "base/error.h"

namespace chainlet {

std::string AmModeName(AmMode mode) {
  switch (mode) {
    case AmMode::kScratch: return "scratch";
    case AmMode::kFrozenExtractor: return "frozen-extractor";
    case AmMode::kFineTune: return "fine-tune";
  }
  CL_CONTRACT_ERR << "invalid mode";
}

AmMode AmModeFromName(const std::string &name) {
  if (name == "scratch") return AmMode::kScratch;
  if (name == "frozen-extractor") return AmMode::kFrozenExtractor;
  if (name == "fine-tune") return AmMode::kFineTune;
  CL_CONFIG_ERR << "unknown acoustic-model mode '" << name << "'";
}

AcousticModel AssembleModel(AmMode mode,
                            std::optional<TransformerConfig> encoder_config,
                            TdnnfConfig tdnnf_config, int num_pdfs,
                            int frame_subsampling_factor, uint64_t seed) {
  CL_REQUIRE(num_pdfs >= 1);
  CL_REQUIRE(frame_subsampling_factor >= 1);
  if (mode != AmMode::kScratch && !encoder_config.has_value())
    CL_CONFIG_ERR << AmModeName(mode) << " mode requires an encoder config";
  if (mode == AmMode::kScratch && encoder_config.has_value())
    CL_CONFIG_ERR << "scratch mode takes no encoder (features feed the TDNNF "
                  << "directly)";

  AcousticModel model;
  model.mode = mode;
  model.encoder_config = encoder_config;
  model.tdnnf_config = tdnnf_config;
  model.frame_subsampling_factor = frame_subsampling_factor;
  model.num_pdfs = num_pdfs;
  model.tdnnf_config.output_dim = num_pdfs;
  if (encoder_config.has_value()) {
    model.tdnnf_config.input_dim = encoder_config->ModelDim();
    CreateTransformerParams(*encoder_config, seed,
                            AcousticModel::kEncoderPrefix, &model.params);
  }
  CreateTdnnfParams(model.tdnnf_config, seed, AcousticModel::kTdnnfPrefix,
                    &model.params);
  if (mode == AmMode::kFrozenExtractor) {
    for (const std::string &name :
         model.params.NamesWithPrefix(AcousticModel::kEncoderPrefix))
      model.params.Get(name)->requires_grad = false;
  }
  return model;
}

Tape::Node *AcousticModelForward(AcousticModel *model, Tape *tape,
                                 const Tensor &features, bool train,
                                 Rng *dropout_rng) {
  Tape::Node *tdnnf_input = nullptr;
  if (model->encoder_config.has_value()) {
    // The frozen-extractor encoder runs in eval mode (no dropout) even
    // during training; fine-tune keeps dropout active.
    bool encoder_train = train && model->mode == AmMode::kFineTune;
    tdnnf_input = TransformerForward(*model->encoder_config, &model->params,
                                     AcousticModel::kEncoderPrefix, tape,
                                     features, encoder_train, dropout_rng);
  } else {
    tdnnf_input = tape->Leaf(features, false);
  }
  return TdnnfForward(model->tdnnf_config, &model->params,
                      AcousticModel::kTdnnfPrefix, tape, tdnnf_input,
                      model->frame_subsampling_factor);
}

PretrainModel MakePretrainModel(const TransformerConfig &config,
                                uint64_t seed) {
  PretrainModel model;
  model.config = config;
  CreateTransformerParams(config, seed, PretrainModel::kEncoderPrefix,
                          &model.params);
  CreateReconstructionParams(config, seed, PretrainModel::kReconPrefix,
                             &model.params);
  return model;
}

Tape::Node *PretrainForward(PretrainModel *model, Tape *tape,
                            const Tensor &corrupted, bool train,
                            Rng *dropout_rng) {
  Tape::Node *hidden =
      TransformerForward(model->config, &model->params,
                         PretrainModel::kEncoderPrefix, tape, corrupted, train,
                         dropout_rng);
  return ReconstructionHead(model->config, &model->params,
                            PretrainModel::kReconPrefix, tape, hidden);
}

}  // namespace chainlet
