// train/checkpoint.h

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

#ifndef CHAINLET_TRAIN_CHECKPOINT_H_
#define CHAINLET_TRAIN_CHECKPOINT_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graphs/bigram.h"
#include "json.hpp"
#include "nnet/params.h"
#include "nnet/tdnnf.h"
#include "nnet/transformer.h"

namespace chainlet {

// Checkpoint layout: 8 magic bytes, u64 header length, JSON header, u64
// tensor count, then (length-prefixed name, tensor blob) pairs. Writing the
// same state twice produces identical bytes.
inline constexpr char kCheckpointMagic[8] = {'C', 'L', 'C', 'K',
                                             'P', 'T', '0', '1'};

void SaveCheckpoint(
    const std::string &path, const nlohmann::json &header,
    const std::vector<std::pair<std::string, const Tensor *>> &tensors);

struct LoadedCheckpoint {
  nlohmann::json header;
  std::map<std::string, Tensor> tensors;
};

LoadedCheckpoint LoadCheckpoint(const std::string &path);

// Copies checkpoint tensors with the given prefix into existing store
// parameters, validating shapes; errors name the first offending tensor.
void LoadParamsInto(const LoadedCheckpoint &checkpoint, ParamStore *params,
                    const std::string &prefix);

// Config <-> JSON for checkpoint headers and run configs.
nlohmann::json TransformerConfigToJson(const TransformerConfig &config);
TransformerConfig TransformerConfigFromJson(const nlohmann::json &j);
nlohmann::json TdnnfConfigToJson(const TdnnfConfig &config);
TdnnfConfig TdnnfConfigFromJson(const nlohmann::json &j);
nlohmann::json BigramToJson(const PhoneBigram &bigram);
PhoneBigram BigramFromJson(const nlohmann::json &j);

}  // namespace chainlet

#endif  // CHAINLET_TRAIN_CHECKPOINT_H_
