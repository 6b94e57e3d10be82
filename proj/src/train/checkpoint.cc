// train/checkpoint.cc

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

#include "train/checkpoint.h"

#include <cstring>
#include <fstream>

#include "base/error.h"
#include "base/io.h"

namespace chainlet {

using nlohmann::json;

void SaveCheckpoint(
    const std::string &path, const json &header,
    const std::vector<std::pair<std::string, const Tensor *>> &tensors) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) CL_DATA_ERR << "cannot write checkpoint " << path;
  os.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  std::string header_bytes = header.dump();
  WriteLengthPrefixedString(os, header_bytes);
  WriteUint64(os, tensors.size());
  for (const auto &[name, tensor] : tensors) {
    CL_REQUIRE(tensor != nullptr);
    WriteLengthPrefixedString(os, name);
    tensor->Write(os);
  }
  if (!os) CL_DATA_ERR << "short write to " << path;
}

LoadedCheckpoint LoadCheckpoint(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) CL_DATA_ERR << "cannot open checkpoint " << path;
  char magic[sizeof(kCheckpointMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
    CL_DATA_ERR << path << ": bad checkpoint magic";
  LoadedCheckpoint checkpoint;
  std::string header_bytes = ReadLengthPrefixedString(is);
  try {
    checkpoint.header = json::parse(header_bytes);
  } catch (const json::parse_error &e) {
    CL_DATA_ERR << path << ": corrupt checkpoint header: " << e.what();
  }
  uint64_t count = ReadUint64(is);
  if (count > (1 << 20)) CL_DATA_ERR << path << ": implausible tensor count";
  for (uint64_t i = 0; i < count; ++i) {
    std::string name = ReadLengthPrefixedString(is);
    checkpoint.tensors.emplace(name, Tensor::Read(is));
  }
  return checkpoint;
}

void LoadParamsInto(const LoadedCheckpoint &checkpoint, ParamStore *params,
                    const std::string &prefix) {
  for (const std::string &name : params->NamesWithPrefix(prefix)) {
    auto it = checkpoint.tensors.find(name);
    if (it == checkpoint.tensors.end())
      CL_DATA_ERR << "checkpoint is missing tensor " << name;
    Tensor *target = params->Get(name);
    if (it->second.Shape() != target->Shape()) {
      std::string want, got;
      for (int64_t d : target->Shape()) want += std::to_string(d) + " ";
      for (int64_t d : it->second.Shape()) got += std::to_string(d) + " ";
      CL_DATA_ERR << "shape mismatch for tensor " << name << ": expected [ "
                  << want << "], checkpoint has [ " << got << "]";
    }
    target->Values() = it->second.Values();
  }
}

json TransformerConfigToJson(const TransformerConfig &config) {
  return json{{"num_layers", config.num_layers},
              {"num_heads", config.num_heads},
              {"head_dim", config.head_dim},
              {"ff_dim", config.ff_dim},
              {"input_dim", config.input_dim},
              {"dropout_prob", config.dropout_prob}};
}

TransformerConfig TransformerConfigFromJson(const json &j) {
  TransformerConfig config;
  config.num_layers = j.at("num_layers").get<int>();
  config.num_heads = j.at("num_heads").get<int>();
  config.head_dim = j.at("head_dim").get<int>();
  config.ff_dim = j.at("ff_dim").get<int>();
  config.input_dim = j.at("input_dim").get<int>();
  config.dropout_prob = j.at("dropout_prob").get<double>();
  config.Validate();
  return config;
}

json TdnnfConfigToJson(const TdnnfConfig &config) {
  return json{{"num_layers", config.num_layers},
              {"hidden_dim", config.hidden_dim},
              {"bottleneck_dim", config.bottleneck_dim},
              {"input_dim", config.input_dim},
              {"output_dim", config.output_dim},
              {"context_offsets", config.context_offsets},
              {"subsample_layer", config.subsample_layer}};
}

TdnnfConfig TdnnfConfigFromJson(const json &j) {
  TdnnfConfig config;
  config.num_layers = j.at("num_layers").get<int>();
  config.hidden_dim = j.at("hidden_dim").get<int>();
  config.bottleneck_dim = j.at("bottleneck_dim").get<int>();
  config.input_dim = j.at("input_dim").get<int>();
  config.output_dim = j.at("output_dim").get<int>();
  config.context_offsets = j.at("context_offsets").get<std::vector<int>>();
  config.subsample_layer = j.at("subsample_layer").get<int>();
  return config;
}

json BigramToJson(const PhoneBigram &bigram) {
  return json{{"num_phones", bigram.num_phones},
              {"start_logp", bigram.start_logp},
              {"trans_logp", bigram.trans_logp},
              {"end_logp", bigram.end_logp}};
}

PhoneBigram BigramFromJson(const json &j) {
  PhoneBigram bigram;
  bigram.num_phones = j.at("num_phones").get<int>();
  bigram.start_logp = j.at("start_logp").get<std::vector<double>>();
  bigram.trans_logp = j.at("trans_logp").get<std::vector<double>>();
  bigram.end_logp = j.at("end_logp").get<std::vector<double>>();
  const auto p = static_cast<size_t>(bigram.num_phones);
  if (bigram.start_logp.size() != p || bigram.trans_logp.size() != p * p ||
      bigram.end_logp.size() != p)
    CL_DATA_ERR << "inconsistent bigram tables in checkpoint";
  return bigram;
}

}  // namespace chainlet
