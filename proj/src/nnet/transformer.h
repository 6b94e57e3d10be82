// nnet/transformer.h

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

#ifndef CHAINLET_NNET_TRANSFORMER_H_
#define CHAINLET_NNET_TRANSFORMER_H_

#include <string>

#include "base/rng.h"
#include "nnet/params.h"
#include "numerics/tape.h"

namespace chainlet {

struct TransformerConfig {
  int num_layers = 2;
  int num_heads = 4;
  int head_dim = 64;
  int ff_dim = 256;
  int input_dim = 80;
  double dropout_prob = 0.1;

  int ModelDim() const { return num_heads * head_dim; }
  void Validate() const;

  // Named presets: tr-small (3 layers, 12 heads, ff 3072), tr-med (12
  // layers, 6 heads, ff 1536), tr-tiny (2 layers, 4 heads, ff 256).
  static TransformerConfig Preset(const std::string &name);
};

// Creates all encoder parameters under `prefix` ("encoder." by
// convention); initialization is deterministic in (seed, tensor name).
void CreateTransformerParams(const TransformerConfig &config, uint64_t seed,
                             const std::string &prefix, ParamStore *params);

// Pre-norm bidirectional encoder: input projection plus sinusoidal
// positions, then per layer x += Attn(LN(x)) and x += FF(LN(x)) with full
// multi-head self-attention and a GELU feed-forward, and a final layer
// norm. Deterministic when `train` is false (dropout disabled).
Tape::Node *TransformerForward(const TransformerConfig &config,
                               ParamStore *params, const std::string &prefix,
                               Tape *tape, const Tensor &features, bool train,
                               Rng *dropout_rng);

// Affine model_dim -> input_dim projection for masked reconstruction.
void CreateReconstructionParams(const TransformerConfig &config, uint64_t seed,
                                const std::string &prefix, ParamStore *params);
Tape::Node *ReconstructionHead(const TransformerConfig &config,
                               ParamStore *params, const std::string &prefix,
                               Tape *tape, Tape::Node *hidden);

// Fixed sinusoidal position table (T x model_dim).
Tensor SinusoidalPositions(int64_t num_frames, int model_dim);

}  // namespace chainlet

#endif  // CHAINLET_NNET_TRANSFORMER_H_
