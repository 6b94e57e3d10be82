// nnet/tdnnf.h

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

#ifndef CHAINLET_NNET_TDNNF_H_
#define CHAINLET_NNET_TDNNF_H_

#include <string>
#include <vector>

#include "nnet/params.h"
#include "numerics/tape.h"

namespace chainlet {

struct TdnnfConfig {
  int num_layers = 3;
  int hidden_dim = 1024;
  int bottleneck_dim = 128;
  int input_dim = 80;
  int output_dim = 0;  // num_pdfs, set at assembly
  std::vector<int> context_offsets = {-1, 0, 1};  // per layer
  // Layer index (0-based) at which the subsampling stride applies.
  int subsample_layer = 1;

  void Validate() const;
  // 1 + num_layers * (max offset - min offset), at subsampling 1.
  int ReceptiveField() const;

  // Presets: tdnnf-large (12 layers, 1024/128), tdnnf-small (7 layers,
  // 1024/128), tdnnf-tiny (3 layers, 128/32).
  static TdnnfConfig Preset(const std::string &name);
};

void CreateTdnnfParams(const TdnnfConfig &config, uint64_t seed,
                       const std::string &prefix, ParamStore *params);

// Factorized stack: per layer splice at the context offsets, a
// semi-orthogonal bottleneck factor, expansion to hidden width, ReLU,
// per-channel standardization with learned scale/shift, and a residual
// where widths match. Final affine to output_dim. Output has
// ceil(T / subsampling_factor) rows.
Tape::Node *TdnnfForward(const TdnnfConfig &config, ParamStore *params,
                         const std::string &prefix, Tape *tape,
                         Tape::Node *input, int subsampling_factor = 1);

// One constraint iteration M <- M - 1/4 (M M^T - alpha I) M with
// alpha = tr(M M^T M M^T) / tr(M M^T), applied to the transposed stored
// factor (rows of M = bottleneck). Degenerate all-zero factors are skipped
// with a warning. Reduces ||M M^T / alpha - I||_F.
void SemiOrthogonalStep(Tensor *factor);

// ||M M^T / alpha - I||_F, the deviation the constraint drives down.
double SemiOrthogonalDefect(const Tensor &factor);

// Applies SemiOrthogonalStep to every bottleneck factor under `prefix`.
void ConstrainTdnnfFactors(const TdnnfConfig &config,
                           const std::string &prefix, ParamStore *params);

}  // namespace chainlet

#endif  // CHAINLET_NNET_TDNNF_H_
