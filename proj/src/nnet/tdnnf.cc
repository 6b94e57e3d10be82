// nnet/tdnnf.cc

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

#include "nnet/tdnnf.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>

#include "base/error.h"

namespace chainlet {

void TdnnfConfig::Validate() const {
  CL_REQUIRE(num_layers >= 1);
  CL_REQUIRE(hidden_dim >= 1 && bottleneck_dim >= 1);
  CL_REQUIRE(input_dim >= 1 && output_dim >= 1);
  CL_REQUIRE(!context_offsets.empty());
  CL_REQUIRE(subsample_layer >= 0);
  // The bottleneck factor must be wide: more input columns than bottleneck
  // rows, which is what the semi-orthogonal constraint assumes.
  int spliced = static_cast<int>(context_offsets.size()) *
                std::min(input_dim, hidden_dim);
  CL_REQUIRE(bottleneck_dim < spliced);
}

int TdnnfConfig::ReceptiveField() const {
  auto [lo, hi] = std::minmax_element(context_offsets.begin(),
                                      context_offsets.end());
  return 1 + num_layers * (*hi - *lo);
}

TdnnfConfig TdnnfConfig::Preset(const std::string &name) {
  TdnnfConfig cfg;
  if (name == "tdnnf-large") {
    cfg.num_layers = 12;
    cfg.hidden_dim = 1024;
    cfg.bottleneck_dim = 128;
  } else if (name == "tdnnf-small") {
    cfg.num_layers = 7;
    cfg.hidden_dim = 1024;
    cfg.bottleneck_dim = 128;
  } else if (name == "tdnnf-tiny") {
    cfg.num_layers = 3;
    cfg.hidden_dim = 128;
    cfg.bottleneck_dim = 32;
  } else {
    CL_CONFIG_ERR << "unknown TDNNF preset '" << name
                  << "' (expected tdnnf-large, tdnnf-small or tdnnf-tiny)";
  }
  return cfg;
}

namespace {

std::string LayerBase(const std::string &prefix, int layer) {
  return prefix + "layer" + std::to_string(layer) + ".";
}

}  // namespace

void CreateTdnnfParams(const TdnnfConfig &config, uint64_t seed,
                       const std::string &prefix, ParamStore *params) {
  config.Validate();
  auto init = [&](const std::string &name, std::vector<int64_t> shape) {
    Tensor *t = params->Create(name, std::move(shape));
    InitUniformFanIn(t, seed, name);
  };
  int64_t in_dim = config.input_dim;
  int64_t splice = static_cast<int64_t>(config.context_offsets.size());
  for (int l = 0; l < config.num_layers; ++l) {
    std::string base = LayerBase(prefix, l);
    init(base + "factor_a", {splice * in_dim, config.bottleneck_dim});
    init(base + "factor_b", {config.bottleneck_dim, config.hidden_dim});
    params->Create(base + "bias", {config.hidden_dim});
    params->Create(base + "bn.scale", {config.hidden_dim})->Fill(1.0);
    params->Create(base + "bn.shift", {config.hidden_dim});
    in_dim = config.hidden_dim;
  }
  init(prefix + "output.w", {config.hidden_dim, config.output_dim});
  params->Create(prefix + "output.b", {config.output_dim});
}

Tape::Node *TdnnfForward(const TdnnfConfig &config, ParamStore *params,
                         const std::string &prefix, Tape *tape,
                         Tape::Node *input, int subsampling_factor) {
  config.Validate();
  CL_REQUIRE(subsampling_factor >= 1);
  CL_REQUIRE(input->Value().Rank() == 2);
  if (input->Value().Cols() != config.input_dim)
    CL_CONTRACT_ERR << "expected " << config.input_dim << "-dim input, got "
                    << input->Value().Cols();
  if (input->Value().Rows() < config.ReceptiveField())
    CL_DATA_ERR << "utterance too short for context: "
                << input->Value().Rows() << " frames < receptive field "
                << config.ReceptiveField();

  auto p = [&](const std::string &name) {
    return tape->Param(params->Get(name));
  };
  Tape::Node *h = input;
  for (int l = 0; l < config.num_layers; ++l) {
    std::string base = LayerBase(prefix, l);
    int stride =
        (l == config.subsample_layer && subsampling_factor > 1)
            ? subsampling_factor
            : 1;
    Tape::Node *residual = h;
    Tape::Node *spliced = tape->SpliceRows(h, config.context_offsets, stride);
    Tape::Node *bottleneck = tape->MatMul(spliced, p(base + "factor_a"));
    Tape::Node *wide = tape->AddRowVector(
        tape->MatMul(bottleneck, p(base + "factor_b")), p(base + "bias"));
    Tape::Node *active = tape->Relu(wide);
    Tape::Node *normed = tape->AddRowVector(
        tape->MulRowVector(tape->NormalizeColumns(active),
                           p(base + "bn.scale")),
        p(base + "bn.shift"));
    bool same_width = residual->Value().Cols() == normed->Value().Cols();
    h = (same_width && stride == 1) ? tape->Add(residual, normed) : normed;
  }
  return tape->AddRowVector(tape->MatMul(h, p(prefix + "output.w")),
                            p(prefix + "output.b"));
}

void SemiOrthogonalStep(Tensor *factor) {
  CL_REQUIRE(factor != nullptr && factor->Rank() == 2);
  // Stored as (spliced_in x bottleneck); the constrained matrix is the
  // transpose M (bottleneck x spliced_in), which must be wide.
  const int64_t rows = factor->Shape()[0], cols = factor->Shape()[1];
  CL_REQUIRE(cols < rows);
  using EMat =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<EMat> w(factor->Data(), rows, cols);
  EMat m = w.transpose();
  EMat gram = m * m.transpose();  // bottleneck x bottleneck
  double trace = gram.trace();
  if (trace <= 0.0) {
    std::fprintf(stderr,
                 "warning: skipping semi-orthogonal step on a zero factor\n");
    return;
  }
  double alpha = (gram * gram).trace() / trace;
  EMat update = gram;
  update.diagonal().array() -= alpha;
  EMat stepped = m - 0.25 * update * m;
  if (!stepped.allFinite()) {
    std::fprintf(stderr,
                 "warning: semi-orthogonal step produced non-finite values; "
                 "factor left unchanged\n");
    return;
  }
  w = stepped.transpose();
}

double SemiOrthogonalDefect(const Tensor &factor) {
  CL_REQUIRE(factor.Rank() == 2);
  const int64_t rows = factor.Shape()[0], cols = factor.Shape()[1];
  using EMat =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const EMat> w(factor.Data(), rows, cols);
  EMat m = w.transpose();
  EMat gram = m * m.transpose();
  double trace = gram.trace();
  if (trace <= 0.0) return 0.0;
  double alpha = (gram * gram).trace() / trace;
  EMat defect = gram / alpha;
  defect.diagonal().array() -= 1.0;
  return defect.norm();
}

void ConstrainTdnnfFactors(const TdnnfConfig &config,
                           const std::string &prefix, ParamStore *params) {
  for (int l = 0; l < config.num_layers; ++l)
    SemiOrthogonalStep(params->Get(LayerBase(prefix, l) + "factor_a"));
}

}  // namespace chainlet
