// nnet/transformer.cc

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

#include "nnet/transformer.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

void TransformerConfig::Validate() const {
  CL_REQUIRE(num_layers >= 1);
  CL_REQUIRE(num_heads >= 1);
  CL_REQUIRE(head_dim >= 1);
  CL_REQUIRE(ff_dim >= 1);
  CL_REQUIRE(input_dim >= 1);
  CL_REQUIRE(dropout_prob >= 0.0 && dropout_prob < 1.0);
}

TransformerConfig TransformerConfig::Preset(const std::string &name) {
  TransformerConfig cfg;
  if (name == "tr-small") {
    cfg.num_layers = 3;
    cfg.num_heads = 12;
    cfg.ff_dim = 3072;
  } else if (name == "tr-med") {
    cfg.num_layers = 12;
    cfg.num_heads = 6;
    cfg.ff_dim = 1536;
  } else if (name == "tr-tiny") {
    cfg.num_layers = 2;
    cfg.num_heads = 4;
    cfg.ff_dim = 256;
  } else {
    CL_CONFIG_ERR << "unknown transformer preset '" << name
                  << "' (expected tr-small, tr-med or tr-tiny)";
  }
  return cfg;
}

namespace {

struct LayerNames {
  std::string wq, bq, wk, bk, wv, bv, wo, bo;
  std::string ln1_gain, ln1_bias, ln2_gain, ln2_bias;
  std::string ff_w1, ff_b1, ff_w2, ff_b2;

  LayerNames(const std::string &prefix, int layer) {
    std::string base = prefix + "layer" + std::to_string(layer) + ".";
    wq = base + "attn.wq";
    bq = base + "attn.bq";
    wk = base + "attn.wk";
    bk = base + "attn.bk";
    wv = base + "attn.wv";
    bv = base + "attn.bv";
    wo = base + "attn.wo";
    bo = base + "attn.bo";
    ln1_gain = base + "ln1.gain";
    ln1_bias = base + "ln1.bias";
    ln2_gain = base + "ln2.gain";
    ln2_bias = base + "ln2.bias";
    ff_w1 = base + "ff.w1";
    ff_b1 = base + "ff.b1";
    ff_w2 = base + "ff.w2";
    ff_b2 = base + "ff.b2";
  }
};

}  // namespace

Tensor SinusoidalPositions(int64_t num_frames, int model_dim) {
  Tensor pe({num_frames, static_cast<int64_t>(model_dim)});
  for (int64_t t = 0; t < num_frames; ++t) {
    for (int i = 0; i < model_dim / 2; ++i) {
      double rate = std::exp(-std::log(10000.0) * (2.0 * i) / model_dim);
      pe.At(t, 2 * i) = std::sin(static_cast<double>(t) * rate);
      pe.At(t, 2 * i + 1) = std::cos(static_cast<double>(t) * rate);
    }
  }
  return pe;
}

void CreateTransformerParams(const TransformerConfig &config, uint64_t seed,
                             const std::string &prefix, ParamStore *params) {
  config.Validate();
  const int64_t dim = config.ModelDim();
  auto init = [&](const std::string &name, std::vector<int64_t> shape) {
    Tensor *t = params->Create(name, std::move(shape));
    InitUniformFanIn(t, seed, name);
  };
  init(prefix + "in_proj.w", {config.input_dim, dim});
  params->Create(prefix + "in_proj.b", {dim});
  for (int l = 0; l < config.num_layers; ++l) {
    LayerNames names(prefix, l);
    for (const std::string &w : {names.wq, names.wk, names.wv, names.wo})
      init(w, {dim, dim});
    for (const std::string &b : {names.bq, names.bk, names.bv, names.bo})
      params->Create(b, {dim});
    params->Create(names.ln1_gain, {dim})->Fill(1.0);
    params->Create(names.ln1_bias, {dim});
    params->Create(names.ln2_gain, {dim})->Fill(1.0);
    params->Create(names.ln2_bias, {dim});
    init(names.ff_w1, {dim, config.ff_dim});
    params->Create(names.ff_b1, {config.ff_dim});
    init(names.ff_w2, {config.ff_dim, dim});
    params->Create(names.ff_b2, {dim});
  }
  params->Create(prefix + "final_ln.gain", {dim})->Fill(1.0);
  params->Create(prefix + "final_ln.bias", {dim});
}

Tape::Node *TransformerForward(const TransformerConfig &config,
                               ParamStore *params, const std::string &prefix,
                               Tape *tape, const Tensor &features, bool train,
                               Rng *dropout_rng) {
  config.Validate();
  CL_REQUIRE(features.Rank() == 2);
  if (features.Cols() != config.input_dim)
    CL_CONTRACT_ERR << "expected " << config.input_dim
                    << "-dim features, got " << features.Cols();
  const int64_t num_frames = features.Rows();
  const int64_t dim = config.ModelDim();
  const double attn_scale = 1.0 / std::sqrt(static_cast<double>(config.head_dim));
  double dropout = train ? config.dropout_prob : 0.0;
  if (dropout > 0.0) CL_REQUIRE(dropout_rng != nullptr);

  auto p = [&](const std::string &name) { return tape->Param(params->Get(name)); };

  Tape::Node *x = tape->Leaf(features, false);
  Tape::Node *h = tape->AddRowVector(tape->MatMul(x, p(prefix + "in_proj.w")),
                                     p(prefix + "in_proj.b"));
  h = tape->Add(h, tape->Leaf(SinusoidalPositions(num_frames, dim), false));
  if (dropout > 0.0) h = tape->Dropout(h, dropout, dropout_rng);

  for (int l = 0; l < config.num_layers; ++l) {
    LayerNames names(prefix, l);
    Tape::Node *normed = tape->LayerNormRows(h, p(names.ln1_gain),
                                             p(names.ln1_bias));
    Tape::Node *q = tape->AddRowVector(tape->MatMul(normed, p(names.wq)),
                                       p(names.bq));
    Tape::Node *k = tape->AddRowVector(tape->MatMul(normed, p(names.wk)),
                                       p(names.bk));
    Tape::Node *v = tape->AddRowVector(tape->MatMul(normed, p(names.wv)),
                                       p(names.bv));
    std::vector<Tape::Node *> heads;
    for (int head = 0; head < config.num_heads; ++head) {
      int64_t begin = static_cast<int64_t>(head) * config.head_dim;
      int64_t end = begin + config.head_dim;
      Tape::Node *qh = tape->SliceCols(q, begin, end);
      Tape::Node *kh = tape->SliceCols(k, begin, end);
      Tape::Node *vh = tape->SliceCols(v, begin, end);
      Tape::Node *scores =
          tape->Scale(tape->MatMul(qh, tape->Transpose(kh)), attn_scale);
      Tape::Node *weights = tape->SoftmaxRows(scores);
      heads.push_back(tape->MatMul(weights, vh));
    }
    Tape::Node *attn = tape->AddRowVector(
        tape->MatMul(tape->ConcatCols(heads), p(names.wo)), p(names.bo));
    if (dropout > 0.0) attn = tape->Dropout(attn, dropout, dropout_rng);
    h = tape->Add(h, attn);

    Tape::Node *ff_in = tape->LayerNormRows(h, p(names.ln2_gain),
                                            p(names.ln2_bias));
    Tape::Node *ff = tape->AddRowVector(
        tape->MatMul(tape->Gelu(tape->AddRowVector(
                         tape->MatMul(ff_in, p(names.ff_w1)), p(names.ff_b1))),
                     p(names.ff_w2)),
        p(names.ff_b2));
    if (dropout > 0.0) ff = tape->Dropout(ff, dropout, dropout_rng);
    h = tape->Add(h, ff);
  }
  return tape->LayerNormRows(h, p(prefix + "final_ln.gain"),
                             p(prefix + "final_ln.bias"));
}

void CreateReconstructionParams(const TransformerConfig &config, uint64_t seed,
                                const std::string &prefix,
                                ParamStore *params) {
  Tensor *w = params->Create(prefix + "w", {config.ModelDim(),
                                            config.input_dim});
  InitUniformFanIn(w, seed, prefix + "w");
  params->Create(prefix + "b", {config.input_dim});
}

Tape::Node *ReconstructionHead(const TransformerConfig &config,
                               ParamStore *params, const std::string &prefix,
                               Tape *tape, Tape::Node *hidden) {
  CL_REQUIRE(hidden->Value().Cols() == config.ModelDim());
  return tape->AddRowVector(
      tape->MatMul(hidden, tape->Param(params->Get(prefix + "w"))),
      tape->Param(params->Get(prefix + "b")));
}

}  // namespace chainlet
