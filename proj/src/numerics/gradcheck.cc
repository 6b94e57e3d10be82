// numerics/gradcheck.cc

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

#include "numerics/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "base/error.h"
#include "base/rng.h"

namespace chainlet {

namespace {

double Evaluate(const ScalarGraphBuilder &build,
                const std::vector<Tensor> &inputs) {
  Tape tape;
  std::vector<Tape::Node *> leaves;
  leaves.reserve(inputs.size());
  for (const Tensor &t : inputs) leaves.push_back(tape.Leaf(t, false));
  Tape::Node *root = build(tape, leaves);
  CL_REQUIRE(root->Value().NumEl() == 1);
  double v = root->Value().Data()[0];
  if (!std::isfinite(v)) CL_TRAIN_ERR << "non-finite value at gradcheck probe";
  return v;
}

}  // namespace

double FiniteDiffCheck(const ScalarGraphBuilder &build,
                       std::vector<Tensor> inputs,
                       const GradCheckOptions &opts) {
  CL_REQUIRE(opts.step > 0.0);
  // Analytic pass.
  Tape tape;
  std::vector<Tape::Node *> leaves;
  leaves.reserve(inputs.size());
  for (const Tensor &t : inputs) leaves.push_back(tape.Leaf(t, true));
  Tape::Node *root = build(tape, leaves);
  CL_REQUIRE(root->Value().NumEl() == 1);
  tape.Backward(root);

  double max_rel_err = 0.0;
  for (size_t li = 0; li < inputs.size(); ++li) {
    int64_t n = inputs[li].NumEl();
    std::vector<int64_t> probes(static_cast<size_t>(n));
    std::iota(probes.begin(), probes.end(), 0);
    if (opts.max_probes_per_input > 0 && n > opts.max_probes_per_input) {
      Rng rng(DeriveSeed(opts.probe_seed, "gradcheck-probes", li));
      rng.Shuffle(&probes);
      probes.resize(static_cast<size_t>(opts.max_probes_per_input));
    }
    const std::vector<double> &analytic = leaves[li]->grad;
    for (int64_t idx : probes) {
      double saved = inputs[li].Data()[idx];
      inputs[li].Data()[idx] = saved + opts.step;
      double up = Evaluate(build, inputs);
      inputs[li].Data()[idx] = saved - opts.step;
      double down = Evaluate(build, inputs);
      inputs[li].Data()[idx] = saved;
      double numeric = (up - down) / (2.0 * opts.step);
      double ga = analytic.empty() ? 0.0 : analytic[static_cast<size_t>(idx)];
      double rel = std::abs(ga - numeric) / std::max(1.0, std::abs(ga));
      max_rel_err = std::max(max_rel_err, rel);
    }
  }
  return max_rel_err;
}

double FiniteDiffCheck(
    const std::function<Tape::Node *(Tape &, Tape::Node *)> &build, Tensor x,
    const GradCheckOptions &opts) {
  return FiniteDiffCheck(
      [&build](Tape &tape, const std::vector<Tape::Node *> &leaves) {
        return build(tape, leaves[0]);
      },
      {std::move(x)}, opts);
}

double ParamFiniteDiffCheck(const std::function<double(bool with_grad)> &eval,
                            const std::vector<Tensor *> &params,
                            const GradCheckOptions &opts) {
  CL_REQUIRE(opts.step > 0.0);
  for (Tensor *t : params) t->ZeroGrad();
  eval(true);
  std::vector<std::vector<double>> analytic;
  analytic.reserve(params.size());
  for (Tensor *t : params)
    analytic.push_back(t->HasGrad()
                           ? t->Grad()
                           : std::vector<double>(t->NumEl(), 0.0));

  double max_rel_err = 0.0;
  for (size_t li = 0; li < params.size(); ++li) {
    Tensor *t = params[li];
    int64_t n = t->NumEl();
    std::vector<int64_t> probes(static_cast<size_t>(n));
    std::iota(probes.begin(), probes.end(), 0);
    if (opts.max_probes_per_input > 0 && n > opts.max_probes_per_input) {
      Rng rng(DeriveSeed(opts.probe_seed, "gradcheck-probes", li));
      rng.Shuffle(&probes);
      probes.resize(static_cast<size_t>(opts.max_probes_per_input));
    }
    for (int64_t idx : probes) {
      double saved = t->Data()[idx];
      t->Data()[idx] = saved + opts.step;
      double up = eval(false);
      t->Data()[idx] = saved - opts.step;
      double down = eval(false);
      t->Data()[idx] = saved;
      if (!std::isfinite(up) || !std::isfinite(down))
        CL_TRAIN_ERR << "non-finite value at gradcheck probe";
      double numeric = (up - down) / (2.0 * opts.step);
      double ga = analytic[li][static_cast<size_t>(idx)];
      double rel = std::abs(ga - numeric) / std::max(1.0, std::abs(ga));
      max_rel_err = std::max(max_rel_err, rel);
    }
  }
  return max_rel_err;
}

}  // namespace chainlet
