// numerics/gradcheck.h

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

#ifndef CHAINLET_NUMERICS_GRADCHECK_H_
#define CHAINLET_NUMERICS_GRADCHECK_H_

#include <functional>
#include <vector>

#include "numerics/tape.h"
#include "numerics/tensor.h"

namespace chainlet {

struct GradCheckOptions {
  double step = 1e-5;  // central-difference half-step h
  // Coordinates probed per input tensor; <= 0 probes all of them. Large
  // models are checked on a random coordinate subset.
  int64_t max_probes_per_input = -1;
  uint64_t probe_seed = 0x9E3779B9;
};

// Builds a scalar graph from leaf nodes created for `inputs` (same order).
// Must be a pure function of the leaf values so repeated builds give
// repeated values.
using ScalarGraphBuilder =
    std::function<Tape::Node *(Tape &, const std::vector<Tape::Node *> &)>;

// Compares the tape gradient of the built scalar against central finite
// differences and returns max_i |g_analytic - g_numeric| / max(1,
// |g_analytic|) over all probed coordinates of all inputs. Throws if the
// function evaluates non-finite at any probe.
double FiniteDiffCheck(const ScalarGraphBuilder &build,
                       std::vector<Tensor> inputs,
                       const GradCheckOptions &opts = {});

// Single-input convenience wrapper.
double FiniteDiffCheck(
    const std::function<Tape::Node *(Tape &, Tape::Node *)> &build, Tensor x,
    const GradCheckOptions &opts = {});

// Full-model variant for parameters owned elsewhere (a ParamStore).
// eval(true) must run forward and backward and accumulate gradients into
// each tensor's grad buffer; eval(false) must return the value only. The
// checker perturbs tensor coordinates in place and restores them.
double ParamFiniteDiffCheck(const std::function<double(bool with_grad)> &eval,
                            const std::vector<Tensor *> &params,
                            const GradCheckOptions &opts = {});

}  // namespace chainlet

#endif  // CHAINLET_NUMERICS_GRADCHECK_H_
