// lfmmi/loss.h

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

#ifndef CHAINLET_LFMMI_LOSS_H_
#define CHAINLET_LFMMI_LOSS_H_

#include <vector>

#include "graphs/fst.h"
#include "lfmmi/forward-backward.h"
#include "numerics/tape.h"

namespace chainlet {

struct LfmmiResult {
  Tape::Node *loss = nullptr;  // scalar node wired into the tape
  Tensor grad;                 // d(loss)/d(logits) = gamma_den - gamma_num
  double z_num = 0.0;
  double z_den = 0.0;
};

// Maximum-mutual-information objective F = Z_num - Z_den; the returned loss
// is -F and its analytic logit gradient flows through the tape so upstream
// network gradients propagate. Throws EmptyCompositionError when the
// numerator accepts no length-T path (callers skip the utterance) and
// ContractError when the denominator does (a graph bug).
LfmmiResult LfmmiLoss(const Fst &numerator, const Fst &denominator,
                      Tape *tape, Tape::Node *logits);

struct CrossEntropyResult {
  Tape::Node *loss = nullptr;
  Tensor grad;
};

// Frame-level criterion for the hybrid baseline: mean over frames of
// -log softmax(logits[t])[alignment[t]].
CrossEntropyResult CrossEntropyLoss(const std::vector<int> &alignment,
                                    Tape *tape, Tape::Node *logits);

}  // namespace chainlet

#endif  // CHAINLET_LFMMI_LOSS_H_
