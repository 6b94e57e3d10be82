// recognize/viterbi.h

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

#ifndef CHAINLET_RECOGNIZE_VITERBI_H_
#define CHAINLET_RECOGNIZE_VITERBI_H_

#include <vector>

#include "graphs/fst.h"
#include "graphs/topology.h"
#include "numerics/tensor.h"

namespace chainlet {

struct Hypothesis {
  std::vector<int> phones;  // silence stripped
  std::vector<int> pdfs;    // raw best pdf path, length T
  double log_score = 0.0;
};

// Max-semiring analogue of the forward recursion with back-pointers;
// collapses self-loops and maps the winning pdf path to a phone sequence
// through the biphone topology. Throws EmptyCompositionError when the
// graph accepts no length-T path.
Hypothesis Viterbi(const Fst &fst, const Tensor &logits,
                   const Topology &topology);

}  // namespace chainlet

#endif  // CHAINLET_RECOGNIZE_VITERBI_H_
