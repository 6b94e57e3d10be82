// graphs/bigram.h

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

#ifndef CHAINLET_GRAPHS_BIGRAM_H_
#define CHAINLET_GRAPHS_BIGRAM_H_

#include <vector>

namespace chainlet {

// Phone bigram with explicit start/end, stored as log-probabilities. Every
// conditional row (P phone continuations plus end-of-sequence) sums to one.
struct PhoneBigram {
  int num_phones = 0;
  std::vector<double> start_logp;  // log p(p | <s>), size P
  std::vector<double> trans_logp;  // log p(p' | p), row-major P x P
  std::vector<double> end_logp;    // log p(</s> | p), size P

  double Start(int phone) const { return start_logp[phone]; }
  double Trans(int prev, int next) const {
    return trans_logp[prev * num_phones + next];
  }
  double End(int phone) const { return end_logp[phone]; }
};

// Add-k estimation over phone-id sequences:
//   p(b | a) = (count(a,b) + k) / (count(a) + k * (P + 1))
// where the P+1 continuations include end-of-sequence, and the start
// distribution is estimated the same way from sequence-initial counts.
PhoneBigram EstimatePhoneBigram(const std::vector<std::vector<int>> &corpus,
                                int num_phones, double k = 1.0);

}  // namespace chainlet

#endif  // CHAINLET_GRAPHS_BIGRAM_H_
