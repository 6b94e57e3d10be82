// graphs/bigram.cc

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

#include "graphs/bigram.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

PhoneBigram EstimatePhoneBigram(const std::vector<std::vector<int>> &corpus,
                                int num_phones, double k) {
  if (corpus.empty()) CL_DATA_ERR << "empty corpus for bigram estimation";
  CL_REQUIRE(num_phones >= 1 && k > 0.0);
  const int P = num_phones;
  std::vector<double> start_count(P, 0.0);
  std::vector<double> trans_count(P * P, 0.0);
  std::vector<double> end_count(P, 0.0);
  std::vector<double> context_count(P, 0.0);
  double num_sequences = 0.0;

  for (const auto &seq : corpus) {
    if (seq.empty()) continue;
    for (int phone : seq)
      if (phone < 0 || phone >= P)
        CL_DATA_ERR << "phone id " << phone << " out of range [0, " << P << ")";
    num_sequences += 1.0;
    start_count[seq.front()] += 1.0;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
      trans_count[seq[i] * P + seq[i + 1]] += 1.0;
      context_count[seq[i]] += 1.0;
    }
    end_count[seq.back()] += 1.0;
    context_count[seq.back()] += 1.0;
  }
  if (num_sequences == 0.0) CL_DATA_ERR << "corpus has no non-empty sequences";

  PhoneBigram bigram;
  bigram.num_phones = P;
  bigram.start_logp.resize(P);
  bigram.trans_logp.resize(P * P);
  bigram.end_logp.resize(P);
  // The start row has P continuations plus nothing else (an empty sequence
  // is not modeled), but keeping P+1 with an implicit never-seen end keeps
  // the smoothing uniform; end mass from <s> is dropped by renormalizing
  // over the P phones only.
  double start_denom = num_sequences + k * P;
  for (int p = 0; p < P; ++p)
    bigram.start_logp[p] = std::log((start_count[p] + k) / start_denom);
  for (int a = 0; a < P; ++a) {
    double denom = context_count[a] + k * (P + 1);
    for (int b = 0; b < P; ++b)
      bigram.trans_logp[a * P + b] =
          std::log((trans_count[a * P + b] + k) / denom);
    bigram.end_logp[a] = std::log((end_count[a] + k) / denom);
  }
  return bigram;
}

}  // namespace chainlet
