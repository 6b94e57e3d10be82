// recognize/per.h

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

#ifndef CHAINLET_RECOGNIZE_PER_H_
#define CHAINLET_RECOGNIZE_PER_H_

#include <vector>

namespace chainlet {

struct EditCounts {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t Total() const { return substitutions + deletions + insertions; }
};

// Minimum-edit alignment of one pair (unit costs).
EditCounts LevenshteinAlign(const std::vector<int> &ref,
                            const std::vector<int> &hyp);

struct PerReport {
  double per = 0.0;  // 100 * (S + D + I) / num_ref_phones
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t num_ref_phones = 0;
  std::vector<EditCounts> per_utterance;
};

// Corpus-level phone error rate over aligned (ref, hyp) lists.
PerReport PhoneErrorRate(const std::vector<std::vector<int>> &refs,
                         const std::vector<std::vector<int>> &hyps);

}  // namespace chainlet

#endif  // CHAINLET_RECOGNIZE_PER_H_
