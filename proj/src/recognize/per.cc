// recognize/per.cc

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

#include "recognize/per.h"

#include <algorithm>

#include "base/error.h"

namespace chainlet {

EditCounts LevenshteinAlign(const std::vector<int> &ref,
                            const std::vector<int> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  // cost[i][j]: edit distance between ref[:i] and hyp[:j].
  std::vector<int32_t> cost((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 0; i <= n; ++i) cost[at(i, 0)] = static_cast<int32_t>(i);
  for (size_t j = 0; j <= m; ++j) cost[at(0, j)] = static_cast<int32_t>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int32_t sub = cost[at(i - 1, j - 1)] + (ref[i - 1] != hyp[j - 1]);
      int32_t del = cost[at(i - 1, j)] + 1;
      int32_t ins = cost[at(i, j - 1)] + 1;
      cost[at(i, j)] = std::min({sub, del, ins});
    }
  }
  // Trace back one optimal alignment, preferring matches/substitutions.
  EditCounts counts;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        cost[at(i, j)] == cost[at(i - 1, j - 1)] + (ref[i - 1] != hyp[j - 1])) {
      counts.substitutions += (ref[i - 1] != hyp[j - 1]);
      --i;
      --j;
    } else if (i > 0 && cost[at(i, j)] == cost[at(i - 1, j)] + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

PerReport PhoneErrorRate(const std::vector<std::vector<int>> &refs,
                         const std::vector<std::vector<int>> &hyps) {
  if (refs.size() != hyps.size())
    CL_CONTRACT_ERR << "mismatched utterance lists: " << refs.size()
                    << " refs vs " << hyps.size() << " hyps";
  PerReport report;
  for (size_t u = 0; u < refs.size(); ++u) {
    EditCounts counts = LevenshteinAlign(refs[u], hyps[u]);
    report.substitutions += counts.substitutions;
    report.deletions += counts.deletions;
    report.insertions += counts.insertions;
    report.num_ref_phones += static_cast<int64_t>(refs[u].size());
    report.per_utterance.push_back(counts);
  }
  if (report.num_ref_phones > 0)
    report.per = 100.0 *
                 static_cast<double>(report.substitutions + report.deletions +
                                     report.insertions) /
                 static_cast<double>(report.num_ref_phones);
  return report;
}

}  // namespace chainlet
