// recognize/viterbi.cc

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

#include "recognize/viterbi.h"

#include <algorithm>

#include "base/error.h"
#include "lfmmi/forward-backward.h"
#include "numerics/logmath.h"

namespace chainlet {

Hypothesis Viterbi(const Fst &fst, const Tensor &logits,
                   const Topology &topology) {
  CL_REQUIRE(fst.Indexed());
  CL_REQUIRE(logits.Rank() == 2 && logits.Rows() >= 1);
  if (fst.HasEpsilonArcs())
    CL_CONTRACT_ERR << "Viterbi requires an epsilon-free graph";
  if (fst.MaxPdf() >= logits.Cols())
    CL_CONTRACT_ERR << "graph references pdf " << fst.MaxPdf()
                    << " but logits have only " << logits.Cols() << " columns";
  const int64_t num_frames = logits.Rows();
  const int64_t num_states = fst.NumStates();
  const int64_t num_pdfs = logits.Cols();

  std::vector<double> delta((num_frames + 1) * num_states, kLogZero);
  std::vector<int32_t> backptr((num_frames + 1) * num_states, -1);
  delta[fst.Start()] = 0.0;
  const std::vector<Arc> &arcs = fst.Arcs();
  for (int64_t t = 0; t < num_frames; ++t) {
    const double *cur = delta.data() + t * num_states;
    double *next = delta.data() + (t + 1) * num_states;
    int32_t *next_bp = backptr.data() + (t + 1) * num_states;
    const double *frame = logits.Data() + t * num_pdfs;
    for (int64_t s = 0; s < num_states; ++s) {
      if (cur[s] == kLogZero) continue;
      std::span<const Arc> from = fst.ArcsFrom(static_cast<int>(s));
      for (const Arc &arc : from) {
        double score = cur[s] + frame[arc.pdf] + arc.weight;
        if (score > next[arc.dst]) {
          next[arc.dst] = score;
          next_bp[arc.dst] =
              static_cast<int32_t>(&arc - arcs.data());  // arc index
        }
      }
    }
  }

  int best_state = -1;
  double best = kLogZero;
  const double *last = delta.data() + num_frames * num_states;
  for (int64_t s = 0; s < num_states; ++s) {
    double w = fst.FinalWeight(static_cast<int>(s));
    if (w == kLogZero || last[s] == kLogZero) continue;
    if (last[s] + w > best) {
      best = last[s] + w;
      best_state = static_cast<int>(s);
    }
  }
  if (best_state < 0)
    throw EmptyCompositionError("Viterbi: no accepting path of " +
                                std::to_string(num_frames) + " frames");

  Hypothesis hyp;
  hyp.log_score = best;
  hyp.pdfs.resize(num_frames);
  int state = best_state;
  for (int64_t t = num_frames; t > 0; --t) {
    int32_t arc_index = backptr[t * num_states + state];
    CL_REQUIRE(arc_index >= 0);
    const Arc &arc = arcs[arc_index];
    hyp.pdfs[t - 1] = arc.pdf;
    state = arc.src;
  }
  for (int pdf : hyp.pdfs) {
    if (!topology.IsForwardPdf(pdf)) continue;  // self-loop: same unit
    int phone = topology.PhoneOfUnit(topology.UnitOfPdf(pdf));
    if (phone != topology.Silence()) hyp.phones.push_back(phone);
  }
  return hyp;
}

}  // namespace chainlet
