// lfmmi/forward-backward.cc

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

#include "lfmmi/forward-backward.h"

#include <cmath>

#include "numerics/logmath.h"

namespace chainlet {

namespace {

void ValidateInputs(const Fst &fst, const Tensor &logits) {
  CL_REQUIRE(fst.Indexed());
  CL_REQUIRE(logits.Rank() == 2);
  CL_REQUIRE(logits.Rows() >= 1);
  if (fst.HasEpsilonArcs())
    CL_CONTRACT_ERR << "forward-backward requires an epsilon-free graph";
  if (fst.MaxPdf() >= logits.Cols())
    CL_CONTRACT_ERR << "graph references pdf " << fst.MaxPdf()
                    << " but logits have only " << logits.Cols() << " columns";
}

}  // namespace

LatticeScores ForwardLog(const Fst &fst, const Tensor &logits) {
  ValidateInputs(fst, logits);
  const int64_t num_frames = logits.Rows();
  const int64_t num_states = fst.NumStates();
  const int64_t num_pdfs = logits.Cols();

  LatticeScores scores;
  scores.num_frames = num_frames;
  scores.num_states = num_states;
  scores.log_alpha.assign((num_frames + 1) * num_states, kLogZero);
  scores.log_beta.assign((num_frames + 1) * num_states, kLogZero);

  double *alpha = scores.log_alpha.data();
  alpha[fst.Start()] = 0.0;
  const double *logit = logits.Data();
  for (int64_t t = 0; t < num_frames; ++t) {
    const double *cur = alpha + t * num_states;
    double *next = alpha + (t + 1) * num_states;
    const double *frame = logit + t * num_pdfs;
    for (int64_t s = 0; s < num_states; ++s) {
      if (cur[s] == kLogZero) continue;
      for (const Arc &arc : fst.ArcsFrom(static_cast<int>(s))) {
        double score = cur[s] + frame[arc.pdf] + arc.weight;
        next[arc.dst] = LogAdd(next[arc.dst], score);
      }
    }
  }

  double z = kLogZero;
  const double *last = alpha + num_frames * num_states;
  for (int64_t s = 0; s < num_states; ++s)
    if (fst.FinalWeight(static_cast<int>(s)) != kLogZero)
      z = LogAdd(z, last[s] + fst.FinalWeight(static_cast<int>(s)));
  if (z == kLogZero)
    throw EmptyCompositionError("empty composition: no accepting path of " +
                                std::to_string(num_frames) + " frames");
  scores.log_partition = z;

  double *beta = scores.log_beta.data();
  for (int64_t s = 0; s < num_states; ++s)
    beta[num_frames * num_states + s] = fst.FinalWeight(static_cast<int>(s));
  for (int64_t t = num_frames - 1; t >= 0; --t) {
    double *cur = beta + t * num_states;
    const double *next = beta + (t + 1) * num_states;
    const double *frame = logit + t * num_pdfs;
    for (int64_t s = 0; s < num_states; ++s) {
      double acc = kLogZero;
      for (const Arc &arc : fst.ArcsFrom(static_cast<int>(s))) {
        if (next[arc.dst] == kLogZero) continue;
        acc = LogAdd(acc, frame[arc.pdf] + arc.weight + next[arc.dst]);
      }
      cur[s] = acc;
    }
  }
  return scores;
}

Posteriors Occupancies(const Fst &fst, const Tensor &logits,
                       const LatticeScores &scores) {
  ValidateInputs(fst, logits);
  const int64_t num_frames = logits.Rows();
  const int64_t num_states = fst.NumStates();
  const int64_t num_pdfs = logits.Cols();
  CL_REQUIRE(scores.num_frames == num_frames);
  CL_REQUIRE(scores.num_states == num_states);

  Posteriors post;
  post.gamma = Tensor({num_frames, num_pdfs});
  double *gamma = post.gamma.Data();
  const double *alpha = scores.log_alpha.data();
  const double *beta = scores.log_beta.data();
  const double *logit = logits.Data();
  const double z = scores.log_partition;

  for (int64_t t = 0; t < num_frames; ++t) {
    const double *cur_alpha = alpha + t * num_states;
    const double *next_beta = beta + (t + 1) * num_states;
    const double *frame = logit + t * num_pdfs;
    double *out = gamma + t * num_pdfs;
    for (int64_t s = 0; s < num_states; ++s) {
      if (cur_alpha[s] == kLogZero) continue;
      for (const Arc &arc : fst.ArcsFrom(static_cast<int>(s))) {
        if (next_beta[arc.dst] == kLogZero) continue;
        out[arc.pdf] += std::exp(cur_alpha[s] + frame[arc.pdf] + arc.weight +
                                 next_beta[arc.dst] - z);
      }
    }
  }
  return post;
}

}  // namespace chainlet
