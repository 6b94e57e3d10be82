// lfmmi/forward-backward.h

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

#ifndef CHAINLET_LFMMI_FORWARD_BACKWARD_H_
#define CHAINLET_LFMMI_FORWARD_BACKWARD_H_

#include <vector>

#include "base/error.h"
#include "graphs/fst.h"
#include "numerics/tensor.h"

namespace chainlet {

// The graph accepts no path of the requested length. Recoverable for
// numerator graphs (the utterance is skipped); a bug for denominators.
class EmptyCompositionError : public DataError {
 public:
  explicit EmptyCompositionError(const std::string &msg) : DataError(msg) {}
};

// Log-domain alpha/beta over (T+1) x states plus the log-partition. Both
// tables hold kLogZero for unreachable (state, time) pairs, so they live in
// plain buffers rather than Tensors.
struct LatticeScores {
  int64_t num_frames = 0;
  int64_t num_states = 0;
  std::vector<double> log_alpha;  // (T+1) x states
  std::vector<double> log_beta;   // (T+1) x states
  double log_partition = 0.0;     // Z

  double Alpha(int64_t t, int64_t s) const {
    return log_alpha[t * num_states + s];
  }
  double Beta(int64_t t, int64_t s) const {
    return log_beta[t * num_states + s];
  }
};

// Per-frame pdf occupancies gamma, the carriers of the LFMMI gradient.
// Rows sum to one.
struct Posteriors {
  Tensor gamma;  // T x num_pdfs
};

// Exact forward(-backward) recursion over the full graph in the log
// semiring: alpha[t+1][dst] = logsumexp over arcs of (alpha[t][src] +
// logit[t][pdf] + arc weight), Z = logsumexp over finals. Throws
// EmptyCompositionError when no accepting length-T path exists.
LatticeScores ForwardLog(const Fst &fst, const Tensor &logits);

// gamma[t][pdf] = sum over arcs with that pdf of
//   exp(alpha[t][src] + logit[t][pdf] + weight + beta[t+1][dst] - Z).
Posteriors Occupancies(const Fst &fst, const Tensor &logits,
                       const LatticeScores &scores);

}  // namespace chainlet

#endif  // CHAINLET_LFMMI_FORWARD_BACKWARD_H_
