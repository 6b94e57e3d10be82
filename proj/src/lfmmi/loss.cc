// lfmmi/loss.cc

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

#include "lfmmi/loss.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"

namespace chainlet {

LfmmiResult LfmmiLoss(const Fst &numerator, const Fst &denominator,
                      Tape *tape, Tape::Node *logits) {
  CL_REQUIRE(tape != nullptr && logits != nullptr);
  const Tensor &values = logits->Value();
  CL_REQUIRE(values.Rank() == 2);

  LatticeScores num_scores = ForwardLog(numerator, values);
  LatticeScores den_scores;
  try {
    den_scores = ForwardLog(denominator, values);
  } catch (const EmptyCompositionError &e) {
    CL_CONTRACT_ERR << "denominator graph accepts no path: " << e.what();
  }
  Posteriors num_post = Occupancies(numerator, values, num_scores);
  Posteriors den_post = Occupancies(denominator, values, den_scores);

  LfmmiResult result;
  result.z_num = num_scores.log_partition;
  result.z_den = den_scores.log_partition;
  result.grad = Tensor(values.Shape());
  for (int64_t i = 0; i < result.grad.NumEl(); ++i)
    result.grad.Data()[i] =
        den_post.gamma.Data()[i] - num_post.gamma.Data()[i];
  double loss = -(result.z_num - result.z_den);
  result.loss = tape->External(logits, loss, result.grad);
  return result;
}

CrossEntropyResult CrossEntropyLoss(const std::vector<int> &alignment,
                                    Tape *tape, Tape::Node *logits) {
  CL_REQUIRE(tape != nullptr && logits != nullptr);
  const Tensor &values = logits->Value();
  CL_REQUIRE(values.Rank() == 2);
  const int64_t num_frames = values.Rows();
  const int64_t num_pdfs = values.Cols();
  if (static_cast<int64_t>(alignment.size()) != num_frames)
    CL_CONTRACT_ERR << "alignment length " << alignment.size()
                    << " does not match " << num_frames << " frames";

  CrossEntropyResult result;
  result.grad = Tensor(values.Shape());
  double loss = 0.0;
  const double inv_frames = 1.0 / static_cast<double>(num_frames);
  for (int64_t t = 0; t < num_frames; ++t) {
    int pdf = alignment[static_cast<size_t>(t)];
    if (pdf < 0 || pdf >= num_pdfs)
      CL_CONTRACT_ERR << "alignment pdf " << pdf << " out of range [0, "
                      << num_pdfs << ")";
    const double *row = values.Data() + t * num_pdfs;
    double hi = *std::max_element(row, row + num_pdfs);
    double sum = 0.0;
    for (int64_t p = 0; p < num_pdfs; ++p) sum += std::exp(row[p] - hi);
    double log_norm = hi + std::log(sum);
    loss += (log_norm - row[pdf]) * inv_frames;
    double *grad_row = result.grad.Data() + t * num_pdfs;
    for (int64_t p = 0; p < num_pdfs; ++p)
      grad_row[p] = std::exp(row[p] - log_norm) * inv_frames;
    grad_row[pdf] -= inv_frames;
  }
  result.loss = tape->External(logits, loss, result.grad);
  return result;
}

}  // namespace chainlet
