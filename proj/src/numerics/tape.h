// numerics/tape.h

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

#ifndef CHAINLET_NUMERICS_TAPE_H_
#define CHAINLET_NUMERICS_TAPE_H_

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "numerics/tensor.h"

namespace chainlet {

class Rng;

// Reverse-mode autodiff over a closed set of dense primitives. A Tape owns
// the nodes of one forward evaluation; nodes are recorded in construction
// order, which is by construction a topological order, and Backward replays
// the recorded closures once in reverse.
//
// A tape is single-threaded. Independent tapes (one per utterance) may be
// evaluated concurrently as long as AccumulateParamGrads calls are
// serialized by the caller.
class Tape {
 public:
  struct Node {
    // Computed nodes and detached leaves own their value; parameter-bound
    // leaves alias the external tensor instead of copying it.
    Tensor owned;
    const Tensor *external = nullptr;
    std::vector<double> grad;  // allocated on first backward touch
    bool requires_grad = false;
    bool is_leaf = false;
    Tensor *bound = nullptr;  // AccumulateParamGrads target, may be null

    const Tensor &Value() const { return external ? *external : owned; }
  };

  Tape() = default;
  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  // ---- Leaves ----
  Node *Leaf(Tensor value, bool requires_grad = false);
  // Leaf aliasing an external tensor; requires_grad follows the tensor.
  Node *Param(Tensor *param);

  // ---- Primitives ----
  Node *Add(Node *a, Node *b);
  Node *Sub(Node *a, Node *b);
  Node *Mul(Node *a, Node *b);
  Node *Scale(Node *a, double factor);
  Node *AddRowVector(Node *matrix, Node *row);   // (T x D) + (D)
  Node *MulRowVector(Node *matrix, Node *row);   // (T x D) * (D), per row
  Node *MatMul(Node *a, Node *b);                // (m x k)(k x n)
  Node *Transpose(Node *a);
  Node *Tanh(Node *a);
  Node *Gelu(Node *a);
  Node *Relu(Node *a);
  Node *SoftmaxRows(Node *a);
  // Row-wise layer norm with learned gain/bias (rank-1, length D).
  Node *LayerNormRows(Node *a, Node *gain, Node *bias, double eps = 1e-6);
  // Column-wise standardization over rows (mean 0, unit var per channel).
  Node *NormalizeColumns(Node *a, double eps = 1e-5);
  // Context splicing: output row i is the concatenation over `offsets` of
  // input row clamp(i*stride + offset). Output has ceil(T/stride) rows.
  Node *SpliceRows(Node *a, std::span<const int> offsets, int stride = 1);
  Node *SliceCols(Node *a, int64_t begin, int64_t end);
  Node *ConcatCols(std::span<Node *const> parts);
  Node *SumAll(Node *a);                      // -> scalar
  Node *MeanAbsDiff(Node *a, Node *b);        // L1, -> scalar
  // Inverted dropout; draws one mask from `rng` at record time.
  Node *Dropout(Node *a, double prob, Rng *rng);
  // Injects an externally computed scalar loss whose gradient with respect
  // to `input` is `input_grad` (same shape as input). Used to couple graph
  // losses computed outside the tape into network backprop.
  Node *External(Node *input, double value, Tensor input_grad);

  // Root must be scalar. Propagates d(root)/d(node) into node grads; leaf
  // grads accumulate across repeated calls, intermediate grads are reset.
  void Backward(Node *root);

  // Adds scale * grad of every parameter-bound leaf into the grad buffer of
  // its bound tensor. Caller serializes across tapes.
  void AccumulateParamGrads(double scale = 1.0);

  size_t NumNodes() const { return nodes_.size(); }

 private:
  Node *NewNode(Tensor value, bool requires_grad,
                std::function<void()> backward);
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<std::function<void()>> backward_steps_;  // parallel to nodes_
};

}  // namespace chainlet

#endif  // CHAINLET_NUMERICS_TAPE_H_
