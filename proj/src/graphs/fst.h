// graphs/fst.h

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

#ifndef CHAINLET_GRAPHS_FST_H_
#define CHAINLET_GRAPHS_FST_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chainlet {

// Weighted acceptor over pdf labels in the log semiring. The graph
// compilers never emit epsilon arcs; kEpsilonPdf exists for the text format
// and is rejected by forward-backward and decoding.
constexpr int kEpsilonPdf = -1;

struct Arc {
  int32_t src = 0;
  int32_t dst = 0;
  int32_t pdf = kEpsilonPdf;
  double weight = 0.0;  // log-probability
};

class Fst {
 public:
  int AddState();
  void AddArc(int src, int dst, int pdf, double weight);
  void SetStart(int state);
  void SetFinal(int state, double weight);

  int NumStates() const { return static_cast<int>(final_weights_.size()); }
  int NumArcs() const { return static_cast<int>(arcs_.size()); }
  int Start() const { return start_; }
  // kLogZero for non-final states.
  double FinalWeight(int state) const { return final_weights_[state]; }
  const std::vector<Arc> &Arcs() const { return arcs_; }

  // Sorts arcs by source (stable) and builds per-state ranges; must be
  // called once after construction and before ArcsFrom.
  void BuildIndex();
  bool Indexed() const { return indexed_; }
  std::span<const Arc> ArcsFrom(int state) const;

  // Largest pdf id on any arc, -1 if none.
  int MaxPdf() const;
  bool HasEpsilonArcs() const;
  // Every state lies on some start-to-final path.
  bool Connected() const;

  // One arc per line "src dst pdf weight", then "F state weight" lines.
  std::string ToText() const;
  // Graphviz export for debugging.
  std::string ToDot() const;

 private:
  std::vector<Arc> arcs_;
  std::vector<double> final_weights_;
  std::vector<int32_t> arc_offsets_;  // size NumStates()+1 once indexed
  int start_ = -1;
  bool indexed_ = false;
};

}  // namespace chainlet

#endif  // CHAINLET_GRAPHS_FST_H_
