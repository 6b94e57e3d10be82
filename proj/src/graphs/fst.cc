// graphs/fst.cc

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

#include "graphs/fst.h"

#include <algorithm>
#include <sstream>

#include "base/error.h"
#include "numerics/logmath.h"

namespace chainlet {

int Fst::AddState() {
  CL_REQUIRE(!indexed_);
  final_weights_.push_back(kLogZero);
  return NumStates() - 1;
}

void Fst::AddArc(int src, int dst, int pdf, double weight) {
  CL_REQUIRE(!indexed_);
  CL_REQUIRE(src >= 0 && src < NumStates());
  CL_REQUIRE(dst >= 0 && dst < NumStates());
  CL_REQUIRE(pdf >= kEpsilonPdf);
  arcs_.push_back(Arc{static_cast<int32_t>(src), static_cast<int32_t>(dst),
                      static_cast<int32_t>(pdf), weight});
}

void Fst::SetStart(int state) {
  CL_REQUIRE(state >= 0 && state < NumStates());
  start_ = state;
}

void Fst::SetFinal(int state, double weight) {
  CL_REQUIRE(state >= 0 && state < NumStates());
  final_weights_[state] = weight;
}

void Fst::BuildIndex() {
  CL_REQUIRE(start_ >= 0);
  std::stable_sort(arcs_.begin(), arcs_.end(),
                   [](const Arc &a, const Arc &b) { return a.src < b.src; });
  arc_offsets_.assign(NumStates() + 1, 0);
  for (const Arc &arc : arcs_) ++arc_offsets_[arc.src + 1];
  for (int s = 0; s < NumStates(); ++s) arc_offsets_[s + 1] += arc_offsets_[s];
  indexed_ = true;
}

std::span<const Arc> Fst::ArcsFrom(int state) const {
  CL_REQUIRE(indexed_);
  CL_REQUIRE(state >= 0 && state < NumStates());
  return {arcs_.data() + arc_offsets_[state],
          arcs_.data() + arc_offsets_[state + 1]};
}

int Fst::MaxPdf() const {
  int max_pdf = -1;
  for (const Arc &arc : arcs_) max_pdf = std::max(max_pdf, arc.pdf);
  return max_pdf;
}

bool Fst::HasEpsilonArcs() const {
  for (const Arc &arc : arcs_)
    if (arc.pdf == kEpsilonPdf) return true;
  return false;
}

bool Fst::Connected() const {
  if (start_ < 0) return false;
  int n = NumStates();
  // Forward reachability from the start state.
  std::vector<bool> reachable(n, false);
  std::vector<int> stack = {start_};
  reachable[start_] = true;
  std::vector<std::vector<int>> reverse_adj(n);
  for (const Arc &arc : arcs_) reverse_adj[arc.dst].push_back(arc.src);
  std::vector<std::vector<int>> adj(n);
  for (const Arc &arc : arcs_) adj[arc.src].push_back(arc.dst);
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int d : adj[s])
      if (!reachable[d]) {
        reachable[d] = true;
        stack.push_back(d);
      }
  }
  // Backward reachability from final states.
  std::vector<bool> coreachable(n, false);
  for (int s = 0; s < n; ++s)
    if (final_weights_[s] != kLogZero) {
      coreachable[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : reverse_adj[s])
      if (!coreachable[p]) {
        coreachable[p] = true;
        stack.push_back(p);
      }
  }
  for (int s = 0; s < n; ++s)
    if (!reachable[s] || !coreachable[s]) return false;
  return true;
}

std::string Fst::ToText() const {
  std::ostringstream os;
  os.precision(17);
  for (const Arc &arc : arcs_)
    os << arc.src << " " << arc.dst << " " << arc.pdf << " " << arc.weight
       << "\n";
  for (int s = 0; s < NumStates(); ++s)
    if (final_weights_[s] != kLogZero)
      os << "F " << s << " " << final_weights_[s] << "\n";
  return os.str();
}

std::string Fst::ToDot() const {
  std::ostringstream os;
  os.precision(6);
  os << "digraph fst {\n  rankdir = LR;\n";
  for (int s = 0; s < NumStates(); ++s) {
    os << "  " << s << " [shape="
       << (final_weights_[s] != kLogZero ? "doublecircle" : "circle") << "];\n";
  }
  if (start_ >= 0)
    os << "  start [shape=point];\n  start -> " << start_ << ";\n";
  for (const Arc &arc : arcs_) {
    os << "  " << arc.src << " -> " << arc.dst << " [label=\"";
    if (arc.pdf == kEpsilonPdf)
      os << "eps";
    else
      os << arc.pdf;
    os << "/" << arc.weight << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace chainlet
