// graphs/compile.cc

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

#include "graphs/compile.h"

#include "base/error.h"
#include "numerics/logmath.h"

namespace chainlet {

Fst CompileNumerator(const std::vector<int> &transcript,
                     const Topology &topology, int64_t num_frames,
                     bool optional_silence) {
  if (transcript.empty()) CL_DATA_ERR << "empty transcript";
  for (int phone : transcript)
    CL_REQUIRE(phone >= 0 && phone < topology.NumPhones());
  if (num_frames < static_cast<int64_t>(transcript.size()))
    CL_DATA_ERR << "transcript longer than utterance: " << transcript.size()
                << " phones, " << num_frames << " frames";
  const int sil = topology.Silence();

  Fst fst;
  int start = fst.AddState();
  fst.SetStart(start);

  // States from which the first phone unit may be entered: the start state,
  // plus an optional leading-silence unit. The first phone's left context is
  // silence either way.
  std::vector<int> entries = {start};
  if (optional_silence) {
    int sil_unit = topology.UnitId(sil, sil);
    int sil_state = fst.AddState();
    fst.AddArc(start, sil_state, topology.ForwardPdf(sil_unit), 0.0);
    fst.AddArc(sil_state, sil_state, topology.SelfLoopPdf(sil_unit), 0.0);
    entries.push_back(sil_state);
  }

  int context = sil;
  int prev = -1;
  for (size_t i = 0; i < transcript.size(); ++i) {
    int unit = topology.UnitId(context, transcript[i]);
    int state = fst.AddState();
    if (i == 0) {
      for (int entry : entries)
        fst.AddArc(entry, state, topology.ForwardPdf(unit), 0.0);
    } else {
      fst.AddArc(prev, state, topology.ForwardPdf(unit), 0.0);
    }
    fst.AddArc(state, state, topology.SelfLoopPdf(unit), 0.0);
    prev = state;
    context = transcript[i];
  }
  fst.SetFinal(prev, 0.0);
  if (optional_silence) {
    int tail_unit = topology.UnitId(context, sil);
    int tail = fst.AddState();
    fst.AddArc(prev, tail, topology.ForwardPdf(tail_unit), 0.0);
    fst.AddArc(tail, tail, topology.SelfLoopPdf(tail_unit), 0.0);
    fst.SetFinal(tail, 0.0);
  }
  fst.BuildIndex();
  return fst;
}

Fst BuildDenominator(const PhoneBigram &bigram, const Topology &topology) {
  CL_REQUIRE(bigram.num_phones == topology.NumPhones());
  const int P = topology.NumPhones();
  const int sil = topology.Silence();

  Fst fst;
  int start = fst.AddState();
  fst.SetStart(start);
  // State s = 1 + unit holds the emitting state of that unit.
  std::vector<int> unit_state(topology.NumUnits());
  for (int unit = 0; unit < topology.NumUnits(); ++unit)
    unit_state[unit] = fst.AddState();

  for (int p = 0; p < P; ++p) {
    int unit = topology.UnitId(sil, p);
    fst.AddArc(start, unit_state[unit], topology.ForwardPdf(unit),
               bigram.Start(p));
  }
  for (int unit = 0; unit < topology.NumUnits(); ++unit) {
    int phone = topology.PhoneOfUnit(unit);
    fst.AddArc(unit_state[unit], unit_state[unit], topology.SelfLoopPdf(unit),
               0.0);
    for (int next = 0; next < P; ++next) {
      int next_unit = topology.UnitId(phone, next);
      fst.AddArc(unit_state[unit], unit_state[next_unit],
                 topology.ForwardPdf(next_unit), bigram.Trans(phone, next));
    }
    fst.SetFinal(unit_state[unit], bigram.End(phone));
  }
  fst.BuildIndex();
  return fst;
}

namespace {

void EnumerateDfs(const Fst &fst, int state, int64_t t, int64_t num_frames,
                  double weight, std::vector<int> *labels,
                  std::vector<std::pair<std::vector<int>, double>> *out) {
  if (t == num_frames) {
    double final_weight = fst.FinalWeight(state);
    if (final_weight != kLogZero)
      out->emplace_back(*labels, weight + final_weight);
    if (out->size() > (1u << 21))
      CL_CONTRACT_ERR << "path enumeration exceeded 2^21 accepting paths";
    return;
  }
  for (const Arc &arc : fst.ArcsFrom(state)) {
    if (arc.pdf == kEpsilonPdf)
      CL_CONTRACT_ERR << "enumeration requires an epsilon-free graph";
    labels->push_back(arc.pdf);
    EnumerateDfs(fst, arc.dst, t + 1, num_frames, weight + arc.weight, labels,
                 out);
    labels->pop_back();
  }
}

}  // namespace

std::vector<std::pair<std::vector<int>, double>> EnumeratePaths(
    const Fst &fst, int64_t num_frames) {
  if (num_frames > 12 || fst.NumStates() > 64)
    CL_CONTRACT_ERR << "enumeration oracle limited to T <= 12 and 64 states; "
                    << "got T = " << num_frames << ", " << fst.NumStates()
                    << " states";
  CL_REQUIRE(fst.Indexed());
  std::vector<std::pair<std::vector<int>, double>> paths;
  std::vector<int> labels;
  EnumerateDfs(fst, fst.Start(), 0, num_frames, 0.0, &labels, &paths);
  return paths;
}

}  // namespace chainlet
