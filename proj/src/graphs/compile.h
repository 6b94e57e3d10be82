// graphs/compile.h

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

#ifndef CHAINLET_GRAPHS_COMPILE_H_
#define CHAINLET_GRAPHS_COMPILE_H_

#include <utility>
#include <vector>

#include "graphs/bigram.h"
#include "graphs/fst.h"
#include "graphs/topology.h"

namespace chainlet {

// Numerator: a linear chain of left-context biphone units, one emitting
// state per unit with an unweighted self-loop; accepts exactly the length-T
// pdf sequences that spell the transcript. Boundary left context is the
// silence symbol. When optional_silence is set, a silence unit may be
// traversed before the first and after the last phone.
Fst CompileNumerator(const std::vector<int> &transcript,
                     const Topology &topology, int64_t num_frames,
                     bool optional_silence = false);

// Denominator: one state per (left context, phone) unit; cross-unit arcs
// carry bigram log-probabilities, self-loops are unweighted, start/final
// weights come from the start/end distributions. Accepts every biphone
// sequence, so every numerator path is also a denominator path.
Fst BuildDenominator(const PhoneBigram &bigram, const Topology &topology);

// Exhaustive enumeration of accepting length-T paths: (pdf sequence, total
// log-weight including the final weight). Brute-force oracle; guarded to
// T <= 12, states <= 64 and 2^21 paths.
std::vector<std::pair<std::vector<int>, double>> EnumeratePaths(
    const Fst &fst, int64_t num_frames);

}  // namespace chainlet

#endif  // CHAINLET_GRAPHS_COMPILE_H_
