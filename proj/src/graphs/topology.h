// graphs/topology.h

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

#ifndef CHAINLET_GRAPHS_TOPOLOGY_H_
#define CHAINLET_GRAPHS_TOPOLOGY_H_

#include <string>
#include <vector>

namespace chainlet {

// Ordered phone inventory. Index 0 is the reserved silence symbol, which
// also serves as the left context at utterance boundaries.
struct PhoneSet {
  std::vector<std::string> symbols;
  int silence = 0;

  int NumPhones() const { return static_cast<int>(symbols.size()); }
  void Validate() const;
};

// "sil", "p1", ..., "pN".
PhoneSet MakePhoneSet(int num_content_phones);

// Left-context biphone units over the full phone set, chain-style topology:
// one emitting state per unit with a forward-transition pdf and a distinct
// self-loop pdf. Unit ids and pdf ids are dense.
class Topology {
 public:
  explicit Topology(const PhoneSet &phones);

  int NumPhones() const { return num_phones_; }
  int NumUnits() const { return num_phones_ * num_phones_; }
  int NumPdfs() const { return 2 * NumUnits(); }

  int UnitId(int left_context, int phone) const;
  int ForwardPdf(int unit) const { return 2 * unit; }
  int SelfLoopPdf(int unit) const { return 2 * unit + 1; }

  int PhoneOfUnit(int unit) const { return unit % num_phones_; }
  int LeftContextOfUnit(int unit) const { return unit / num_phones_; }
  int UnitOfPdf(int pdf) const { return pdf / 2; }
  bool IsForwardPdf(int pdf) const { return pdf % 2 == 0; }
  int Silence() const { return silence_; }

 private:
  int num_phones_;
  int silence_;
};

}  // namespace chainlet

#endif  // CHAINLET_GRAPHS_TOPOLOGY_H_
