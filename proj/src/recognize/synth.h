// recognize/synth.h

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

#ifndef CHAINLET_RECOGNIZE_SYNTH_H_
#define CHAINLET_RECOGNIZE_SYNTH_H_

#include <string>
#include <vector>

#include "features/fbank.h"
#include "graphs/topology.h"
#include "train/manifest.h"

namespace chainlet {

// Desk-scale corpus: each phone has an 80-dim spectral template and a
// geometric duration; frames are template + iid Gaussian noise. Phone
// sequences come from a fixed random bigram source model.
struct SynthSpec {
  int num_content_phones = 12;
  int feature_dim = 80;
  double noise_stddev = 0.3;
  double mean_duration = 5.0;  // frames per phone, geometric with min 1
  int min_phones = 20;
  int max_phones = 60;
  double template_stddev = 1.0;
  uint64_t seed = 0;

  void Validate() const;
};

struct SynthesizedUtterance {
  std::string utt_id;
  FeatureMatrix features;
  std::vector<int> transcript;  // phone ids (silence id 0 never emitted)
  std::vector<int> alignment;   // true pdf per frame (biphone topology)
};

// Templates and the source bigram are fixed functions of spec.seed; each
// utterance index then generates deterministically, so corpora are
// reproducible and disjoint index ranges give disjoint data.
class SynthSource {
 public:
  explicit SynthSource(const SynthSpec &spec);

  SynthesizedUtterance Generate(int64_t utt_index) const;
  const PhoneSet &Phones() const { return phones_; }
  const Topology &Topo() const { return topology_; }
  const Tensor &Template(int phone) const;
  double MinTemplateDistance() const;

 private:
  SynthSpec spec_;
  PhoneSet phones_;
  Topology topology_;
  std::vector<Tensor> templates_;     // per content phone, index 1..P
  std::vector<double> source_start_;  // over content phones
  std::vector<double> source_trans_;  // row-major content x content
};

// Writes feature (and alignment) files plus a manifest under out_dir;
// labeled corpora carry transcripts and oracle alignments. Returns the
// manifest (already saved to manifest_path).
Manifest GenerateCorpus(const SynthSpec &spec, int64_t num_utterances,
                        int64_t index_offset, bool labeled,
                        const std::string &out_dir,
                        const std::string &manifest_path);

}  // namespace chainlet

#endif  // CHAINLET_RECOGNIZE_SYNTH_H_
