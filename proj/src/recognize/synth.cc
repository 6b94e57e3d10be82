// recognize/synth.cc

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

#include "recognize/synth.h"

#include <cmath>
#include <filesystem>

#include "base/error.h"
#include "base/rng.h"
#include "features/feature-io.h"

namespace chainlet {

void SynthSpec::Validate() const {
  CL_REQUIRE(num_content_phones >= 2);
  CL_REQUIRE(feature_dim >= 1);
  CL_REQUIRE(noise_stddev >= 0.0);
  CL_REQUIRE(mean_duration >= 1.0);
  CL_REQUIRE(min_phones >= 1 && max_phones >= min_phones);
  CL_REQUIRE(template_stddev > 0.0);
}

SynthSource::SynthSource(const SynthSpec &spec)
    : spec_(spec),
      phones_(MakePhoneSet(spec.num_content_phones)),
      topology_(phones_) {
  spec_.Validate();
  const int P = spec_.num_content_phones;
  // Templates must stay separated relative to the noise; redraw on the
  // (vanishingly unlikely) violation of the margin.
  Rng rng(DeriveSeed(spec_.seed, "templates"));
  for (int attempt = 0; attempt < 100; ++attempt) {
    templates_.clear();
    templates_.emplace_back(Tensor({spec_.feature_dim}));  // silence, unused
    for (int p = 1; p <= P; ++p) {
      Tensor t({spec_.feature_dim});
      t.FillGaussian(&rng, 0.0, spec_.template_stddev);
      templates_.push_back(std::move(t));
    }
    if (MinTemplateDistance() > 4.0 * spec_.noise_stddev) break;
    templates_.clear();
  }
  if (templates_.empty())
    CL_DATA_ERR << "could not draw separated templates for noise "
                << spec_.noise_stddev;

  Rng lm_rng(DeriveSeed(spec_.seed, "source-lm"));
  source_start_.assign(P, 1.0 / P);
  source_trans_.resize(P * P);
  for (int a = 0; a < P; ++a) {
    double row_sum = 0.0;
    for (int b = 0; b < P; ++b) {
      double w = std::exp(1.5 * lm_rng.NextGaussian());
      source_trans_[a * P + b] = w;
      row_sum += w;
    }
    for (int b = 0; b < P; ++b) source_trans_[a * P + b] /= row_sum;
  }
}

const Tensor &SynthSource::Template(int phone) const {
  CL_REQUIRE(phone >= 1 && phone <= spec_.num_content_phones);
  return templates_[phone];
}

double SynthSource::MinTemplateDistance() const {
  double best = 1e300;
  for (size_t a = 1; a < templates_.size(); ++a) {
    for (size_t b = a + 1; b < templates_.size(); ++b) {
      double d2 = 0.0;
      for (int64_t i = 0; i < templates_[a].NumEl(); ++i) {
        double d = templates_[a].Data()[i] - templates_[b].Data()[i];
        d2 += d * d;
      }
      best = std::min(best, std::sqrt(d2));
    }
  }
  return best;
}

SynthesizedUtterance SynthSource::Generate(int64_t utt_index) const {
  Rng rng(DeriveSeed(spec_.seed, "utt", static_cast<uint64_t>(utt_index)));
  const int P = spec_.num_content_phones;

  SynthesizedUtterance utt;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth-%06lld",
                static_cast<long long>(utt_index));
  utt.utt_id = buf;

  auto num_phones =
      static_cast<int>(rng.NextInt(spec_.min_phones, spec_.max_phones));
  utt.transcript.reserve(num_phones);
  // Sample from the source bigram over content phones (ids 1..P).
  double draw = rng.NextDouble();
  int cur = 0;
  double acc = 0.0;
  for (int p = 0; p < P; ++p) {
    acc += source_start_[p];
    if (draw < acc || p == P - 1) {
      cur = p;
      break;
    }
  }
  utt.transcript.push_back(cur + 1);
  for (int i = 1; i < num_phones; ++i) {
    draw = rng.NextDouble();
    acc = 0.0;
    int next = P - 1;
    for (int p = 0; p < P; ++p) {
      acc += source_trans_[cur * P + p];
      if (draw < acc) {
        next = p;
        break;
      }
    }
    utt.transcript.push_back(next + 1);
    cur = next;
  }

  // Geometric durations with mean spec_.mean_duration and minimum 1.
  std::vector<int> durations(num_phones);
  double keep = 1.0 - 1.0 / spec_.mean_duration;
  int64_t total = 0;
  for (int i = 0; i < num_phones; ++i) {
    int d = 1;
    if (keep > 0.0) {
      double u = rng.NextDouble();
      d = 1 + static_cast<int>(std::floor(std::log1p(-u) / std::log(keep)));
    }
    durations[i] = d;
    total += d;
  }

  utt.features.frames = Tensor({total, static_cast<int64_t>(spec_.feature_dim)});
  utt.alignment.reserve(total);
  int64_t frame = 0;
  int left_context = phones_.silence;
  for (int i = 0; i < num_phones; ++i) {
    int phone = utt.transcript[i];
    int unit = topology_.UnitId(left_context, phone);
    for (int d = 0; d < durations[i]; ++d) {
      const Tensor &tmpl = templates_[phone];
      for (int64_t f = 0; f < spec_.feature_dim; ++f)
        utt.features.frames.At(frame, f) =
            tmpl.Data()[f] + spec_.noise_stddev * rng.NextGaussian();
      utt.alignment.push_back(d == 0 ? topology_.ForwardPdf(unit)
                                     : topology_.SelfLoopPdf(unit));
      ++frame;
    }
    left_context = phone;
  }
  return utt;
}

Manifest GenerateCorpus(const SynthSpec &spec, int64_t num_utterances,
                        int64_t index_offset, bool labeled,
                        const std::string &out_dir,
                        const std::string &manifest_path) {
  CL_REQUIRE(num_utterances >= 1);
  std::filesystem::create_directories(out_dir);
  SynthSource source(spec);
  Manifest manifest;
  for (int64_t i = 0; i < num_utterances; ++i) {
    SynthesizedUtterance utt = source.Generate(index_offset + i);
    ManifestEntry entry;
    entry.utt_id = utt.utt_id;
    entry.n_frames = utt.features.NumFrames();
    entry.feature_path = out_dir + "/" + utt.utt_id + ".feat";
    WriteFeatureFile(entry.feature_path, utt.features);
    if (labeled) {
      entry.transcript = utt.transcript;
      entry.alignment_path = out_dir + "/" + utt.utt_id + ".ali";
      WriteAlignmentFile(entry.alignment_path, utt.alignment);
    }
    manifest.entries.push_back(std::move(entry));
  }
  manifest.Save(manifest_path);
  return manifest;
}

}  // namespace chainlet
