// tests/recognize-test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "base/error.h"
#include "base/rng.h"
#include "doctest.h"
#include "features/feature-io.h"
#include "graphs/bigram.h"
#include "graphs/compile.h"
#include "lfmmi/forward-backward.h"
#include "recognize/per.h"
#include "recognize/synth.h"
#include "recognize/viterbi.h"
#include "test-util.h"

using namespace chainlet;
using chainlet::testing::RandomFst;
using chainlet::testing::RandomLogits;

TEST_CASE("Viterbi on a single-path graph sums its terms") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1}, topo, 3);
  Rng rng(1);
  Tensor logits = RandomLogits(&rng, 3, topo.NumPdfs());
  Hypothesis hyp = Viterbi(num, logits, topo);
  int unit = topo.UnitId(phones.silence, 1);
  double expected = logits.At(0, topo.ForwardPdf(unit)) +
                    logits.At(1, topo.SelfLoopPdf(unit)) +
                    logits.At(2, topo.SelfLoopPdf(unit));
  CHECK(hyp.log_score == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hyp.phones == std::vector<int>{1});
}

TEST_CASE("Viterbi matches the max over enumerated paths") {
  PhoneSet phones = MakePhoneSet(3);
  Topology topo(phones);
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed * 97 + 11);
    int64_t frames = rng.NextInt(1, 8);
    int num_pdfs = static_cast<int>(rng.NextInt(2, 6));
    Fst fst = RandomFst(&rng, frames, num_pdfs);
    Tensor logits = RandomLogits(&rng, frames, num_pdfs);
    auto paths = EnumeratePaths(fst, frames);
    double best = -1e300;
    for (const auto &[pdfs, weight] : paths) {
      double total = weight;
      for (int64_t t = 0; t < frames; ++t) total += logits.At(t, pdfs[t]);
      best = std::max(best, total);
    }
    Hypothesis hyp = Viterbi(fst, logits, topo);
    INFO("seed ", seed);
    CHECK(hyp.log_score == doctest::Approx(best).epsilon(1e-10));
  }
}

TEST_CASE("Viterbi score never exceeds the forward partition") {
  PhoneSet phones = MakePhoneSet(3);
  Topology topo(phones);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed * 13);
    int64_t frames = rng.NextInt(2, 8);
    Fst fst = RandomFst(&rng, frames, 5);
    Tensor logits = RandomLogits(&rng, frames, 5);
    Hypothesis hyp = Viterbi(fst, logits, topo);
    LatticeScores scores = ForwardLog(fst, logits);
    CHECK(hyp.log_score <= scores.log_partition + 1e-12);
  }
}

TEST_CASE("Planted one-hot logits decode to the planted transcript") {
  SynthSpec spec;
  spec.num_content_phones = 5;
  spec.min_phones = 4;
  spec.max_phones = 8;
  spec.seed = 77;
  SynthSource source(spec);
  const Topology &topo = source.Topo();

  std::vector<std::vector<int>> corpus;
  for (int i = 0; i < 50; ++i) corpus.push_back(source.Generate(i).transcript);
  PhoneBigram bigram = EstimatePhoneBigram(corpus, topo.NumPhones());
  Fst den = BuildDenominator(bigram, topo);

  for (int i = 0; i < 10; ++i) {
    SynthesizedUtterance utt = source.Generate(100 + i);
    auto frames = static_cast<int64_t>(utt.alignment.size());
    Tensor logits({frames, static_cast<int64_t>(topo.NumPdfs())});
    for (int64_t t = 0; t < frames; ++t)
      logits.At(t, utt.alignment[t]) = 12.0;
    Hypothesis hyp = Viterbi(den, logits, topo);
    CHECK(hyp.phones == utt.transcript);
  }
}

TEST_CASE("Viterbi reports unreachable lengths") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1, 2}, topo, 2);
  Tensor logits({1, static_cast<int64_t>(topo.NumPdfs())});
  CHECK_THROWS_AS(Viterbi(num, logits, topo), EmptyCompositionError);
}

TEST_CASE("PER basics") {
  PerReport equal = PhoneErrorRate({{1, 2, 3}}, {{1, 2, 3}});
  CHECK(equal.per == 0.0);

  PerReport del = PhoneErrorRate({{1, 2, 3}}, {{1, 3}});
  CHECK(del.deletions == 1);
  CHECK(del.substitutions == 0);
  CHECK(del.insertions == 0);
  CHECK(del.per == doctest::Approx(100.0 / 3.0));

  CHECK_THROWS_AS(PhoneErrorRate({{1}}, {}), ContractError);
}

namespace {

// Distance-only reference, independent of the counting implementation.
int64_t ReferenceEditDistance(const std::vector<int> &a,
                              const std::vector<int> &b) {
  std::vector<std::vector<int64_t>> d(a.size() + 1,
                                      std::vector<int64_t>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int64_t>(i);
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int64_t>(j);
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (a[i - 1] != b[j - 1]),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});
  return d[a.size()][b.size()];
}

}  // namespace

TEST_CASE("Edit counts total the reference distance on random pairs") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> ref, hyp;
    int64_t n = rng.NextInt(0, 12), m = rng.NextInt(0, 12);
    for (int64_t i = 0; i < n; ++i)
      ref.push_back(static_cast<int>(rng.NextInt(1, 4)));
    for (int64_t j = 0; j < m; ++j)
      hyp.push_back(static_cast<int>(rng.NextInt(1, 4)));
    EditCounts counts = LevenshteinAlign(ref, hyp);
    CHECK(counts.Total() == ReferenceEditDistance(ref, hyp));
  }
}

TEST_CASE("Noise-free synthesis reproduces the templates exactly") {
  SynthSpec spec;
  spec.num_content_phones = 4;
  spec.noise_stddev = 0.0;
  spec.min_phones = 3;
  spec.max_phones = 6;
  spec.seed = 9;
  SynthSource source(spec);
  SynthesizedUtterance utt = source.Generate(0);
  // Every frame equals its phone's template bit-exactly, so the nearest
  // template classifier makes zero frame errors against the alignment.
  int64_t errors = 0;
  for (int64_t t = 0; t < utt.features.NumFrames(); ++t) {
    int unit = source.Topo().UnitOfPdf(utt.alignment[t]);
    int phone = source.Topo().PhoneOfUnit(unit);
    int best = 1;
    double best_d = 1e300;
    for (int cand = 1; cand <= spec.num_content_phones; ++cand) {
      double d2 = 0.0;
      const Tensor &tmpl = source.Template(cand);
      for (int64_t f = 0; f < tmpl.NumEl(); ++f) {
        double d = utt.features.frames.At(t, f) - tmpl.Data()[f];
        d2 += d * d;
      }
      if (d2 < best_d) {
        best_d = d2;
        best = cand;
      }
    }
    if (best != phone) ++errors;
    CHECK(best_d == 0.0);
  }
  CHECK(errors == 0);
}

TEST_CASE("Synthesis is reproducible and length follows the spec") {
  SynthSpec spec;
  spec.seed = 4242;
  SynthSource a(spec), b(spec);
  double total_frames = 0.0, total_phones = 0.0;
  for (int i = 0; i < 300; ++i) {
    SynthesizedUtterance ua = a.Generate(i);
    SynthesizedUtterance ub = b.Generate(i);
    CHECK(ua.transcript == ub.transcript);
    CHECK(ua.alignment == ub.alignment);
    for (int64_t j = 0; j < ua.features.frames.NumEl(); ++j)
      CHECK(ua.features.frames.Data()[j] == ub.features.frames.Data()[j]);
    total_frames += static_cast<double>(ua.features.NumFrames());
    total_phones += static_cast<double>(ua.transcript.size());
  }
  double mean_phones = total_phones / 300.0;
  double mean_frames = total_frames / 300.0;
  CHECK(mean_phones == doctest::Approx(40.0).epsilon(0.1));
  CHECK(mean_frames ==
        doctest::Approx(mean_phones * spec.mean_duration).epsilon(0.1));
}

TEST_CASE("Synthetic alignments follow the biphone topology") {
  SynthSpec spec;
  spec.num_content_phones = 6;
  spec.seed = 17;
  SynthSource source(spec);
  SynthesizedUtterance utt = source.Generate(3);
  const Topology &topo = source.Topo();
  REQUIRE(static_cast<int64_t>(utt.alignment.size()) ==
          utt.features.NumFrames());
  // Decode the alignment back into phones via forward pdfs.
  std::vector<int> phones;
  int left = source.Phones().silence;
  for (int pdf : utt.alignment) {
    int unit = topo.UnitOfPdf(pdf);
    if (topo.IsForwardPdf(pdf)) {
      CHECK(topo.LeftContextOfUnit(unit) == left);
      phones.push_back(topo.PhoneOfUnit(unit));
      left = topo.PhoneOfUnit(unit);
    } else {
      CHECK(topo.PhoneOfUnit(unit) == left);
    }
  }
  CHECK(phones == utt.transcript);
}

TEST_CASE("Templates stay separated relative to the noise") {
  SynthSpec spec;
  spec.seed = 31;
  SynthSource source(spec);
  CHECK(source.MinTemplateDistance() > 4.0 * spec.noise_stddev);
}

TEST_CASE("GenerateCorpus writes a loadable manifest") {
  testing::TempDir dir("synth");
  SynthSpec spec;
  spec.num_content_phones = 4;
  spec.min_phones = 3;
  spec.max_phones = 5;
  spec.seed = 12;
  Manifest manifest = GenerateCorpus(spec, 5, 100, true, dir.Path("data"),
                                     dir.Path("train.jsonl"));
  CHECK(manifest.entries.size() == 5);
  Manifest loaded = Manifest::Load(dir.Path("train.jsonl"));
  REQUIRE(loaded.entries.size() == 5);
  CHECK(loaded.AllLabeled());
  FeatureMatrix f = ReadFeatureFile(loaded.entries[0].feature_path);
  CHECK(f.NumFrames() == loaded.entries[0].n_frames);
  std::vector<int> ali = ReadAlignmentFile(loaded.entries[0].alignment_path);
  CHECK(static_cast<int64_t>(ali.size()) == f.NumFrames());

  Manifest unlabeled = GenerateCorpus(spec, 3, 0, false, dir.Path("data"),
                                      dir.Path("pt.jsonl"));
  CHECK(!unlabeled.AllLabeled());
}
