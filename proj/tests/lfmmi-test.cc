// tests/lfmmi-test.cc

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
#include "graphs/bigram.h"
#include "graphs/compile.h"
#include "graphs/topology.h"
#include "lfmmi/forward-backward.h"
#include "lfmmi/loss.h"
#include "numerics/gradcheck.h"
#include "numerics/logmath.h"
#include "test-util.h"

using namespace chainlet;
using chainlet::testing::RandomFst;
using chainlet::testing::RandomLogits;

namespace {

struct Problem {
  Topology topo;
  Fst num;
  Fst den;
  int64_t frames;
};

Problem MakeProblem(int content_phones, std::vector<int> transcript,
                    int64_t frames, uint64_t seed) {
  PhoneSet phones = MakePhoneSet(content_phones);
  Topology topo(phones);
  Rng rng(seed);
  std::vector<std::vector<int>> corpus;
  for (int i = 0; i < 20; ++i) {
    std::vector<int> seq;
    int64_t len = rng.NextInt(2, 6);
    for (int64_t j = 0; j < len; ++j)
      seq.push_back(static_cast<int>(rng.NextInt(1, content_phones)));
    corpus.push_back(seq);
  }
  PhoneBigram bigram = EstimatePhoneBigram(corpus, topo.NumPhones());
  Fst num = CompileNumerator(transcript, topo, frames);
  Fst den = BuildDenominator(bigram, topo);
  return Problem{topo, std::move(num), std::move(den), frames};
}

}  // namespace

TEST_CASE("ForwardLog on a single arc equals the logit") {
  Fst fst;
  int a = fst.AddState(), b = fst.AddState();
  fst.SetStart(a);
  fst.AddArc(a, b, 0, 0.0);
  fst.SetFinal(b, 0.0);
  fst.BuildIndex();
  Tensor logits({1, 1}, {1.7});
  LatticeScores scores = ForwardLog(fst, logits);
  CHECK(scores.log_partition == doctest::Approx(1.7).epsilon(1e-15));
}

TEST_CASE("ForwardLog counts numerator paths under zero logits") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1, 2}, topo, 3);
  Tensor logits({3, static_cast<int64_t>(topo.NumPdfs())});
  LatticeScores scores = ForwardLog(num, logits);
  CHECK(scores.log_partition ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("ForwardLog matches enumeration on random graphs") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed * 31 + 5);
    int64_t frames = rng.NextInt(1, 8);
    int num_pdfs = static_cast<int>(rng.NextInt(2, 6));
    Fst fst = RandomFst(&rng, frames, num_pdfs);
    Tensor logits = RandomLogits(&rng, frames, num_pdfs);
    auto paths = EnumeratePaths(fst, frames);
    REQUIRE(!paths.empty());
    std::vector<double> totals;
    for (const auto &[pdfs, weight] : paths) {
      double sum = weight;
      for (int64_t t = 0; t < frames; ++t) sum += logits.At(t, pdfs[t]);
      totals.push_back(sum);
    }
    LatticeScores scores = ForwardLog(fst, logits);
    INFO("seed ", seed);
    CHECK(scores.log_partition ==
          doctest::Approx(LogSumExp(totals)).epsilon(1e-10));
  }
}

TEST_CASE("Alpha-beta product is constant over time") {
  Rng rng(99);
  int64_t frames = 6;
  Fst fst = RandomFst(&rng, frames, 4);
  Tensor logits = RandomLogits(&rng, frames, 4);
  LatticeScores scores = ForwardLog(fst, logits);
  for (int64_t t = 0; t <= frames; ++t) {
    std::vector<double> terms;
    for (int64_t s = 0; s < scores.num_states; ++s)
      terms.push_back(scores.Alpha(t, s) + scores.Beta(t, s));
    CHECK(LogSumExp(terms) ==
          doctest::Approx(scores.log_partition).epsilon(1e-8));
  }
}

TEST_CASE("Occupancies are one-hot on a single-path graph") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1, 2}, topo, 2);
  Rng rng(3);
  Tensor logits = RandomLogits(&rng, 2, topo.NumPdfs());
  LatticeScores scores = ForwardLog(num, logits);
  Posteriors post = Occupancies(num, logits, scores);
  int unit0 = topo.UnitId(phones.silence, 1);
  int unit1 = topo.UnitId(1, 2);
  CHECK(post.gamma.At(0, topo.ForwardPdf(unit0)) == doctest::Approx(1.0));
  CHECK(post.gamma.At(1, topo.ForwardPdf(unit1)) == doctest::Approx(1.0));
}

TEST_CASE("Occupancies split evenly over two equiprobable paths") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1, 2}, topo, 3);
  Tensor logits({3, static_cast<int64_t>(topo.NumPdfs())});
  LatticeScores scores = ForwardLog(num, logits);
  Posteriors post = Occupancies(num, logits, scores);
  int unit_a = topo.UnitId(phones.silence, 1);
  int unit_b = topo.UnitId(1, 2);
  // Frame 1 is either the self-loop of unit a or the entry of unit b.
  CHECK(post.gamma.At(1, topo.SelfLoopPdf(unit_a)) == doctest::Approx(0.5));
  CHECK(post.gamma.At(1, topo.ForwardPdf(unit_b)) == doctest::Approx(0.5));
}

TEST_CASE("Occupancy rows sum to one on random instances") {
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed * 7 + 1);
    int64_t frames = rng.NextInt(1, 8);
    int num_pdfs = static_cast<int>(rng.NextInt(2, 6));
    Fst fst = RandomFst(&rng, frames, num_pdfs);
    Tensor logits = RandomLogits(&rng, frames, num_pdfs);
    LatticeScores scores = ForwardLog(fst, logits);
    Posteriors post = Occupancies(fst, logits, scores);
    for (int64_t t = 0; t < frames; ++t) {
      double sum = 0.0;
      for (int64_t p = 0; p < num_pdfs; ++p) {
        double g = post.gamma.At(t, p);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0 + 1e-9);
        sum += g;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("ForwardLog reports empty compositions") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1, 2}, topo, 2);
  Tensor logits({1, static_cast<int64_t>(topo.NumPdfs())});
  CHECK_THROWS_AS(ForwardLog(num, logits), EmptyCompositionError);
}

TEST_CASE("LfmmiLoss is exactly zero when numerator equals denominator") {
  Rng rng(17);
  Fst fst = RandomFst(&rng, 5, 4);
  Tensor logits = RandomLogits(&rng, 5, 4);
  Tape tape;
  Tape::Node *x = tape.Leaf(logits, true);
  LfmmiResult result = LfmmiLoss(fst, fst, &tape, x);
  CHECK(result.loss->Value().Data()[0] == 0.0);
  for (int64_t i = 0; i < result.grad.NumEl(); ++i)
    CHECK(result.grad.Data()[i] == 0.0);
}

TEST_CASE("LfmmiLoss gradient sums to zero per frame") {
  Problem p = MakeProblem(3, {1, 2}, 7, 11);
  Rng rng(23);
  Tensor logits = RandomLogits(&rng, p.frames, p.topo.NumPdfs());
  Tape tape;
  Tape::Node *x = tape.Leaf(logits, true);
  LfmmiResult result = LfmmiLoss(p.num, p.den, &tape, x);
  for (int64_t t = 0; t < p.frames; ++t) {
    double sum = 0.0;
    for (int64_t pdf = 0; pdf < p.topo.NumPdfs(); ++pdf)
      sum += result.grad.At(t, pdf);
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("LfmmiLoss analytic gradient matches finite differences") {
  Problem p = MakeProblem(3, {1, 3}, 8, 29);
  Rng rng(31);
  Tensor logits = RandomLogits(&rng, p.frames, p.topo.NumPdfs());
  double err = FiniteDiffCheck(
      [&p](Tape &tape, Tape::Node *leaf) {
        return LfmmiLoss(p.num, p.den, &tape, leaf).loss;
      },
      logits);
  CHECK(err < 1e-4);
}

TEST_CASE("LfmmiLoss is invariant to per-frame logit shifts") {
  Problem p = MakeProblem(3, {2, 1}, 6, 37);
  Rng rng(41);
  Tensor logits = RandomLogits(&rng, p.frames, p.topo.NumPdfs());
  Tape tape;
  double base =
      LfmmiLoss(p.num, p.den, &tape, tape.Leaf(logits, false)).loss->Value()
          .Data()[0];
  for (int64_t t = 0; t < p.frames; ++t) {
    Tensor shifted = logits;
    for (int64_t pdf = 0; pdf < p.topo.NumPdfs(); ++pdf)
      shifted.At(t, pdf) += 3.25;
    Tape tape2;
    double value = LfmmiLoss(p.num, p.den, &tape2, tape2.Leaf(shifted, false))
                       .loss->Value()
                       .Data()[0];
    CHECK(value == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("Gradient descent on the logits decreases the loss") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Problem p = MakeProblem(3, {1, 2, 1}, 9, seed * 13);
    Rng rng(seed * 17 + 3);
    Tensor logits = RandomLogits(&rng, p.frames, p.topo.NumPdfs());
    double prev = 1e300;
    for (int step = 0; step < 50; ++step) {
      Tape tape;
      LfmmiResult r = LfmmiLoss(p.num, p.den, &tape, tape.Leaf(logits, false));
      double value = r.loss->Value().Data()[0];
      CHECK(value < prev);
      prev = value;
      for (int64_t i = 0; i < logits.NumEl(); ++i)
        logits.Data()[i] -= 0.5 * r.grad.Data()[i];
    }
  }
}

TEST_CASE("LfmmiLoss hard-errors when the denominator is empty") {
  PhoneSet phones = MakePhoneSet(2);
  Topology topo(phones);
  Fst num = CompileNumerator({1}, topo, 1);
  // A "denominator" that only accepts 2-frame paths.
  Fst bad = CompileNumerator({1, 2}, topo, 2);
  Tensor logits({1, static_cast<int64_t>(topo.NumPdfs())});
  Tape tape;
  Tape::Node *x = tape.Leaf(logits, false);
  CHECK_THROWS_AS(LfmmiLoss(bad, num, &tape, x), EmptyCompositionError);
  CHECK_THROWS_AS(LfmmiLoss(num, bad, &tape, x), ContractError);
}

TEST_CASE("Cross entropy of uniform logits is log num_pdfs") {
  Tensor logits({3, 8});
  Tape tape;
  CrossEntropyResult r =
      CrossEntropyLoss({1, 5, 7}, &tape, tape.Leaf(logits, false));
  CHECK(r.loss->Value().Data()[0] ==
        doctest::Approx(std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("Cross entropy vanishes when logits favor the alignment") {
  Tensor logits({2, 4});
  logits.At(0, 2) = 200.0;
  logits.At(1, 0) = 200.0;
  Tape tape;
  CrossEntropyResult r =
      CrossEntropyLoss({2, 0}, &tape, tape.Leaf(logits, false));
  CHECK(r.loss->Value().Data()[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Cross entropy gradient matches finite differences") {
  Rng rng(47);
  Tensor logits = RandomLogits(&rng, 5, 6);
  std::vector<int> alignment = {0, 3, 5, 2, 2};
  double err = FiniteDiffCheck(
      [&alignment](Tape &tape, Tape::Node *leaf) {
        return CrossEntropyLoss(alignment, &tape, leaf).loss;
      },
      logits);
  CHECK(err < 1e-6);
}

TEST_CASE("Cross entropy rejects out-of-range pdf ids") {
  Tensor logits({2, 4});
  Tape tape;
  Tape::Node *x = tape.Leaf(logits, false);
  CHECK_THROWS_AS(CrossEntropyLoss({0, 4}, &tape, x), ContractError);
  CHECK_THROWS_AS(CrossEntropyLoss({0}, &tape, x), ContractError);
}

TEST_CASE("LFMMI loss through the tape reaches upstream parameters") {
  // logits = W * x so the External hook must push gradients into W.
  Problem p = MakeProblem(2, {1}, 3, 53);
  Rng rng(59);
  Tensor x({3, 4});
  x.FillGaussian(&rng, 0.0, 1.0);
  Tensor w({4, static_cast<int64_t>(p.topo.NumPdfs())});
  w.FillGaussian(&rng, 0.0, 0.5);
  double err = FiniteDiffCheck(
      [&](Tape &tape, const std::vector<Tape::Node *> &leaves) {
        Tape::Node *xn = tape.Leaf(x, false);
        Tape::Node *logits = tape.MatMul(xn, leaves[0]);
        return LfmmiLoss(p.num, p.den, &tape, logits).loss;
      },
      {w});
  CHECK(err < 1e-4);
}
