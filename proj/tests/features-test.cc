// tests/features-test.cc

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
#include "features/fbank.h"
#include "features/feature-io.h"
#include "features/perturb.h"
#include "features/wave.h"
#include "test-util.h"

using namespace chainlet;

namespace {

Waveform Sine(double freq_hz, double seconds, int sample_rate,
              double amplitude = 0.5, int fade_samples = 0) {
  Waveform wave;
  wave.sample_rate = sample_rate;
  auto n = static_cast<int64_t>(seconds * sample_rate);
  wave.samples.resize(n);
  for (int64_t i = 0; i < n; ++i) {
    double v = amplitude * std::sin(2.0 * M_PI * freq_hz * i / sample_rate);
    if (fade_samples > 0) {
      if (i < fade_samples)
        v *= 0.5 - 0.5 * std::cos(M_PI * i / fade_samples);
      if (n - 1 - i < fade_samples)
        v *= 0.5 - 0.5 * std::cos(M_PI * (n - 1 - i) / fade_samples);
    }
    wave.samples[i] = v;
  }
  return wave;
}

}  // namespace

TEST_CASE("One second of 16 kHz audio gives 98 frames of dim 80") {
  FbankConfig cfg;
  Waveform wave = Sine(440.0, 1.0, 16000);
  FeatureMatrix f = ComputeFbank(wave, cfg);
  CHECK(f.NumFrames() == 98);
  CHECK(f.NumMel() == 80);
}

TEST_CASE("Frame count formula on 1000 random lengths") {
  FbankConfig cfg;
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    int64_t len = rng.NextInt(400, 50000);
    int64_t expected = 1 + (len - cfg.frame_length) / cfg.frame_shift;
    CHECK(NumFbankFrames(len, cfg) == expected);
  }
  CHECK(NumFbankFrames(399, cfg) == 0);
  CHECK(NumFbankFrames(400, cfg) == 1);
}

TEST_CASE("Pure tone peaks at the mel channel nearest its frequency") {
  FbankConfig cfg;
  Waveform wave = Sine(1000.0, 0.5, 16000);
  FeatureMatrix f = ComputeFbank(wave, cfg);
  // Independent oracle: the channel whose center frequency is closest to
  // the tone.
  std::vector<double> centers = MelCenterFrequencies(cfg);
  int oracle = 0;
  for (size_t m = 1; m < centers.size(); ++m)
    if (std::abs(centers[m] - 1000.0) < std::abs(centers[oracle] - 1000.0))
      oracle = static_cast<int>(m);
  for (int64_t t = 0; t < f.NumFrames(); ++t) {
    int argmax = 0;
    for (int64_t m = 1; m < f.NumMel(); ++m)
      if (f.frames.At(t, m) > f.frames.At(t, argmax))
        argmax = static_cast<int>(m);
    CHECK(std::abs(argmax - oracle) <= 1);
  }
  // And the argmax is constant across frames.
  int first_argmax = 0;
  for (int64_t m = 1; m < f.NumMel(); ++m)
    if (f.frames.At(0, m) > f.frames.At(0, first_argmax))
      first_argmax = static_cast<int>(m);
  for (int64_t t = 1; t < f.NumFrames(); ++t) {
    int argmax = 0;
    for (int64_t m = 1; m < f.NumMel(); ++m)
      if (f.frames.At(t, m) > f.frames.At(t, argmax))
        argmax = static_cast<int>(m);
    CHECK(argmax == first_argmax);
  }
}

TEST_CASE("All-zero waveform hits the log floor everywhere") {
  FbankConfig cfg;
  Waveform wave;
  wave.sample_rate = 16000;
  wave.samples.assign(1600, 0.0);
  FeatureMatrix f = ComputeFbank(wave, cfg);
  double floor = std::log(cfg.log_floor);
  for (int64_t i = 0; i < f.frames.NumEl(); ++i)
    CHECK(f.frames.Data()[i] == floor);
}

TEST_CASE("Fbank is deterministic") {
  FbankConfig cfg;
  Waveform wave = Sine(723.0, 0.3, 16000);
  FeatureMatrix a = ComputeFbank(wave, cfg);
  FeatureMatrix b = ComputeFbank(wave, cfg);
  for (int64_t i = 0; i < a.frames.NumEl(); ++i)
    CHECK(a.frames.Data()[i] == b.frames.Data()[i]);
}

TEST_CASE("Fbank rejects short or mis-rated input") {
  FbankConfig cfg;
  Waveform wave = Sine(440.0, 0.01, 16000);  // 160 samples < one window
  CHECK_THROWS_AS(ComputeFbank(wave, cfg), DataError);
  Waveform wrong_rate = Sine(440.0, 1.0, 8000);
  CHECK_THROWS_AS(ComputeFbank(wrong_rate, cfg), DataError);
}

TEST_CASE("FFT matches a naive DFT") {
  Rng rng(9);
  const size_t n = 64;
  std::vector<double> re(n), im(n, 0.0);
  for (double &x : re) x = rng.NextGaussian();
  std::vector<double> re_in = re, im_in = im;
  Fft(&re, &im, false);
  for (size_t k = 0; k < n; ++k) {
    double sum_r = 0.0, sum_i = 0.0;
    for (size_t t = 0; t < n; ++t) {
      double angle = -2.0 * M_PI * k * t / n;
      sum_r += re_in[t] * std::cos(angle) - im_in[t] * std::sin(angle);
      sum_i += re_in[t] * std::sin(angle) + im_in[t] * std::cos(angle);
    }
    CHECK(re[k] == doctest::Approx(sum_r).epsilon(1e-9));
    CHECK(im[k] == doctest::Approx(sum_i).epsilon(1e-9));
  }
}

TEST_CASE("Mean normalization zeroes the channel means") {
  Rng rng(21);
  FeatureMatrix f;
  f.frames = Tensor({40, 8});
  f.frames.FillGaussian(&rng, 3.0, 2.0);
  MeanNormalize(&f);
  for (int64_t m = 0; m < 8; ++m) {
    double mean = 0.0;
    for (int64_t t = 0; t < 40; ++t) mean += f.frames.At(t, m);
    CHECK(std::abs(mean / 40.0) < 1e-12);
  }
}

TEST_CASE("Speed perturbation at factor 1 is the identity") {
  Waveform wave = Sine(300.0, 0.2, 16000);
  Waveform out = SpeedPerturb(wave, 1.0);
  REQUIRE(out.samples.size() == wave.samples.size());
  for (size_t i = 0; i < out.samples.size(); ++i)
    CHECK(out.samples[i] == wave.samples[i]);
}

TEST_CASE("Speed perturbation length law") {
  Waveform wave;
  wave.sample_rate = 16000;
  wave.samples.assign(16000, 0.1);
  auto slow = SpeedPerturb(wave, 0.9).samples.size();
  CHECK((slow == 17777 || slow == 17778));
  auto fast = SpeedPerturb(wave, 1.1).samples.size();
  CHECK((fast == 14545 || fast == 14546));
  CHECK_THROWS_AS(SpeedPerturb(wave, 0.0), ContractError);
}

TEST_CASE("Speed perturbation scales the frame count by 1/factor") {
  FbankConfig cfg;
  Waveform wave = Sine(500.0, 1.0, 16000);
  int64_t base = ComputeFbank(wave, cfg).NumFrames();
  for (double factor : {0.9, 1.1}) {
    int64_t frames = ComputeFbank(SpeedPerturb(wave, factor), cfg).NumFrames();
    auto expected = static_cast<int64_t>(std::llround(base / factor));
    CHECK(std::abs(frames - expected) <= 2);
  }
}

TEST_CASE("Volume perturbation scales and clips") {
  Waveform wave;
  wave.sample_rate = 16000;
  wave.samples = {0.1, -0.4, 0.5, 0.9, -0.95};
  Waveform same = VolumePerturb(wave, 1.0);
  for (size_t i = 0; i < wave.samples.size(); ++i)
    CHECK(same.samples[i] == wave.samples[i]);
  Waveform doubled = VolumePerturb(wave, 2.0);
  CHECK(doubled.samples[0] == doctest::Approx(0.2));
  CHECK(doubled.samples[1] == doctest::Approx(-0.8));
  CHECK(doubled.samples[2] == doctest::Approx(1.0));
  CHECK(doubled.samples[3] == 1.0);   // clipped
  CHECK(doubled.samples[4] == -1.0);  // clipped
}

TEST_CASE("Resampling preserves DC exactly and doubles the length") {
  Waveform wave;
  wave.sample_rate = 8000;
  wave.samples.assign(500, 0.25);
  Waveform out = Resample8kTo16k(wave);
  CHECK(out.sample_rate == 16000);
  CHECK(out.samples.size() == 1000);
  for (double v : out.samples) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("Resampled sine tracks the analytic signal") {
  // Fade-in/out keeps the boundary transient of the interpolator out of the
  // comparison; the steady-state error is what the tolerance speaks to.
  Waveform wave = Sine(1000.0, 0.25, 8000, 0.5, 64);
  Waveform out = Resample8kTo16k(wave);
  REQUIRE(out.samples.size() == wave.samples.size() * 2);
  double max_err = 0.0;
  auto n = static_cast<int64_t>(out.samples.size());
  for (int64_t i = 0; i < n; ++i) {
    double expected_time = static_cast<double>(i) / 16000.0;
    double fade = 1.0;
    double j = expected_time * 8000.0;  // position in input samples
    auto fade_n = 64.0;
    if (j < fade_n) fade = 0.5 - 0.5 * std::cos(M_PI * j / fade_n);
    double tail = static_cast<double>(wave.samples.size() - 1) - j;
    if (tail < fade_n)
      fade = std::min(
          fade, tail <= 0.0 ? 0.0 : 0.5 - 0.5 * std::cos(M_PI * tail / fade_n));
    double expected =
        0.5 * fade * std::sin(2.0 * M_PI * 1000.0 * expected_time);
    max_err = std::max(max_err, std::abs(out.samples[i] - expected));
  }
  CHECK(max_err < 1e-2);
}

TEST_CASE("Resampling rejects bad input") {
  Waveform wrong;
  wrong.sample_rate = 16000;
  wrong.samples.assign(100, 0.0);
  CHECK_THROWS_AS(Resample8kTo16k(wrong), DataError);
  Waveform empty;
  empty.sample_rate = 8000;
  CHECK_THROWS_AS(Resample8kTo16k(empty), DataError);
}

TEST_CASE("WAV round trip") {
  testing::TempDir dir("wav");
  Waveform wave = Sine(440.0, 0.1, 16000);
  std::string path = dir.Path("tone.wav");
  WriteWav(path, wave);
  Waveform back = ReadWav(path);
  CHECK(back.sample_rate == 16000);
  REQUIRE(back.samples.size() == wave.samples.size());
  double max_err = 0.0;
  for (size_t i = 0; i < wave.samples.size(); ++i)
    max_err = std::max(max_err, std::abs(back.samples[i] - wave.samples[i]));
  CHECK(max_err < 1.0 / 32000.0);  // PCM16 quantization
  CHECK_THROWS_AS(ReadWav(dir.Path("missing.wav")), DataError);
}

TEST_CASE("Feature file round trip is bit-exact") {
  testing::TempDir dir("feats");
  Rng rng(31);
  FeatureMatrix f;
  f.frames = Tensor({17, 80});
  f.frames.FillGaussian(&rng, -4.0, 3.0);
  std::string path = dir.Path("utt1.feat");
  WriteFeatureFile(path, f);
  FeatureMatrix back = ReadFeatureFile(path);
  REQUIRE(back.NumFrames() == 17);
  REQUIRE(back.NumMel() == 80);
  for (int64_t i = 0; i < f.frames.NumEl(); ++i)
    CHECK(back.frames.Data()[i] == f.frames.Data()[i]);
}
