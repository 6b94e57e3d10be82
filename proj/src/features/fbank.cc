// features/fbank.cc

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

#include "features/fbank.h"

#include <cmath>

#include "base/error.h"

namespace chainlet {

namespace {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular filters with centers equally spaced on the HTK mel scale.
// weights[m] maps fft bin -> weight for mel channel m over bins
// [first_bin[m], first_bin[m] + weights[m].size()).
struct MelBanks {
  std::vector<std::vector<double>> weights;
  std::vector<int> first_bin;
  std::vector<double> center_hz;
};

MelBanks MakeMelBanks(const FbankConfig &cfg) {
  int num_bins = cfg.fft_size / 2 + 1;
  double nyquist = cfg.sample_rate / 2.0;
  CL_REQUIRE(cfg.num_mel >= 1);
  CL_REQUIRE(cfg.low_freq >= 0.0 && cfg.high_freq <= nyquist &&
             cfg.low_freq < cfg.high_freq);
  double mel_low = HzToMel(cfg.low_freq);
  double mel_high = HzToMel(cfg.high_freq);
  double mel_step = (mel_high - mel_low) / (cfg.num_mel + 1);

  MelBanks banks;
  banks.weights.resize(cfg.num_mel);
  banks.first_bin.resize(cfg.num_mel);
  banks.center_hz.resize(cfg.num_mel);
  double bin_width = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
  for (int m = 0; m < cfg.num_mel; ++m) {
    double left = mel_low + m * mel_step;
    double center = left + mel_step;
    double right = center + mel_step;
    banks.center_hz[m] = MelToHz(center);
    int first = -1;
    std::vector<double> w;
    for (int k = 0; k < num_bins; ++k) {
      double mel = HzToMel(k * bin_width);
      double weight = 0.0;
      if (mel > left && mel < right)
        weight = mel <= center ? (mel - left) / (center - left)
                               : (right - mel) / (right - center);
      if (weight > 0.0) {
        if (first < 0) first = k;
        w.push_back(weight);
      } else if (first >= 0) {
        break;  // triangles are contiguous in frequency
      }
    }
    if (first < 0) first = 0;
    banks.first_bin[m] = first;
    banks.weights[m] = std::move(w);
  }
  return banks;
}

}  // namespace

void Fft(std::vector<double> *real, std::vector<double> *imag, bool inverse) {
  size_t n = real->size();
  CL_REQUIRE(n == imag->size());
  CL_REQUIRE(n > 0 && (n & (n - 1)) == 0);
  auto &re = *real;
  auto &im = *imag;
  // Bit reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1 : -1);
    double wr = std::cos(angle), wi = std::sin(angle);
    for (size_t i = 0; i < n; i += len) {
      double cur_r = 1.0, cur_i = 0.0;
      for (size_t k = 0; k < len / 2; ++k) {
        double ur = re[i + k], ui = im[i + k];
        double vr = re[i + k + len / 2] * cur_r - im[i + k + len / 2] * cur_i;
        double vi = re[i + k + len / 2] * cur_i + im[i + k + len / 2] * cur_r;
        re[i + k] = ur + vr;
        im[i + k] = ui + vi;
        re[i + k + len / 2] = ur - vr;
        im[i + k + len / 2] = ui - vi;
        double next_r = cur_r * wr - cur_i * wi;
        cur_i = cur_r * wi + cur_i * wr;
        cur_r = next_r;
      }
    }
  }
}

int64_t NumFbankFrames(int64_t num_samples, const FbankConfig &config) {
  if (num_samples < config.frame_length) return 0;
  return 1 + (num_samples - config.frame_length) / config.frame_shift;
}

std::vector<double> MelCenterFrequencies(const FbankConfig &config) {
  return MakeMelBanks(config).center_hz;
}

FeatureMatrix ComputeFbank(const Waveform &wave, const FbankConfig &config) {
  CL_REQUIRE(config.num_mel >= 1);
  if (wave.sample_rate != config.sample_rate)
    CL_DATA_ERR << "expected " << config.sample_rate << " Hz input, got "
                << wave.sample_rate;
  int64_t num_frames =
      NumFbankFrames(static_cast<int64_t>(wave.samples.size()), config);
  if (num_frames == 0)
    CL_DATA_ERR << "utterance too short: " << wave.samples.size()
                << " samples < one " << config.frame_length << "-sample window";
  CL_REQUIRE(config.fft_size >= config.frame_length);

  MelBanks banks = MakeMelBanks(config);
  std::vector<double> window(config.frame_length);
  for (int n = 0; n < config.frame_length; ++n)
    window[n] = 0.54 - 0.46 * std::cos(2.0 * M_PI * n /
                                       (config.frame_length - 1));

  FeatureMatrix feats;
  feats.frames = Tensor({num_frames, static_cast<int64_t>(config.num_mel)});
  std::vector<double> re(config.fft_size), im(config.fft_size);
  int num_bins = config.fft_size / 2 + 1;
  std::vector<double> power(num_bins);

  for (int64_t t = 0; t < num_frames; ++t) {
    const double *frame = wave.samples.data() + t * config.frame_shift;
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    for (int n = 0; n < config.frame_length; ++n) {
      double prev = n == 0 ? frame[0] : frame[n - 1];
      re[n] = (frame[n] - config.preemphasis * prev) * window[n];
    }
    Fft(&re, &im, false);
    for (int k = 0; k < num_bins; ++k) power[k] = re[k] * re[k] + im[k] * im[k];
    for (int m = 0; m < config.num_mel; ++m) {
      double energy = 0.0;
      const auto &w = banks.weights[m];
      int first = banks.first_bin[m];
      for (size_t j = 0; j < w.size(); ++j) energy += w[j] * power[first + j];
      feats.frames.At(t, m) = std::log(std::max(energy, config.log_floor));
    }
  }
  return feats;
}

void MeanNormalize(FeatureMatrix *features) {
  Tensor &f = features->frames;
  int64_t rows = f.Rows(), cols = f.Cols();
  CL_REQUIRE(rows > 0);
  for (int64_t c = 0; c < cols; ++c) {
    double mean = 0.0;
    for (int64_t r = 0; r < rows; ++r) mean += f.At(r, c);
    mean /= static_cast<double>(rows);
    for (int64_t r = 0; r < rows; ++r) f.At(r, c) -= mean;
  }
}

}  // namespace chainlet
