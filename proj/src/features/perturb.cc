// features/perturb.cc

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

#include "features/perturb.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"

namespace chainlet {

Waveform SpeedPerturb(const Waveform &wave, double factor) {
  if (!(factor > 0.0)) CL_CONTRACT_ERR << "speed factor must be > 0";
  if (factor == 1.0) return wave;
  Waveform out;
  out.sample_rate = wave.sample_rate;
  int64_t in_len = static_cast<int64_t>(wave.samples.size());
  auto out_len =
      static_cast<int64_t>(std::llround(static_cast<double>(in_len) / factor));
  out.samples.resize(out_len);
  for (int64_t i = 0; i < out_len; ++i) {
    double pos = static_cast<double>(i) * factor;
    auto lo = static_cast<int64_t>(std::floor(pos));
    double frac = pos - static_cast<double>(lo);
    int64_t hi = std::min(lo + 1, in_len - 1);
    lo = std::min(lo, in_len - 1);
    out.samples[i] =
        (1.0 - frac) * wave.samples[lo] + frac * wave.samples[hi];
  }
  return out;
}

Waveform VolumePerturb(const Waveform &wave, double gain) {
  if (!(gain > 0.0)) CL_CONTRACT_ERR << "volume gain must be > 0";
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.resize(wave.samples.size());
  for (size_t i = 0; i < wave.samples.size(); ++i)
    out.samples[i] = std::clamp(wave.samples[i] * gain, -1.0, 1.0);
  return out;
}

Waveform Resample8kTo16k(const Waveform &wave) {
  if (wave.sample_rate != 8000)
    CL_DATA_ERR << "expected 8000 Hz input, got " << wave.sample_rate;
  if (wave.samples.empty()) CL_DATA_ERR << "empty waveform";
  constexpr int kHalfTaps = 8;  // 16 taps total
  // Half-sample interpolation kernel: windowed sinc at offsets k + 0.5,
  // normalized to unit sum so DC passes exactly.
  double taps[2 * kHalfTaps];
  double tap_sum = 0.0;
  for (int k = 0; k < 2 * kHalfTaps; ++k) {
    double d = static_cast<double>(k - kHalfTaps) + 0.5;  // -7.5 .. 7.5
    double sinc = std::sin(M_PI * d) / (M_PI * d);
    double win = 0.5 + 0.5 * std::cos(M_PI * d / kHalfTaps);  // Hann
    taps[k] = sinc * win;
    tap_sum += taps[k];
  }
  for (double &t : taps) t /= tap_sum;

  int64_t n = static_cast<int64_t>(wave.samples.size());
  Waveform out;
  out.sample_rate = 16000;
  out.samples.resize(2 * n);
  for (int64_t i = 0; i < n; ++i) {
    out.samples[2 * i] = wave.samples[i];
    double acc = 0.0;
    for (int k = 0; k < 2 * kHalfTaps; ++k) {
      int64_t src = i + k - (kHalfTaps - 1);  // taps centered on i + 0.5
      src = std::clamp<int64_t>(src, 0, n - 1);
      acc += taps[k] * wave.samples[src];
    }
    out.samples[2 * i + 1] = acc;
  }
  return out;
}

}  // namespace chainlet
