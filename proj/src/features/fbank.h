// features/fbank.h

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

#ifndef CHAINLET_FEATURES_FBANK_H_
#define CHAINLET_FEATURES_FBANK_H_

#include <vector>

#include "features/wave.h"
#include "numerics/tensor.h"

namespace chainlet {

// T x F log-mel energies. frame_shift/length are in samples at 16 kHz.
struct FeatureMatrix {
  Tensor frames;  // rank 2, T x F
  int64_t NumFrames() const { return frames.Rows(); }
  int64_t NumMel() const { return frames.Cols(); }
};

struct FbankConfig {
  int num_mel = 80;
  int sample_rate = 16000;
  int frame_length = 400;  // 25 ms
  int frame_shift = 160;   // 10 ms
  int fft_size = 512;
  double preemphasis = 0.97;
  double low_freq = 20.0;
  double high_freq = 7600.0;
  double log_floor = 1e-10;
};

// Frames, pre-emphasizes, Hamming-windows, takes the power spectrum and
// applies a triangular HTK-mel filterbank, then log with floor. Deterministic:
// identical input gives bit-identical output.
FeatureMatrix ComputeFbank(const Waveform &wave, const FbankConfig &config);

// Number of frames for a given sample count (the framing law used by
// ComputeFbank). Returns 0 when the wave is shorter than one window.
int64_t NumFbankFrames(int64_t num_samples, const FbankConfig &config);

// Mel filter center frequencies in Hz, one per output channel.
std::vector<double> MelCenterFrequencies(const FbankConfig &config);

// Per-utterance mean subtraction, applied before features enter a model.
void MeanNormalize(FeatureMatrix *features);

// In-place radix-2 complex FFT (size must be a power of two); inverse = true
// applies the conjugate transform without the 1/n scale.
void Fft(std::vector<double> *real, std::vector<double> *imag, bool inverse);

}  // namespace chainlet

#endif  // CHAINLET_FEATURES_FBANK_H_
