// features/wave.h

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

#ifndef CHAINLET_FEATURES_WAVE_H_
#define CHAINLET_FEATURES_WAVE_H_

#include <string>
#include <vector>

namespace chainlet {

struct Waveform {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = 16000;
};

// Mono PCM16 RIFF reader/writer. Anything else (compression, multi-channel,
// float payloads) is rejected.
Waveform ReadWav(const std::string &path);
void WriteWav(const std::string &path, const Waveform &wave);

}  // namespace chainlet

#endif  // CHAINLET_FEATURES_WAVE_H_
