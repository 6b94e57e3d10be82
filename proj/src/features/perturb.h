// features/perturb.h

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

#ifndef CHAINLET_FEATURES_PERTURB_H_
#define CHAINLET_FEATURES_PERTURB_H_

#include "features/wave.h"

namespace chainlet {

// Time-axis resampling by linear interpolation; output duration is
// input / factor (+-1 sample). Factor 1.0 is the exact identity.
Waveform SpeedPerturb(const Waveform &wave, double factor);

// Gain then clip to [-1, 1].
Waveform VolumePerturb(const Waveform &wave, double gain);

// Band-limited 2x upsampling with a 16-tap windowed-sinc interpolator.
// Requires an 8 kHz input; output is 16 kHz with doubled length.
Waveform Resample8kTo16k(const Waveform &wave);

}  // namespace chainlet

#endif  // CHAINLET_FEATURES_PERTURB_H_
