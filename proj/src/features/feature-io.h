// features/feature-io.h

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

#ifndef CHAINLET_FEATURES_FEATURE_IO_H_
#define CHAINLET_FEATURES_FEATURE_IO_H_

#include <string>

#include "features/fbank.h"

namespace chainlet {

// One file per utterance: header (T, F as u64, little-endian) followed by
// row-major f64 frames.
void WriteFeatureFile(const std::string &path, const FeatureMatrix &features);
FeatureMatrix ReadFeatureFile(const std::string &path);

}  // namespace chainlet

#endif  // CHAINLET_FEATURES_FEATURE_IO_H_
