// train/manifest.h

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

#ifndef CHAINLET_TRAIN_MANIFEST_H_
#define CHAINLET_TRAIN_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

namespace chainlet {

// One JSON object per line: {"utt_id", "feature_path", "n_frames",
// "transcript"?: [phone ids], "alignment_path"?}. Unknown keys are a hard
// error.
struct ManifestEntry {
  std::string utt_id;
  std::string feature_path;
  int64_t n_frames = 0;
  std::optional<std::vector<int>> transcript;
  std::string alignment_path;  // empty when absent
};

struct Manifest {
  std::vector<ManifestEntry> entries;

  static Manifest Load(const std::string &path);
  void Save(const std::string &path) const;
  bool AllLabeled() const;
};

// Frame-level pdf ids, stored as u64 count + u64 entries.
void WriteAlignmentFile(const std::string &path,
                        const std::vector<int> &alignment);
std::vector<int> ReadAlignmentFile(const std::string &path);

}  // namespace chainlet

#endif  // CHAINLET_TRAIN_MANIFEST_H_
