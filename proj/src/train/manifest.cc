// train/manifest.cc

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

#include "train/manifest.h"

#include <fstream>

#include "base/error.h"
#include "base/io.h"
#include "json.hpp"

namespace chainlet {

using nlohmann::json;

Manifest Manifest::Load(const std::string &path) {
  std::ifstream is(path);
  if (!is) CL_DATA_ERR << "cannot open manifest " << path;
  Manifest manifest;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json parsed;
    try {
      parsed = json::parse(line);
    } catch (const json::parse_error &e) {
      CL_DATA_ERR << path << ":" << line_no << ": bad JSON: " << e.what();
    }
    ManifestEntry entry;
    for (auto &[key, value] : parsed.items()) {
      if (key == "utt_id") {
        entry.utt_id = value.get<std::string>();
      } else if (key == "feature_path") {
        entry.feature_path = value.get<std::string>();
      } else if (key == "n_frames") {
        entry.n_frames = value.get<int64_t>();
      } else if (key == "transcript") {
        entry.transcript = value.get<std::vector<int>>();
      } else if (key == "alignment_path") {
        entry.alignment_path = value.get<std::string>();
      } else {
        CL_DATA_ERR << path << ":" << line_no << ": unknown manifest key '"
                    << key << "'";
      }
    }
    if (entry.utt_id.empty() || entry.feature_path.empty())
      CL_DATA_ERR << path << ":" << line_no
                  << ": manifest entry needs utt_id and feature_path";
    manifest.entries.push_back(std::move(entry));
  }
  if (manifest.entries.empty()) CL_DATA_ERR << path << ": empty manifest";
  return manifest;
}

void Manifest::Save(const std::string &path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) CL_DATA_ERR << "cannot write manifest " << path;
  for (const ManifestEntry &entry : entries) {
    json line;
    line["utt_id"] = entry.utt_id;
    line["feature_path"] = entry.feature_path;
    line["n_frames"] = entry.n_frames;
    if (entry.transcript.has_value()) line["transcript"] = *entry.transcript;
    if (!entry.alignment_path.empty())
      line["alignment_path"] = entry.alignment_path;
    os << line.dump() << "\n";
  }
  if (!os) CL_DATA_ERR << "short write to " << path;
}

bool Manifest::AllLabeled() const {
  for (const ManifestEntry &entry : entries)
    if (!entry.transcript.has_value()) return false;
  return true;
}

void WriteAlignmentFile(const std::string &path,
                        const std::vector<int> &alignment) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) CL_DATA_ERR << "cannot write alignment " << path;
  WriteUint64(os, alignment.size());
  for (int pdf : alignment) WriteUint64(os, static_cast<uint64_t>(pdf));
  if (!os) CL_DATA_ERR << "short write to " << path;
}

std::vector<int> ReadAlignmentFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) CL_DATA_ERR << "cannot open alignment " << path;
  uint64_t count = ReadUint64(is);
  if (count > (1ull << 32)) CL_DATA_ERR << path << ": implausible alignment";
  std::vector<int> alignment(count);
  for (uint64_t i = 0; i < count; ++i)
    alignment[i] = static_cast<int>(ReadUint64(is));
  return alignment;
}

}  // namespace chainlet
