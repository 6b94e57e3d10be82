// features/wave.cc

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

#include "features/wave.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "base/error.h"

namespace chainlet {

namespace {

uint32_t ReadU32(std::istream &is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char *>(b), 4);
  if (!is) CL_DATA_ERR << "truncated WAV header";
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t ReadU16(std::istream &is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char *>(b), 2);
  if (!is) CL_DATA_ERR << "truncated WAV header";
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void WriteU32(std::ostream &os, uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF),
               static_cast<char>((v >> 24) & 0xFF)};
  os.write(b, 4);
}

void WriteU16(std::ostream &os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
  os.write(b, 2);
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) CL_DATA_ERR << "cannot open wav file " << path;
  char tag[4];
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "RIFF", 4) != 0)
    CL_DATA_ERR << path << ": not a RIFF file";
  ReadU32(is);  // chunk size, unused
  is.read(tag, 4);
  if (!is || std::memcmp(tag, "WAVE", 4) != 0)
    CL_DATA_ERR << path << ": not a WAVE file";

  Waveform wave;
  uint16_t channels = 0, bits = 0;
  bool have_fmt = false;
  while (is.read(tag, 4)) {
    uint32_t size = ReadU32(is);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      uint16_t format = ReadU16(is);
      channels = ReadU16(is);
      wave.sample_rate = static_cast<int>(ReadU32(is));
      ReadU32(is);  // byte rate
      ReadU16(is);  // block align
      bits = ReadU16(is);
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      if (format != 1) CL_DATA_ERR << path << ": only PCM supported";
      if (channels != 1) CL_DATA_ERR << path << ": only mono supported";
      if (bits != 16) CL_DATA_ERR << path << ": only 16-bit supported";
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) CL_DATA_ERR << path << ": data chunk before fmt";
      size_t count = size / 2;
      wave.samples.resize(count);
      std::vector<char> raw(size);
      is.read(raw.data(), size);
      if (!is) CL_DATA_ERR << path << ": truncated data chunk";
      for (size_t i = 0; i < count; ++i) {
        int16_t s = static_cast<int16_t>(
            static_cast<unsigned char>(raw[2 * i]) |
            (static_cast<unsigned char>(raw[2 * i + 1]) << 8));
        wave.samples[i] = static_cast<double>(s) / 32768.0;
      }
      return wave;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);  // chunks are word-aligned
    }
  }
  CL_DATA_ERR << path << ": no data chunk";
}

void WriteWav(const std::string &path, const Waveform &wave) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) CL_DATA_ERR << "cannot write wav file " << path;
  uint32_t data_bytes = static_cast<uint32_t>(wave.samples.size() * 2);
  os.write("RIFF", 4);
  WriteU32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32(os, 16);
  WriteU16(os, 1);  // PCM
  WriteU16(os, 1);  // mono
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate));
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate * 2));
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  WriteU32(os, data_bytes);
  for (double v : wave.samples) {
    double clipped = std::clamp(v, -1.0, 1.0);
    auto s = static_cast<int16_t>(std::lrint(clipped * 32767.0));
    WriteU16(os, static_cast<uint16_t>(s));
  }
  if (!os) CL_DATA_ERR << "short write to " << path;
}

}  // namespace chainlet
