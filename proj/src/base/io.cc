// base/io.cc

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

#include "base/io.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "base/error.h"

namespace chainlet {

void WriteUint64(std::ostream &os, uint64_t value) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = (value >> (8 * i)) & 0xFF;
  os.write(reinterpret_cast<const char *>(bytes), 8);
}

uint64_t ReadUint64(std::istream &is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char *>(bytes), 8);
  if (!is) CL_DATA_ERR << "unexpected end of stream reading u64";
  uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  return value;
}

void WriteDoubleArray(std::ostream &os, const double *data, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    uint64_t bits;
    std::memcpy(&bits, &data[i], 8);
    WriteUint64(os, bits);
  }
}

void ReadDoubleArray(std::istream &is, double *data, size_t count) {
  for (size_t i = 0; i < count; ++i) {
    uint64_t bits = ReadUint64(is);
    std::memcpy(&data[i], &bits, 8);
  }
}

void WriteLengthPrefixedString(std::ostream &os, const std::string &s) {
  WriteUint64(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadLengthPrefixedString(std::istream &is) {
  uint64_t n = ReadUint64(is);
  if (n > (1ull << 32)) CL_DATA_ERR << "implausible string length " << n;
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  if (!is) CL_DATA_ERR << "unexpected end of stream reading string";
  return s;
}

std::string ReadFileToString(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) CL_DATA_ERR << "cannot open " << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteStringToFile(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) CL_DATA_ERR << "cannot write " << path;
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) CL_DATA_ERR << "short write to " << path;
}

}  // namespace chainlet
