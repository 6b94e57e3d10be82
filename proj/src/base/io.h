// base/io.h

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

#ifndef CHAINLET_BASE_IO_H_
#define CHAINLET_BASE_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chainlet {

// Little-endian binary primitives shared by the feature-file and checkpoint
// formats. All on-disk integers are u64, all floats are f64.

void WriteUint64(std::ostream &os, uint64_t value);
uint64_t ReadUint64(std::istream &is);

void WriteDoubleArray(std::ostream &os, const double *data, size_t count);
void ReadDoubleArray(std::istream &is, double *data, size_t count);

void WriteLengthPrefixedString(std::ostream &os, const std::string &s);
std::string ReadLengthPrefixedString(std::istream &is);

std::string ReadFileToString(const std::string &path);
void WriteStringToFile(const std::string &path, const std::string &contents);

}  // namespace chainlet

#endif  // CHAINLET_BASE_IO_H_
