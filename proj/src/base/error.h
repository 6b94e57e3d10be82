// base/error.h

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

#ifndef CHAINLET_BASE_ERROR_H_
#define CHAINLET_BASE_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace chainlet {

// Violation of a documented precondition or invariant (caller bug).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string &msg) : std::logic_error(msg) {}
};

// Bad or missing input data (corrupt file, malformed manifest, short wave).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &msg) : std::runtime_error(msg) {}
};

// Bad configuration (unknown key, unparsable JSON, missing required field).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// Training could not proceed (too many skipped utterances, non-finite loss).
class TrainingAnomalyError : public std::runtime_error {
 public:
  explicit TrainingAnomalyError(const std::string &msg)
      : std::runtime_error(msg) {}
};

namespace internal {

class ErrorStream {
 public:
  ErrorStream(const char *kind, const char *file, int line) : kind_(kind) {
    stream_ << file << ":" << line << ": ";
  }
  template <typename T>
  ErrorStream &operator<<(const T &value) {
    stream_ << value;
    return *this;
  }
  [[noreturn]] ~ErrorStream() noexcept(false) {
    std::string msg = stream_.str();
    if (kind_ == std::string("contract")) throw ContractError(msg);
    if (kind_ == std::string("data")) throw DataError(msg);
    if (kind_ == std::string("config")) throw ConfigError(msg);
    throw TrainingAnomalyError(msg);
  }

 private:
  const char *kind_;
  std::ostringstream stream_;
};

}  // namespace internal
}  // namespace chainlet

#define CL_CONTRACT_ERR \
  ::chainlet::internal::ErrorStream("contract", __FILE__, __LINE__)
#define CL_DATA_ERR ::chainlet::internal::ErrorStream("data", __FILE__, __LINE__)
#define CL_CONFIG_ERR \
  ::chainlet::internal::ErrorStream("config", __FILE__, __LINE__)
#define CL_TRAIN_ERR \
  ::chainlet::internal::ErrorStream("train", __FILE__, __LINE__)

// Precondition check; failure throws ContractError with the failed condition.
#define CL_REQUIRE(cond)                                          \
  do {                                                            \
    if (!(cond)) CL_CONTRACT_ERR << "requirement failed: " #cond; \
  } while (0)

#endif  // CHAINLET_BASE_ERROR_H_
