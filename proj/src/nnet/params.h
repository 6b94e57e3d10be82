// nnet/params.h

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

#ifndef CHAINLET_NNET_PARAMS_H_
#define CHAINLET_NNET_PARAMS_H_

#include <map>
#include <string>
#include <vector>

#include "numerics/tensor.h"

namespace chainlet {

// Named parameter tensors in creation order. Tensor addresses are stable
// for the life of the store, so tapes can bind to them directly.
class ParamStore {
 public:
  Tensor *Create(const std::string &name, std::vector<int64_t> shape);
  Tensor *Get(const std::string &name);
  const Tensor *Get(const std::string &name) const;
  bool Has(const std::string &name) const { return tensors_.count(name) > 0; }
  const std::vector<std::string> &Names() const { return names_; }
  int64_t TotalParameters() const;

  // Names with a given prefix, in creation order.
  std::vector<std::string> NamesWithPrefix(const std::string &prefix) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Tensor> tensors_;
};

// Scaled-uniform initialization with bound 1/sqrt(fan_in), where fan_in is
// the leading dimension for matrices. The stream is derived from
// (seed, name) so initialization order does not matter.
void InitUniformFanIn(Tensor *t, uint64_t seed, const std::string &name);

}  // namespace chainlet

#endif  // CHAINLET_NNET_PARAMS_H_
