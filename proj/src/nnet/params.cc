// nnet/params.cc

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

#include "nnet/params.h"

#include <cmath>

#include "base/error.h"
#include "base/rng.h"

namespace chainlet {

Tensor *ParamStore::Create(const std::string &name,
                           std::vector<int64_t> shape) {
  if (Has(name)) CL_CONTRACT_ERR << "duplicate parameter " << name;
  names_.push_back(name);
  auto [it, inserted] = tensors_.emplace(name, Tensor(std::move(shape)));
  it->second.requires_grad = true;
  return &it->second;
}

Tensor *ParamStore::Get(const std::string &name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) CL_CONTRACT_ERR << "unknown parameter " << name;
  return &it->second;
}

const Tensor *ParamStore::Get(const std::string &name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) CL_CONTRACT_ERR << "unknown parameter " << name;
  return &it->second;
}

int64_t ParamStore::TotalParameters() const {
  int64_t total = 0;
  for (const auto &[name, tensor] : tensors_) total += tensor.NumEl();
  return total;
}

std::vector<std::string> ParamStore::NamesWithPrefix(
    const std::string &prefix) const {
  std::vector<std::string> out;
  for (const std::string &name : names_)
    if (name.rfind(prefix, 0) == 0) out.push_back(name);
  return out;
}

void InitUniformFanIn(Tensor *t, uint64_t seed, const std::string &name) {
  int64_t fan_in = t->Rank() == 2 ? t->Shape()[0] : t->Shape()[0];
  double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Rng rng(DeriveSeed(seed, "init", HashString(name)));
  t->FillUniform(&rng, -bound, bound);
}

}  // namespace chainlet
