// numerics/tensor.cc

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

#include "numerics/tensor.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "base/error.h"
#include "base/io.h"
#include "base/rng.h"

namespace chainlet {

namespace {
int64_t Product(const std::vector<int64_t> &shape) {
  int64_t n = 1;
  for (int64_t d : shape) {
    CL_REQUIRE(d >= 0);
    n *= d;
  }
  return n;
}
}  // namespace

Tensor::Tensor(std::vector<int64_t> shape)
    : shape_(std::move(shape)), data_(Product(shape_), 0.0) {
  CL_REQUIRE(!shape_.empty());
}

Tensor::Tensor(std::vector<int64_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  CL_REQUIRE(!shape_.empty());
  if (Product(shape_) != static_cast<int64_t>(data_.size()))
    CL_CONTRACT_ERR << "tensor shape/data mismatch: shape product "
                    << Product(shape_) << " vs " << data_.size() << " values";
}

Tensor Tensor::Scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::Matrix(int64_t rows, int64_t cols) {
  return Tensor({rows, cols});
}

int64_t Tensor::Rows() const { return Rank() == 1 ? 1 : shape_[0]; }

int64_t Tensor::Cols() const {
  return Rank() == 1 ? shape_[0] : shape_[1];
}

double &Tensor::At(int64_t r, int64_t c) {
  return data_[static_cast<size_t>(r * Cols() + c)];
}

double Tensor::At(int64_t r, int64_t c) const {
  return data_[static_cast<size_t>(r * Cols() + c)];
}

std::vector<double> &Tensor::Grad() {
  if (grad_.empty()) grad_.assign(data_.size(), 0.0);
  return grad_;
}

void Tensor::ZeroGrad() {
  if (!grad_.empty()) grad_.assign(data_.size(), 0.0);
}

bool Tensor::AllFinite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Tensor::Fill(double value) { data_.assign(data_.size(), value); }

void Tensor::FillUniform(Rng *rng, double lo, double hi) {
  for (double &v : data_) v = lo + (hi - lo) * rng->NextDouble();
}

void Tensor::FillGaussian(Rng *rng, double mean, double stddev) {
  for (double &v : data_) v = mean + stddev * rng->NextGaussian();
}

void Tensor::Write(std::ostream &os) const {
  WriteUint64(os, static_cast<uint64_t>(shape_.size()));
  for (int64_t d : shape_) WriteUint64(os, static_cast<uint64_t>(d));
  WriteDoubleArray(os, data_.data(), data_.size());
}

Tensor Tensor::Read(std::istream &is) {
  uint64_t rank = ReadUint64(is);
  if (rank == 0 || rank > 8) CL_DATA_ERR << "bad tensor rank " << rank;
  std::vector<int64_t> shape(rank);
  for (uint64_t i = 0; i < rank; ++i)
    shape[i] = static_cast<int64_t>(ReadUint64(is));
  Tensor t(shape);
  ReadDoubleArray(is, t.Data(), static_cast<size_t>(t.NumEl()));
  return t;
}

}  // namespace chainlet
