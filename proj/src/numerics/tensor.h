// numerics/tensor.h

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

#ifndef CHAINLET_NUMERICS_TENSOR_H_
#define CHAINLET_NUMERICS_TENSOR_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace chainlet {

class Rng;

// Dense row-major f64 tensor. Rank 1 and 2 cover everything in this toolkit;
// a scalar is shape {1}. The grad buffer is allocated lazily and always
// mirrors the value shape.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int64_t> shape);  // zero-filled
  Tensor(std::vector<int64_t> shape, std::vector<double> data);

  static Tensor Scalar(double value);
  static Tensor Matrix(int64_t rows, int64_t cols);

  const std::vector<int64_t> &Shape() const { return shape_; }
  int64_t Rank() const { return static_cast<int64_t>(shape_.size()); }
  int64_t NumEl() const { return static_cast<int64_t>(data_.size()); }

  // Rank-2 accessors; Rows()/Cols() treat a rank-1 tensor as a single row.
  int64_t Rows() const;
  int64_t Cols() const;
  double &At(int64_t r, int64_t c);
  double At(int64_t r, int64_t c) const;

  double *Data() { return data_.data(); }
  const double *Data() const { return data_.data(); }
  std::vector<double> &Values() { return data_; }
  const std::vector<double> &Values() const { return data_; }

  bool requires_grad = false;

  bool HasGrad() const { return !grad_.empty(); }
  // Allocates (zero) on first use; shape mirrors the value.
  std::vector<double> &Grad();
  const std::vector<double> &Grad() const { return grad_; }
  void ZeroGrad();

  bool AllFinite() const;
  bool SameShape(const Tensor &other) const { return shape_ == other.shape_; }

  void FillUniform(Rng *rng, double lo, double hi);
  void FillGaussian(Rng *rng, double mean, double stddev);
  void Fill(double value);

  // Binary layout: header (rank, dims as u64, little-endian) + f64 payload.
  // Round trips are bit-exact.
  void Write(std::ostream &os) const;
  static Tensor Read(std::istream &is);

 private:
  std::vector<int64_t> shape_;
  std::vector<double> data_;
  std::vector<double> grad_;
};

}  // namespace chainlet

#endif  // CHAINLET_NUMERICS_TENSOR_H_
