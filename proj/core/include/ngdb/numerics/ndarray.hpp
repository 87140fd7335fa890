//
// Copyright 2026 The ngdb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NGDB_NUMERICS_NDARRAY_HPP_
#define NGDB_NUMERICS_NDARRAY_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ngdb {

// Dense row-major array of doubles. data().size() == product of shape().
// The differentiable ops work on rank-2 arrays; a scalar is 1x1 and a
// vector is a 1xd row.
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(std::vector<std::size_t> shape, double fill = 0.0);
  // Throws InvalidArgument if data.size() does not match the shape.
  NdArray(std::vector<std::size_t> shape, std::vector<double> data);

  static NdArray Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) {
    return NdArray({rows, cols}, fill);
  }
  static NdArray Row(std::vector<double> values);
  static NdArray Scalar(double value) { return NdArray({1, 1}, value); }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Rank-2 accessors; throw InvalidArgument on other ranks.
  std::size_t rows() const;
  std::size_t cols() const;

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * shape_[1] + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * shape_[1] + c];
  }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols(), cols());
  }
  std::span<double> row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols(), cols());
  }

  bool AllFinite() const;
  void Fill(double value);

  std::string ShapeString() const;

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

}  // namespace ngdb

#endif  // NGDB_NUMERICS_NDARRAY_HPP_
