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

#include "ngdb/numerics/ndarray.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

std::size_t Product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

}  // namespace

NdArray::NdArray(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(Product(shape_), fill) {}

NdArray::NdArray(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != Product(shape_)) {
    throw InvalidArgument("NdArray: " + std::to_string(data_.size()) +
                          " values do not fill shape " + ShapeString());
  }
}

NdArray NdArray::Row(std::vector<double> values) {
  const std::size_t n = values.size();
  return NdArray({1, n}, std::move(values));
}

std::size_t NdArray::rows() const {
  if (shape_.size() != 2) {
    throw InvalidArgument("expected a rank-2 array, got " + ShapeString());
  }
  return shape_[0];
}

std::size_t NdArray::cols() const {
  if (shape_.size() != 2) {
    throw InvalidArgument("expected a rank-2 array, got " + ShapeString());
  }
  return shape_[1];
}

bool NdArray::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

void NdArray::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::string NdArray::ShapeString() const {
  std::string s = "[";
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i > 0) s += "x";
    s += std::to_string(shape_[i]);
  }
  return s + "]";
}

}  // namespace ngdb
