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

#ifndef NGDB_NUMERICS_PARAMETERS_HPP_
#define NGDB_NUMERICS_PARAMETERS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ngdb/numerics/ndarray.hpp"

namespace ngdb {

using ParamId = std::size_t;

struct OptimizerConfig;

// Named trainable arrays with gradient buffers and Adam moments. Every
// gradient buffer has its parameter's shape.
class ParameterStore {
 public:
  // Throws InvalidArgument on a duplicate or whitespace-containing name.
  // A non-negative parameter is clamped at zero after every optimizer step.
  ParamId Add(std::string name, NdArray initial, bool non_negative = false);

  std::optional<ParamId> Find(std::string_view name) const;
  ParamId Id(std::string_view name) const;  // throws NotFound

  std::size_t size() const { return entries_.size(); }
  const std::string& name(ParamId id) const { return entries_.at(id).name; }
  bool non_negative(ParamId id) const { return entries_.at(id).non_negative; }
  // Marks a parameter as clamped at zero after every optimizer step.
  void set_non_negative(ParamId id, bool on) {
    entries_.at(id).non_negative = on;
  }

  const NdArray& value(ParamId id) const { return entries_.at(id).value; }
  NdArray& mutable_value(ParamId id) { return entries_.at(id).value; }
  const NdArray& grad(ParamId id) const { return entries_.at(id).grad; }
  NdArray& mutable_grad(ParamId id) { return entries_.at(id).grad; }

  void ZeroGrad();
  std::uint64_t steps() const { return steps_; }

  std::size_t num_scalars() const;

  // Checkpoint text format, documented in docs/checkpoint.md:
  //
  //   ngdb-params 1
  //   <count>
  //   <name> <rank> <dim>...          one header line per parameter
  //   <value> <value> ...             shortest round-trip decimal
  //
  // Optimizer state is not saved.
  void Save(std::ostream& out) const;
  void Save(const std::filesystem::path& path) const;
  static ParameterStore Load(std::istream& in);
  static ParameterStore Load(const std::filesystem::path& path);

  // Copies values from `other`, which must hold the same names and shapes.
  void AssignValues(const ParameterStore& other);

 private:
  friend void OptimizerStep(ParameterStore&, const OptimizerConfig&);

  struct Entry {
    std::string name;
    NdArray value;
    NdArray grad;
    NdArray first_moment;
    NdArray second_moment;
    bool non_negative = false;
  };

  std::vector<Entry> entries_;
  std::map<std::string, ParamId, std::less<>> index_;
  std::uint64_t steps_ = 0;
};

struct OptimizerConfig {
  enum class Kind { kAdam, kSgd };
  Kind kind = Kind::kAdam;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Applies one update from the accumulated gradients, then zeroes them.
// Throws NumericError, leaving parameters untouched, if any gradient is
// non-finite.
void OptimizerStep(ParameterStore& store, const OptimizerConfig& config);

}  // namespace ngdb

#endif  // NGDB_NUMERICS_PARAMETERS_HPP_
