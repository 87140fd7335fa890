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

#ifndef NGDB_NUMERICS_TAPE_HPP_
#define NGDB_NUMERICS_TAPE_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ngdb/numerics/ndarray.hpp"
#include "ngdb/numerics/parameters.hpp"

namespace ngdb {

class Tape;

// Handle to a value recorded on a Tape. Cheap to copy; valid while the tape
// lives.
class Var {
 public:
  Var() = default;

  Tape* tape() const { return tape_; }
  std::uint32_t index() const { return index_; }
  bool valid() const { return tape_ != nullptr; }

  const NdArray& value() const;

 private:
  friend class Tape;
  Var(Tape* tape, std::uint32_t index) : tape_(tape), index_(index) {}

  Tape* tape_ = nullptr;
  std::uint32_t index_ = 0;
};

// Dynamic reverse-mode tape. Every differentiable op appends one node; the
// node order is a topological order, so Backward walks it in reverse. One
// tape per loss evaluation; tapes are not shared across threads.
//
// Parameters enter as leaves that read a ParameterStore without modifying
// it; AccumulateGradients adds the leaf gradients into the store afterwards.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const NdArray& out_grad)>;

  // With record_gradients = false no backward closures are kept, which is
  // the cheaper mode for inference.
  explicit Tape(bool record_gradients = true)
      : record_gradients_(record_gradients) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Throws NumericError on non-finite input.
  Var Constant(NdArray value);

  // Leaf bound to store.value(id). Repeated calls on one tape return the
  // same Var.
  Var Parameter(const ParameterStore& store, ParamId id);

  const NdArray& value(Var v) const;
  // Gradient of the last Backward loss w.r.t. v; empty when v was not
  // reached.
  const NdArray& grad(Var v) const;

  // `loss` must be a 1x1 value recorded on this tape (InvalidArgument
  // otherwise). May be called once per tape.
  void Backward(Var loss);

  // Adds gradients of parameter leaves bound to `store` into store's
  // gradient buffers.
  void AccumulateGradients(ParameterStore& store) const;

  std::size_t size() const { return nodes_.size(); }
  bool record_gradients() const { return record_gradients_; }

  // Op-implementation interface. `fn` receives the output gradient and must
  // accumulate into MutableGrad(input.index()) for each input it touches.
  // Throws InvalidArgument for inputs from another tape and NumericError for
  // non-finite values.
  Var Record(NdArray value, std::initializer_list<Var> inputs, BackwardFn fn);
  Var Record(NdArray value, std::span<const Var> inputs, BackwardFn fn);
  NdArray& MutableGrad(std::uint32_t index);
  const NdArray& ValueAt(std::uint32_t index) const {
    return nodes_[index].value;
  }
  bool NeedsGrad(std::uint32_t index) const {
    return nodes_[index].requires_grad;
  }

 private:
  struct Node {
    NdArray value;
    NdArray grad;
    BackwardFn backward;
    bool requires_grad = false;
  };

  void CheckOwned(Var v) const;

  // std::deque keeps references to node values stable as the tape grows.
  std::deque<Node> nodes_;
  std::map<std::pair<const ParameterStore*, ParamId>, std::uint32_t>
      parameter_leaves_;
  bool record_gradients_;
  bool backward_done_ = false;
};

}  // namespace ngdb

#endif  // NGDB_NUMERICS_TAPE_HPP_
