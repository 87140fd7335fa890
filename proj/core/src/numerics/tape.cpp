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

#include "ngdb/numerics/tape.hpp"

#include <string>

#include "ngdb/common/error.hpp"

namespace ngdb {

const NdArray& Var::value() const {
  if (tape_ == nullptr) throw InvalidArgument("value() on an unbound Var");
  return tape_->value(*this);
}

void Tape::CheckOwned(Var v) const {
  if (v.tape_ != this || v.index_ >= nodes_.size()) {
    throw InvalidArgument("Var was not recorded on this tape");
  }
}

Var Tape::Constant(NdArray value) {
  if (!value.AllFinite()) throw NumericError("Constant: non-finite input");
  nodes_.push_back(Node{std::move(value), {}, nullptr, false});
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

Var Tape::Parameter(const ParameterStore& store, ParamId id) {
  const auto key = std::make_pair(&store, id);
  if (auto it = parameter_leaves_.find(key); it != parameter_leaves_.end()) {
    return Var(this, it->second);
  }
  const NdArray& value = store.value(id);
  if (!value.AllFinite()) {
    throw NumericError("parameter " + store.name(id) + " is non-finite");
  }
  nodes_.push_back(Node{value, {}, nullptr, record_gradients_});
  const auto index = static_cast<std::uint32_t>(nodes_.size() - 1);
  parameter_leaves_.emplace(key, index);
  return Var(this, index);
}

const NdArray& Tape::value(Var v) const {
  CheckOwned(v);
  return nodes_[v.index_].value;
}

const NdArray& Tape::grad(Var v) const {
  CheckOwned(v);
  return nodes_[v.index_].grad;
}

Var Tape::Record(NdArray value, std::initializer_list<Var> inputs,
                 BackwardFn fn) {
  return Record(std::move(value),
                std::span<const Var>(inputs.begin(), inputs.size()),
                std::move(fn));
}

Var Tape::Record(NdArray value, std::span<const Var> inputs, BackwardFn fn) {
  bool requires_grad = false;
  for (Var in : inputs) {
    CheckOwned(in);
    requires_grad = requires_grad || nodes_[in.index_].requires_grad;
  }
  if (!value.AllFinite()) {
    throw NumericError("operation produced a non-finite value " +
                       value.ShapeString());
  }
  requires_grad = requires_grad && record_gradients_;
  nodes_.push_back(Node{std::move(value), {},
                        requires_grad ? std::move(fn) : nullptr,
                        requires_grad});
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

NdArray& Tape::MutableGrad(std::uint32_t index) {
  Node& node = nodes_[index];
  if (node.grad.empty() && !node.value.empty()) {
    node.grad = NdArray(node.value.shape(), 0.0);
  }
  return node.grad;
}

void Tape::Backward(Var loss) {
  CheckOwned(loss);
  if (backward_done_) throw InvalidArgument("Backward called twice on a tape");
  const NdArray& v = nodes_[loss.index_].value;
  if (v.rank() != 2 || v.size() != 1) {
    throw InvalidArgument("Backward: loss must be 1x1, got " + v.ShapeString());
  }
  backward_done_ = true;
  if (!nodes_[loss.index_].requires_grad) return;
  MutableGrad(loss.index_).Fill(1.0);
  for (std::size_t i = loss.index_ + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (node.backward && !node.grad.empty()) {
      // Copy: the closure may grow other nodes' grads but never this one.
      const NdArray out_grad = node.grad;
      node.backward(*this, out_grad);
    }
  }
}

void Tape::AccumulateGradients(ParameterStore& store) const {
  for (const auto& [key, index] : parameter_leaves_) {
    if (key.first != &store) continue;
    const NdArray& g = nodes_[index].grad;
    if (g.empty()) continue;
    NdArray& target = store.mutable_grad(key.second);
    auto dst = target.data();
    auto src = g.data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
}

}  // namespace ngdb
