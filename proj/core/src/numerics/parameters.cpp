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

#include "ngdb/numerics/parameters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ngdb/common/error.hpp"

namespace ngdb {
namespace {

constexpr std::string_view kMagic = "ngdb-params";
constexpr int kVersion = 1;

std::string FormatDouble(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

double ParseDouble(const std::string& token) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw ParseError("checkpoint: bad number '" + token + "'", 0);
  }
  return x;
}

}  // namespace

ParamId ParameterStore::Add(std::string name, NdArray initial,
                            bool non_negative) {
  if (name.empty() ||
      std::any_of(name.begin(), name.end(),
                  [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
    throw InvalidArgument("parameter name must be non-empty without spaces");
  }
  if (index_.find(name) != index_.end()) {
    throw InvalidArgument("duplicate parameter: " + name);
  }
  const ParamId id = entries_.size();
  Entry e;
  e.name = name;
  e.grad = NdArray(initial.shape(), 0.0);
  e.first_moment = NdArray(initial.shape(), 0.0);
  e.second_moment = NdArray(initial.shape(), 0.0);
  e.value = std::move(initial);
  e.non_negative = non_negative;
  if (non_negative) {
    for (double& x : e.value.data()) x = std::max(x, 0.0);
  }
  entries_.push_back(std::move(e));
  index_.emplace(std::move(name), id);
  return id;
}

std::optional<ParamId> ParameterStore::Find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ParamId ParameterStore::Id(std::string_view name) const {
  if (auto id = Find(name)) return *id;
  throw NotFound("unknown parameter: " + std::string(name));
}

void ParameterStore::ZeroGrad() {
  for (Entry& e : entries_) e.grad.Fill(0.0);
}

std::size_t ParameterStore::num_scalars() const {
  std::size_t n = 0;
  for (const Entry& e : entries_) n += e.value.size();
  return n;
}

void ParameterStore::Save(std::ostream& out) const {
  out << kMagic << ' ' << kVersion << '\n' << entries_.size() << '\n';
  for (const Entry& e : entries_) {
    out << e.name << ' ' << e.value.rank();
    for (std::size_t d : e.value.shape()) out << ' ' << d;
    out << '\n';
    const auto data = e.value.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (i > 0) out << ' ';
      out << FormatDouble(data[i]);
    }
    out << '\n';
  }
}

void ParameterStore::Save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  Save(out);
}

ParameterStore ParameterStore::Load(std::istream& in) {
  std::string magic;
  int version = 0;
  std::size_t count = 0;
  if (!(in >> magic >> version) || magic != kMagic) {
    throw ParseError("checkpoint: missing 'ngdb-params' header", 1);
  }
  if (version != kVersion) {
    throw ParseError("checkpoint: unsupported version " +
                         std::to_string(version),
                     1);
  }
  if (!(in >> count)) throw ParseError("checkpoint: missing count", 2);
  ParameterStore store;
  for (std::size_t i = 0; i < count; ++i) {
    std::string name;
    std::size_t rank = 0;
    if (!(in >> name >> rank)) {
      throw ParseError("checkpoint: truncated header for parameter " +
                           std::to_string(i),
                       0);
    }
    std::vector<std::size_t> shape(rank);
    std::size_t total = 1;
    for (std::size_t& d : shape) {
      if (!(in >> d)) throw ParseError("checkpoint: truncated shape", 0);
      total *= d;
    }
    std::vector<double> data(total);
    std::string token;
    for (double& x : data) {
      if (!(in >> token)) throw ParseError("checkpoint: truncated values", 0);
      x = ParseDouble(token);
    }
    store.Add(name, NdArray(std::move(shape), std::move(data)));
  }
  return store;
}

ParameterStore ParameterStore::Load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open " + path.string());
  return Load(in);
}

void ParameterStore::AssignValues(const ParameterStore& other) {
  if (other.size() != size()) {
    throw InvalidArgument("AssignValues: parameter count mismatch");
  }
  for (ParamId id = 0; id < size(); ++id) {
    const ParamId src = other.Id(entries_[id].name);
    if (other.value(src).shape() != entries_[id].value.shape()) {
      throw InvalidArgument("AssignValues: shape mismatch for " +
                            entries_[id].name);
    }
    entries_[id].value = other.value(src);
  }
}

void OptimizerStep(ParameterStore& store, const OptimizerConfig& config) {
  for (const auto& e : store.entries_) {
    if (!e.grad.AllFinite()) {
      throw NumericError("non-finite gradient for parameter " + e.name);
    }
  }
  ++store.steps_;
  const double lr = config.learning_rate;
  const double t = static_cast<double>(store.steps_);
  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);
  for (auto& e : store.entries_) {
    auto value = e.value.data();
    auto grad = e.grad.data();
    if (config.kind == OptimizerConfig::Kind::kSgd) {
      for (std::size_t i = 0; i < value.size(); ++i) value[i] -= lr * grad[i];
    } else {
      auto m = e.first_moment.data();
      auto v = e.second_moment.data();
      for (std::size_t i = 0; i < value.size(); ++i) {
        m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
        v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double m_hat = m[i] / bias1;
        const double v_hat = v[i] / bias2;
        value[i] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
      }
    }
    if (e.non_negative) {
      for (double& x : value) x = std::max(x, 0.0);
    }
    e.grad.Fill(0.0);
  }
}

}  // namespace ngdb
