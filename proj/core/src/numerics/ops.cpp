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

#include "ngdb/numerics/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngdb/common/error.hpp"

namespace ngdb::ad {
namespace {

Tape& TapeOf(Var a) {
  if (!a.valid()) throw InvalidArgument("operation on an unbound Var");
  return *a.tape();
}

Tape& TapeOf(Var a, Var b) {
  Tape& t = TapeOf(a);
  if (b.tape() != &t) {
    throw InvalidArgument("operands were recorded on different tapes");
  }
  return t;
}

const NdArray& Matrix2D(Var a, const char* op) {
  const NdArray& x = a.value();
  if (x.rank() != 2) {
    throw InvalidArgument(std::string(op) + ": expected rank 2, got " +
                          x.ShapeString());
  }
  return x;
}

void CheckAxis(int axis, const char* op) {
  if (axis != 0 && axis != 1) {
    throw InvalidArgument(std::string(op) + ": axis must be 0 or 1");
  }
}

// A reduction axis seen as `count` lanes of `length` elements each.
struct Lanes {
  std::size_t count;
  std::size_t length;
  std::size_t lane_stride;
  std::size_t elem_stride;

  std::size_t At(std::size_t lane, std::size_t k) const {
    return lane * lane_stride + k * elem_stride;
  }
};

Lanes LanesFor(const NdArray& x, int axis) {
  if (axis == 1) return {x.rows(), x.cols(), x.cols(), 1};
  return {x.cols(), x.rows(), 1, x.cols()};
}

NdArray ReducedShape(const NdArray& x, int axis) {
  return axis == 1 ? NdArray::Matrix(x.rows(), 1) : NdArray::Matrix(1, x.cols());
}

std::size_t BroadcastDim(std::size_t a, std::size_t b, const char* op,
                         const NdArray& x, const NdArray& y) {
  if (a == b || b == 1) return a;
  if (a == 1) return b;
  throw InvalidArgument(std::string(op) + ": cannot broadcast " +
                        x.ShapeString() + " with " + y.ShapeString());
}

enum class BinaryKind { kAdd, kSub, kMul };

Var Binary(Var a, Var b, BinaryKind kind, const char* op) {
  Tape& t = TapeOf(a, b);
  const NdArray& x = Matrix2D(a, op);
  const NdArray& y = Matrix2D(b, op);
  const std::size_t rows = BroadcastDim(x.rows(), y.rows(), op, x, y);
  const std::size_t cols = BroadcastDim(x.cols(), y.cols(), op, x, y);
  NdArray out = NdArray::Matrix(rows, cols);
  const bool xr = x.rows() == 1, xc = x.cols() == 1;
  const bool yr = y.rows() == 1, yc = y.cols() == 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double u = x(xr ? 0 : i, xc ? 0 : j);
      const double v = y(yr ? 0 : i, yc ? 0 : j);
      out(i, j) = kind == BinaryKind::kAdd   ? u + v
                  : kind == BinaryKind::kSub ? u - v
                                             : u * v;
    }
  }
  const auto ia = a.index(), ib = b.index();
  return t.Record(std::move(out), {a, b}, [=](Tape& tape, const NdArray& g) {
    const NdArray& x = tape.ValueAt(ia);
    const NdArray& y = tape.ValueAt(ib);
    const bool xr = x.rows() == 1, xc = x.cols() == 1;
    const bool yr = y.rows() == 1, yc = y.cols() == 1;
    if (tape.NeedsGrad(ia)) {
      NdArray& gx = tape.MutableGrad(ia);
      for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
          const double d =
              kind == BinaryKind::kMul ? g(i, j) * y(yr ? 0 : i, yc ? 0 : j)
                                       : g(i, j);
          gx(xr ? 0 : i, xc ? 0 : j) += d;
        }
      }
    }
    if (tape.NeedsGrad(ib)) {
      NdArray& gy = tape.MutableGrad(ib);
      for (std::size_t i = 0; i < g.rows(); ++i) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
          const double d =
              kind == BinaryKind::kAdd   ? g(i, j)
              : kind == BinaryKind::kSub ? -g(i, j)
                                         : g(i, j) * x(xr ? 0 : i, xc ? 0 : j);
          gy(yr ? 0 : i, yc ? 0 : j) += d;
        }
      }
    }
  });
}

// Elementwise unary op given f(x) and f'(x, f(x)).
template <typename F, typename DF>
Var Unary(Var a, const char* op, F f, DF df) {
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, op);
  NdArray out(x.shape());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = f(x[k]);
  const auto ia = a.index();
  const auto io = static_cast<std::uint32_t>(t.size());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    const NdArray& x = tape.ValueAt(ia);
    const NdArray& y = tape.ValueAt(io);
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t k = 0; k < g.size(); ++k) gx[k] += g[k] * df(x[k], y[k]);
  });
}

}  // namespace

Var Add(Var a, Var b) { return Binary(a, b, BinaryKind::kAdd, "Add"); }
Var Sub(Var a, Var b) { return Binary(a, b, BinaryKind::kSub, "Sub"); }
Var Mul(Var a, Var b) { return Binary(a, b, BinaryKind::kMul, "Mul"); }

Var Scale(Var a, double factor) {
  return Unary(
      a, "Scale", [factor](double x) { return factor * x; },
      [factor](double, double) { return factor; });
}

Var AddScalar(Var a, double offset) {
  return Unary(
      a, "AddScalar", [offset](double x) { return x + offset; },
      [](double, double) { return 1.0; });
}

Var Neg(Var a) { return Scale(a, -1.0); }

Var MatMul(Var a, Var b) {
  Tape& t = TapeOf(a, b);
  const NdArray& x = Matrix2D(a, "MatMul");
  const NdArray& y = Matrix2D(b, "MatMul");
  if (x.cols() != y.rows()) {
    throw InvalidArgument("MatMul: inner dimensions differ, " +
                          x.ShapeString() + " x " + y.ShapeString());
  }
  const std::size_t n = x.rows(), k = x.cols(), m = y.cols();
  NdArray out = NdArray::Matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double xv = x(i, p);
      if (xv == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out(i, j) += xv * y(p, j);
    }
  }
  const auto ia = a.index(), ib = b.index();
  return t.Record(std::move(out), {a, b}, [=](Tape& tape, const NdArray& g) {
    const NdArray& x = tape.ValueAt(ia);
    const NdArray& y = tape.ValueAt(ib);
    if (tape.NeedsGrad(ia)) {
      NdArray& gx = tape.MutableGrad(ia);  // g y^T
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          double s = 0.0;
          for (std::size_t j = 0; j < m; ++j) s += g(i, j) * y(p, j);
          gx(i, p) += s;
        }
      }
    }
    if (tape.NeedsGrad(ib)) {
      NdArray& gy = tape.MutableGrad(ib);  // x^T g
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
          const double xv = x(i, p);
          for (std::size_t j = 0; j < m; ++j) gy(p, j) += xv * g(i, j);
        }
      }
    }
  });
}

Var Transpose(Var a) {
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "Transpose");
  NdArray out = NdArray::Matrix(x.cols(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) out(j, i) = x(i, j);
  }
  const auto ia = a.index();
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) gx(j, i) += g(i, j);
    }
  });
}

Var ConcatRows(std::span<const Var> parts) {
  if (parts.empty()) throw InvalidArgument("ConcatRows: no operands");
  Tape& t = TapeOf(parts.front());
  const std::size_t cols = Matrix2D(parts.front(), "ConcatRows").cols();
  std::size_t rows = 0;
  for (Var p : parts) {
    TapeOf(parts.front(), p);
    const NdArray& x = Matrix2D(p, "ConcatRows");
    if (x.cols() != cols) {
      throw InvalidArgument("ConcatRows: column counts differ");
    }
    rows += x.rows();
  }
  NdArray out = NdArray::Matrix(rows, cols);
  std::size_t offset = 0;
  std::vector<std::uint32_t> ids;
  for (Var p : parts) {
    const auto src = p.value().data();
    std::copy(src.begin(), src.end(), out.data().begin() + offset);
    offset += src.size();
    ids.push_back(p.index());
  }
  return t.Record(std::move(out), parts, [ids](Tape& tape, const NdArray& g) {
    std::size_t offset = 0;
    for (auto id : ids) {
      const std::size_t len = tape.ValueAt(id).size();
      if (tape.NeedsGrad(id)) {
        NdArray& gx = tape.MutableGrad(id);
        for (std::size_t k = 0; k < len; ++k) gx[k] += g[offset + k];
      }
      offset += len;
    }
  });
}

Var ConcatCols(std::span<const Var> parts) {
  if (parts.empty()) throw InvalidArgument("ConcatCols: no operands");
  Tape& t = TapeOf(parts.front());
  const std::size_t rows = Matrix2D(parts.front(), "ConcatCols").rows();
  std::size_t cols = 0;
  for (Var p : parts) {
    TapeOf(parts.front(), p);
    const NdArray& x = Matrix2D(p, "ConcatCols");
    if (x.rows() != rows) throw InvalidArgument("ConcatCols: row counts differ");
    cols += x.cols();
  }
  NdArray out = NdArray::Matrix(rows, cols);
  std::size_t offset = 0;
  std::vector<std::uint32_t> ids;
  for (Var p : parts) {
    const NdArray& x = p.value();
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) out(i, offset + j) = x(i, j);
    }
    offset += x.cols();
    ids.push_back(p.index());
  }
  return t.Record(std::move(out), parts, [ids](Tape& tape, const NdArray& g) {
    std::size_t offset = 0;
    for (auto id : ids) {
      const std::size_t width = tape.ValueAt(id).cols();
      if (tape.NeedsGrad(id)) {
        NdArray& gx = tape.MutableGrad(id);
        for (std::size_t i = 0; i < g.rows(); ++i) {
          for (std::size_t j = 0; j < width; ++j) gx(i, j) += g(i, offset + j);
        }
      }
      offset += width;
    }
  });
}

Var SliceRows(Var a, std::size_t begin, std::size_t count) {
  const NdArray& x = Matrix2D(a, "SliceRows");
  if (begin + count > x.rows()) {
    throw InvalidArgument("SliceRows: range exceeds " + x.ShapeString());
  }
  std::vector<std::size_t> rows(count);
  for (std::size_t i = 0; i < count; ++i) rows[i] = begin + i;
  return GatherRows(a, rows);
}

Var GatherRows(Var a, std::span<const std::size_t> rows) {
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "GatherRows");
  NdArray out = NdArray::Matrix(rows.size(), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= x.rows()) {
      throw InvalidArgument("GatherRows: row " + std::to_string(rows[i]) +
                            " out of range for " + x.ShapeString());
    }
    const auto src = x.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  const auto ia = a.index();
  std::vector<std::size_t> idx(rows.begin(), rows.end());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto dst = gx.row(idx[i]);
      auto src = g.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  });
}

Var GatherCols(Var a, std::span<const std::size_t> cols) {
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "GatherCols");
  NdArray out = NdArray::Matrix(x.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= x.cols()) {
      throw InvalidArgument("GatherCols: column out of range");
    }
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, j) = x(i, cols[j]);
  }
  const auto ia = a.index();
  std::vector<std::size_t> idx(cols.begin(), cols.end());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      for (std::size_t i = 0; i < g.rows(); ++i) gx(i, idx[j]) += g(i, j);
    }
  });
}

Var Element(Var a, std::size_t row, std::size_t col) {
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "Element");
  if (row >= x.rows() || col >= x.cols()) {
    throw InvalidArgument("Element: index out of range for " +
                          x.ShapeString());
  }
  const auto ia = a.index();
  return t.Record(NdArray::Scalar(x(row, col)), {a},
                  [=](Tape& tape, const NdArray& g) {
                    tape.MutableGrad(ia)(row, col) += g[0];
                  });
}

Var ReduceSum(Var a, int axis) {
  CheckAxis(axis, "ReduceSum");
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "ReduceSum");
  const Lanes lanes = LanesFor(x, axis);
  NdArray out = ReducedShape(x, axis);
  for (std::size_t l = 0; l < lanes.count; ++l) {
    double s = 0.0;
    for (std::size_t k = 0; k < lanes.length; ++k) s += x[lanes.At(l, k)];
    out[l] = s;
  }
  const auto ia = a.index();
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t l = 0; l < lanes.count; ++l) {
      for (std::size_t k = 0; k < lanes.length; ++k) gx[lanes.At(l, k)] += g[l];
    }
  });
}

Var ReduceMean(Var a, int axis) {
  CheckAxis(axis, "ReduceMean");
  const NdArray& x = Matrix2D(a, "ReduceMean");
  const std::size_t n = axis == 1 ? x.cols() : x.rows();
  if (n == 0) throw InvalidArgument("ReduceMean: empty axis");
  return Scale(ReduceSum(a, axis), 1.0 / static_cast<double>(n));
}

namespace {

Var ReduceExtreme(Var a, int axis, bool take_min, const char* op) {
  CheckAxis(axis, op);
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, op);
  const Lanes lanes = LanesFor(x, axis);
  if (lanes.length == 0) throw InvalidArgument(std::string(op) + ": empty axis");
  NdArray out = ReducedShape(x, axis);
  std::vector<std::size_t> arg(lanes.count);
  for (std::size_t l = 0; l < lanes.count; ++l) {
    std::size_t best = lanes.At(l, 0);
    for (std::size_t k = 1; k < lanes.length; ++k) {
      const std::size_t at = lanes.At(l, k);
      if (take_min ? x[at] < x[best] : x[at] > x[best]) best = at;
    }
    arg[l] = best;
    out[l] = x[best];
  }
  const auto ia = a.index();
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t l = 0; l < arg.size(); ++l) gx[arg[l]] += g[l];
  });
}

}  // namespace

Var ReduceMin(Var a, int axis) { return ReduceExtreme(a, axis, true, "ReduceMin"); }
Var ReduceMax(Var a, int axis) { return ReduceExtreme(a, axis, false, "ReduceMax"); }

Var Sum(Var a) { return ReduceSum(ReduceSum(a, 1), 0); }

Var Mean(Var a) {
  const std::size_t n = a.value().size();
  if (n == 0) throw InvalidArgument("Mean: empty array");
  return Scale(Sum(a), 1.0 / static_cast<double>(n));
}

Var NormL1(Var a, int axis) { return ReduceSum(Abs(a), axis); }

Var NormL2(Var a, int axis) {
  CheckAxis(axis, "NormL2");
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "NormL2");
  const Lanes lanes = LanesFor(x, axis);
  NdArray out = ReducedShape(x, axis);
  for (std::size_t l = 0; l < lanes.count; ++l) {
    double s = 0.0;
    for (std::size_t k = 0; k < lanes.length; ++k) {
      const double v = x[lanes.At(l, k)];
      s += v * v;
    }
    out[l] = std::sqrt(s);
  }
  const auto ia = a.index();
  const auto io = static_cast<std::uint32_t>(t.size());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    const NdArray& x = tape.ValueAt(ia);
    const NdArray& norm = tape.ValueAt(io);
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t l = 0; l < lanes.count; ++l) {
      if (norm[l] == 0.0) continue;
      const double scale = g[l] / norm[l];
      for (std::size_t k = 0; k < lanes.length; ++k) {
        const std::size_t at = lanes.At(l, k);
        gx[at] += scale * x[at];
      }
    }
  });
}

Var Sigmoid(Var a) {
  return Unary(
      a, "Sigmoid",
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Var Tanh(Var a) {
  return Unary(
      a, "Tanh", [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Relu(Var a) {
  return Unary(
      a, "Relu", [](double x) { return x > 0.0 ? x : 0.0; },
      [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Var Exp(Var a) {
  return Unary(
      a, "Exp", [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Var Log(Var a) {
  return Unary(
      a, "Log", [](double x) { return std::log(x); },
      [](double x, double) { return 1.0 / x; });
}

Var Abs(Var a) {
  return Unary(
      a, "Abs", [](double x) { return std::abs(x); },
      [](double x, double) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
}

Var Softmax(Var a, int axis) {
  CheckAxis(axis, "Softmax");
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "Softmax");
  const Lanes lanes = LanesFor(x, axis);
  NdArray out(x.shape());
  for (std::size_t l = 0; l < lanes.count; ++l) {
    double m = -HUGE_VAL;
    for (std::size_t k = 0; k < lanes.length; ++k) {
      m = std::max(m, x[lanes.At(l, k)]);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < lanes.length; ++k) {
      const std::size_t at = lanes.At(l, k);
      out[at] = std::exp(x[at] - m);
      s += out[at];
    }
    for (std::size_t k = 0; k < lanes.length; ++k) out[lanes.At(l, k)] /= s;
  }
  const auto ia = a.index();
  const auto io = static_cast<std::uint32_t>(t.size());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    const NdArray& y = tape.ValueAt(io);
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t l = 0; l < lanes.count; ++l) {
      double dot = 0.0;
      for (std::size_t k = 0; k < lanes.length; ++k) {
        const std::size_t at = lanes.At(l, k);
        dot += g[at] * y[at];
      }
      for (std::size_t k = 0; k < lanes.length; ++k) {
        const std::size_t at = lanes.At(l, k);
        gx[at] += y[at] * (g[at] - dot);
      }
    }
  });
}

Var LogSoftmax(Var a, int axis) {
  CheckAxis(axis, "LogSoftmax");
  Tape& t = TapeOf(a);
  const NdArray& x = Matrix2D(a, "LogSoftmax");
  const Lanes lanes = LanesFor(x, axis);
  NdArray out(x.shape());
  for (std::size_t l = 0; l < lanes.count; ++l) {
    double m = -HUGE_VAL;
    for (std::size_t k = 0; k < lanes.length; ++k) {
      m = std::max(m, x[lanes.At(l, k)]);
    }
    double s = 0.0;
    for (std::size_t k = 0; k < lanes.length; ++k) {
      s += std::exp(x[lanes.At(l, k)] - m);
    }
    const double lse = m + std::log(s);
    for (std::size_t k = 0; k < lanes.length; ++k) {
      const std::size_t at = lanes.At(l, k);
      out[at] = x[at] - lse;
    }
  }
  const auto ia = a.index();
  const auto io = static_cast<std::uint32_t>(t.size());
  return t.Record(std::move(out), {a}, [=](Tape& tape, const NdArray& g) {
    const NdArray& y = tape.ValueAt(io);
    NdArray& gx = tape.MutableGrad(ia);
    for (std::size_t l = 0; l < lanes.count; ++l) {
      double total = 0.0;
      for (std::size_t k = 0; k < lanes.length; ++k) total += g[lanes.At(l, k)];
      for (std::size_t k = 0; k < lanes.length; ++k) {
        const std::size_t at = lanes.At(l, k);
        gx[at] += g[at] - std::exp(y[at]) * total;
      }
    }
  });
}

Var Attention(Var q, Var k, Var v) {
  const std::size_t dk = Matrix2D(k, "Attention").cols();
  if (Matrix2D(q, "Attention").cols() != dk) {
    throw InvalidArgument("Attention: query and key widths differ");
  }
  if (Matrix2D(v, "Attention").rows() != k.value().rows()) {
    throw InvalidArgument("Attention: key and value counts differ");
  }
  const Var logits =
      Scale(MatMul(q, Transpose(k)), 1.0 / std::sqrt(static_cast<double>(dk)));
  return MatMul(Softmax(logits, 1), v);
}

Var PairwiseL2(Var a, Var b) {
  Tape& t = TapeOf(a, b);
  const NdArray& x = Matrix2D(a, "PairwiseL2");
  const NdArray& y = Matrix2D(b, "PairwiseL2");
  if (x.cols() != y.cols()) {
    throw InvalidArgument("PairwiseL2: widths differ, " + x.ShapeString() +
                          " vs " + y.ShapeString());
  }
  const std::size_t m = x.rows(), n = y.rows(), d = x.cols();
  NdArray out = NdArray::Matrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto xi = x.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto yj = y.row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = xi[c] - yj[c];
        s += diff * diff;
      }
      out(i, j) = std::sqrt(s);
    }
  }
  const auto ia = a.index(), ib = b.index();
  const auto io = static_cast<std::uint32_t>(t.size());
  return t.Record(std::move(out), {a, b}, [=](Tape& tape, const NdArray& g) {
    const NdArray& x = tape.ValueAt(ia);
    const NdArray& y = tape.ValueAt(ib);
    const NdArray& dist = tape.ValueAt(io);
    const bool need_x = tape.NeedsGrad(ia), need_y = tape.NeedsGrad(ib);
    NdArray* gx = need_x ? &tape.MutableGrad(ia) : nullptr;
    NdArray* gy = need_y ? &tape.MutableGrad(ib) : nullptr;
    for (std::size_t i = 0; i < m; ++i) {
      const auto xi = x.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (dist(i, j) == 0.0 || g(i, j) == 0.0) continue;
        const double scale = g(i, j) / dist(i, j);
        const auto yj = y.row(j);
        for (std::size_t c = 0; c < d; ++c) {
          const double delta = scale * (xi[c] - yj[c]);
          if (gx) (*gx)(i, c) += delta;
          if (gy) (*gy)(j, c) -= delta;
        }
      }
    }
  });
}

Var BoxDistance(Var center, Var offset, Var points, double alpha) {
  Tape& t = TapeOf(center, offset);
  TapeOf(center, points);
  const NdArray& c = Matrix2D(center, "BoxDistance");
  const NdArray& o = Matrix2D(offset, "BoxDistance");
  const NdArray& p = Matrix2D(points, "BoxDistance");
  if (c.rows() != 1 || o.rows() != 1 || c.cols() != o.cols() ||
      p.cols() != c.cols()) {
    throw InvalidArgument("BoxDistance: expected 1xd center/offset and nxd "
                          "points, got " +
                          c.ShapeString() + ", " + o.ShapeString() + ", " +
                          p.ShapeString());
  }
  const std::size_t n = p.rows(), d = p.cols();
  NdArray out = NdArray::Matrix(1, n);
  for (std::size_t j = 0; j < n; ++j) {
    double outside = 0.0, inside = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double lo = c[k] - o[k], hi = c[k] + o[k], x = p(j, k);
      outside += std::max(x - hi, 0.0) + std::max(lo - x, 0.0);
      inside += std::abs(c[k] - std::clamp(x, std::min(lo, hi), std::max(lo, hi)));
    }
    out[j] = outside + alpha * inside;
  }
  const auto ic = center.index(), ioff = offset.index(), ip = points.index();
  return t.Record(
      std::move(out), {center, offset, points},
      [=](Tape& tape, const NdArray& g) {
        const NdArray& c = tape.ValueAt(ic);
        const NdArray& o = tape.ValueAt(ioff);
        const NdArray& p = tape.ValueAt(ip);
        NdArray* gc = tape.NeedsGrad(ic) ? &tape.MutableGrad(ic) : nullptr;
        NdArray* go = tape.NeedsGrad(ioff) ? &tape.MutableGrad(ioff) : nullptr;
        NdArray* gp = tape.NeedsGrad(ip) ? &tape.MutableGrad(ip) : nullptr;
        for (std::size_t j = 0; j < n; ++j) {
          const double gj = g[j];
          if (gj == 0.0) continue;
          for (std::size_t k = 0; k < d; ++k) {
            const double x = p(j, k);
            const double hi = c[k] + o[k], lo = c[k] - o[k];
            // Partial derivatives of the per-coordinate distance term.
            double dc = 0.0, dofs = 0.0, dx = 0.0;
            if (x > hi) {
              dx = 1.0, dc = -1.0, dofs = -1.0;
              dofs += alpha * (o[k] > 0.0 ? 1.0 : (o[k] < 0.0 ? -1.0 : 0.0));
            } else if (x < lo) {
              dx = -1.0, dc = 1.0, dofs = -1.0;
              dofs += alpha * (o[k] > 0.0 ? 1.0 : (o[k] < 0.0 ? -1.0 : 0.0));
            } else {
              const double s = c[k] > x ? 1.0 : (c[k] < x ? -1.0 : 0.0);
              dc = alpha * s;
              dx = -alpha * s;
            }
            if (gc) (*gc)[k] += gj * dc;
            if (go) (*go)[k] += gj * dofs;
            if (gp) (*gp)(j, k) += gj * dx;
          }
        }
      });
}

}  // namespace ngdb::ad
