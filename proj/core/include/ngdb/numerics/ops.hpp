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

#ifndef NGDB_NUMERICS_OPS_HPP_
#define NGDB_NUMERICS_OPS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ngdb/numerics/tape.hpp"

// Differentiable operations on rank-2 values. Shape mismatches throw
// InvalidArgument; non-finite results throw NumericError.
//
// Axis convention: axis 0 reduces across rows (result 1 x cols), axis 1
// reduces across columns (result rows x 1).
namespace ngdb::ad {

// Elementwise with broadcasting: each dimension must match or be 1 in one of
// the operands.
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);

Var Scale(Var a, double factor);
Var AddScalar(Var a, double offset);
Var Neg(Var a);

Var MatMul(Var a, Var b);
Var Transpose(Var a);

// Stack along rows / along columns.
Var ConcatRows(std::span<const Var> parts);
Var ConcatCols(std::span<const Var> parts);

Var SliceRows(Var a, std::size_t begin, std::size_t count);
Var GatherRows(Var a, std::span<const std::size_t> rows);
Var GatherCols(Var a, std::span<const std::size_t> cols);
// 1x1 element.
Var Element(Var a, std::size_t row, std::size_t col);

Var ReduceSum(Var a, int axis);
Var ReduceMean(Var a, int axis);
// Subgradient goes to the first extremal entry.
Var ReduceMin(Var a, int axis);
Var ReduceMax(Var a, int axis);
// 1x1 totals.
Var Sum(Var a);
Var Mean(Var a);

// Row-wise (axis 1) or column-wise (axis 0) norms.
Var NormL1(Var a, int axis);
Var NormL2(Var a, int axis);

Var Sigmoid(Var a);
Var Tanh(Var a);
Var Relu(Var a);
Var Exp(Var a);
Var Log(Var a);
Var Abs(Var a);

// Max-subtracted for stability.
Var Softmax(Var a, int axis);
Var LogSoftmax(Var a, int axis);

// softmax(q k^T / sqrt(d_k)) v, rows are tokens.
Var Attention(Var q, Var k, Var v);

// out(i, j) = || x_i - y_j ||_2 for rows x_i of x and y_j of y.
Var PairwiseL2(Var x, Var y);

// Box-to-point distance for a box (center c, offset o >= 0) against every
// row p of `points`, as a 1 x n row:
//   outside(p) = || max(p - (c + o), 0) + max((c - o) - p, 0) ||_1
//   inside(p)  = || c - min(max(p, c - o), c + o) ||_1
//   out        = outside + alpha * inside
Var BoxDistance(Var center, Var offset, Var points, double alpha);

}  // namespace ngdb::ad

#endif  // NGDB_NUMERICS_OPS_HPP_
