// scar/ops.h

// Copyright 2026  The scar-efd Authors
//
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scar/rng.h"
#include "scar/tape.h"

namespace scar::ops {

enum class Activation { kRelu, kSigmoid };

// x[..., d_in] · W[d_in, d_out] (+ b[d_out]). Leading axes of x are treated as
// rows, so the same op projects [n, d] features and [n, T, d] token sequences.
template <typename Real>
Var dense(Tape<Real>& tape, Var x, Var weight, std::optional<Var> bias);

// Valid, stride-1 cross-correlation: x[n, c_in, L], kernels[c_out, c_in, K],
// bias[c_out] -> [n, c_out, L - K + 1].
template <typename Real>
Var conv1d(Tape<Real>& tape, Var x, Var kernels, Var bias);

// Splits the last axis into `bins` contiguous ranges
// [floor(i*L/bins), floor((i+1)*L/bins)) and keeps each range's maximum.
// The gradient goes to the first maximal position.
template <typename Real>
Var adaptive_maxpool1d(Tape<Real>& tape, Var x, std::size_t bins);

template <typename Real>
Var activation(Tape<Real>& tape, Var x, Activation kind);

template <typename Real>
Var relu(Tape<Real>& tape, Var x) {
  return activation(tape, x, Activation::kRelu);
}

template <typename Real>
Var sigmoid(Tape<Real>& tape, Var x) {
  return activation(tape, x, Activation::kSigmoid);
}

// softmax(Q Kᵀ / sqrt(d_k)) V over [n, L, d] batches. Rows of the attention
// matrix are normalised after subtracting their maximum.
template <typename Real>
Var sdpa(Tape<Real>& tape, Var q, Var k, Var v);

// Splits the channel axis of already-projected q, k, v into `heads` equal
// blocks, runs sdpa on each block with d_k = d / heads and concatenates the
// results. No output projection.
template <typename Real>
Var multi_head_sdpa(Tape<Real>& tape, Var q, Var k, Var v, std::size_t heads);

// Projects xq with wq and xkv with wk, wv (no bias) and applies
// multi_head_sdpa.
template <typename Real>
Var multi_head_attention(Tape<Real>& tape, Var xq, Var xkv, Var wq, Var wk,
                         Var wv, std::size_t heads);

// Inverted dropout. Returns x itself when not training or p == 0.
template <typename Real>
Var dropout(Tape<Real>& tape, Var x, double p, Rng* rng, bool training);

template <typename Real>
Var reshape(Tape<Real>& tape, Var x, Shape shape);

// [n, a, b] -> [n, b, a].
template <typename Real>
Var transpose(Tape<Real>& tape, Var x);

// Concatenation along the last axis.
template <typename Real>
Var concat(Tape<Real>& tape, const std::vector<Var>& parts);

// Columns [begin, end) of the last axis.
template <typename Real>
Var slice(Tape<Real>& tape, Var x, std::size_t begin, std::size_t end);

template <typename Real>
Var sum(Tape<Real>& tape, Var x);

// Kinds of every differentiable op in this header, as recorded on the tape.
const std::vector<std::string>& differentiable_op_kinds();

}  // namespace scar::ops
