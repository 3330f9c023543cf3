// scar/attention.h

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

#include <utility>

#include "scar/tape.h"

namespace scar::models {

// The twelve projection matrices of the two cross-attention stages. Suffix
// _a/_b names the branch whose tokens are multiplied; e.g. stage-1 queries of
// branch a are Za · q1_a while its keys and values come from Zb · k1_b and
// Zb · v1_b.
struct NestedAttentionWeights {
  Var q1_a, k1_b, v1_b, q1_b, k1_a, v1_a;
  Var q2_a, k2_b, v2_b, q2_b, k2_a, v2_a;
};

// Two sequential cross-attention exchanges between token sequences
// za, zb of shape [n, T, C]. Stage 2 consumes stage 1's outputs.
// Returns (Za2, Zb2).
template <typename Real>
std::pair<Var, Var> nested_cross_attention(Tape<Real>& tape, Var za, Var zb,
                                           const NestedAttentionWeights& w,
                                           std::size_t heads);

// Projection-free self-attention softmax(Z Zᵀ / sqrt(d_k)) Z applied per
// channel-split head.
template <typename Real>
Var self_attention_refine(Tape<Real>& tape, Var z, std::size_t heads);

}  // namespace scar::models
