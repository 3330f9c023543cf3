// models/attention.cc

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

#include "scar/attention.h"

#include "scar/ops.h"

namespace scar::models {

template <typename Real>
std::pair<Var, Var> nested_cross_attention(Tape<Real>& tape, Var za, Var zb,
                                           const NestedAttentionWeights& w,
                                           std::size_t heads) {
  if (tape.shape(za) != tape.shape(zb)) {
    throw ShapeError("nested cross-attention: branch token shapes differ, " +
                     shape_to_string(tape.shape(za)) + " and " +
                     shape_to_string(tape.shape(zb)));
  }
  using ops::multi_head_attention;
  Var za1 = multi_head_attention(tape, za, zb, w.q1_a, w.k1_b, w.v1_b, heads);
  Var zb1 = multi_head_attention(tape, zb, za, w.q1_b, w.k1_a, w.v1_a, heads);
  Var za2 = multi_head_attention(tape, za1, zb1, w.q2_a, w.k2_b, w.v2_b, heads);
  Var zb2 = multi_head_attention(tape, zb1, za1, w.q2_b, w.k2_a, w.v2_a, heads);
  return {za2, zb2};
}

template <typename Real>
Var self_attention_refine(Tape<Real>& tape, Var z, std::size_t heads) {
  return ops::multi_head_sdpa(tape, z, z, z, heads);
}

template std::pair<Var, Var> nested_cross_attention<float>(
    Tape<float>&, Var, Var, const NestedAttentionWeights&, std::size_t);
template std::pair<Var, Var> nested_cross_attention<double>(
    Tape<double>&, Var, Var, const NestedAttentionWeights&, std::size_t);
template Var self_attention_refine<float>(Tape<float>&, Var, std::size_t);
template Var self_attention_refine<double>(Tape<double>&, Var, std::size_t);

}  // namespace scar::models
