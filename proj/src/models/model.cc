// models/model.cc

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

#include "scar/model.h"

#include <cmath>

#include "scar/attention.h"
#include "scar/ops.h"

namespace scar::models {

template <typename Real>
Model<Real>::Model(const ModelConfig& config, Rng& rng)
    : config_(config), layout_(parameter_layout(config)) {
  for (const auto& spec : layout_) {
    Tensor<Real> t(spec.shape);
    if (!spec.is_bias) {
      const double limit =
          std::sqrt(6.0 / static_cast<double>(spec.fan_in + spec.fan_out));
      for (Real& v : t.values()) {
        v = static_cast<Real>(static_cast<float>(rng.uniform(-limit, limit)));
      }
    }
    t.set_requires_grad(true);
    params_.push_back(std::move(t));
  }
}

template <typename Real>
Model<Real>::Model(const ModelConfig& config, std::vector<Tensor<Real>> params)
    : config_(config), layout_(parameter_layout(config)),
      params_(std::move(params)) {
  if (params_.size() != layout_.size()) {
    throw ShapeError("model " + describe(config_) + " expects " +
                     std::to_string(layout_.size()) + " tensors, got " +
                     std::to_string(params_.size()));
  }
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (params_[i].shape() != layout_[i].shape) {
      throw ShapeError("parameter " + layout_[i].name + " has shape " +
                       shape_to_string(params_[i].shape()) + ", expected " +
                       shape_to_string(layout_[i].shape));
    }
    params_[i].set_requires_grad(true);
  }
}

template <typename Real>
std::size_t Model<Real>::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    if (layout_[i].name == name) return i;
  }
  throw ConfigError("model " + describe(config_) + " has no parameter " + name);
}

template <typename Real>
std::size_t Model<Real>::param_count() const {
  std::size_t total = 0;
  for (const auto& p : params_) total += p.numel();
  return total;
}

template <typename Real>
typename Model<Real>::Bound Model<Real>::bind(Tape<Real>& tape,
                                              bool requires_grad) const {
  Bound b;
  b.vars.reserve(params_.size());
  for (const auto& p : params_) b.vars.push_back(tape.leaf(p, requires_grad));
  return b;
}

template <typename Real>
Var Model<Real>::conv_tokens(Tape<Real>& tape, const Bound& bound, Var x,
                             const std::string& prefix) const {
  const Shape& xs = tape.shape(x);
  Var seq = ops::reshape(tape, x, {xs[0], 1, xs[1]});
  Var conv = ops::conv1d(tape, seq, id(bound, prefix + ".kernel"),
                         id(bound, prefix + ".bias"));
  Var act = ops::relu(tape, conv);
  Var pooled = ops::adaptive_maxpool1d(tape, act, config_.tokens);
  // [n, C, T] -> [n, T, C]: one token per pooled position.
  return ops::transpose(tape, pooled);
}

template <typename Real>
Var Model<Real>::head_features(Tape<Real>& tape, const Bound& bound, Var xa,
                               std::optional<Var> xb,
                               bool bypass_attention) const {
  auto check_input = [&](Var x, std::uint32_t dim, const char* which) {
    const Shape& s = tape.shape(x);
    if (s.size() != 2 || s[1] != dim) {
      throw ShapeError(std::string("input ") + which + " has shape " +
                       shape_to_string(s) + ", model expects [n," +
                       std::to_string(dim) + "]");
    }
  };
  check_input(xa, config_.dim_a, "a");
  if (is_fusion(config_.kind) != xb.has_value()) {
    throw ShapeError(std::string(to_string(config_.kind)) +
                     (xb ? " takes one input, got two" : " needs two inputs"));
  }
  const std::size_t n = tape.shape(xa)[0];
  const std::size_t flat = std::size_t{config_.channels} * config_.tokens;

  switch (config_.kind) {
    case ModelKind::kFcn:
      return xa;
    case ModelKind::kCnn:
      return ops::reshape(tape, conv_tokens(tape, bound, xa, "conv"),
                          {n, flat});
    case ModelKind::kConcat:
    case ModelKind::kScar: {
      check_input(*xb, config_.dim_b, "b");
      if (tape.shape(*xb)[0] != n) {
        throw ShapeError("inputs a and b have different batch sizes");
      }
      Var za = conv_tokens(tape, bound, xa, "conv_a");
      Var zb = conv_tokens(tape, bound, *xb, "conv_b");
      if (config_.kind == ModelKind::kScar && !bypass_attention) {
        const NestedAttentionWeights w{
            id(bound, "cross1.q_a"), id(bound, "cross1.k_b"),
            id(bound, "cross1.v_b"), id(bound, "cross1.q_b"),
            id(bound, "cross1.k_a"), id(bound, "cross1.v_a"),
            id(bound, "cross2.q_a"), id(bound, "cross2.k_b"),
            id(bound, "cross2.v_b"), id(bound, "cross2.q_b"),
            id(bound, "cross2.k_a"), id(bound, "cross2.v_a")};
        auto [za2, zb2] =
            nested_cross_attention(tape, za, zb, w, config_.heads_cross);
        za = self_attention_refine(tape, za2, config_.heads_refine);
        zb = self_attention_refine(tape, zb2, config_.heads_refine);
      }
      return ops::concat(tape, {ops::reshape(tape, za, {n, flat}),
                                ops::reshape(tape, zb, {n, flat})});
    }
  }
  throw ConfigError("unknown model kind");
}

template <typename Real>
Var Model<Real>::head(Tape<Real>& tape, const Bound& bound, Var features,
                      const ForwardContext& ctx) const {
  Var h = ops::dense(tape, features, id(bound, "fc1.weight"),
                     id(bound, "fc1.bias"));
  h = ops::relu(tape, h);
  h = ops::dropout(tape, h, ctx.dropout, ctx.rng, ctx.training);
  h = ops::dense(tape, h, id(bound, "fc2.weight"), id(bound, "fc2.bias"));
  h = ops::relu(tape, h);
  h = ops::dropout(tape, h, ctx.dropout, ctx.rng, ctx.training);
  h = ops::dense(tape, h, id(bound, "out.weight"), id(bound, "out.bias"));
  return ops::sigmoid(tape, h);
}

template <typename Real>
Var Model<Real>::forward(Tape<Real>& tape, const Bound& bound, Var xa,
                         std::optional<Var> xb,
                         const ForwardContext& ctx) const {
  return head(tape, bound, head_features(tape, bound, xa, xb), ctx);
}

template <typename Real>
void Model<Real>::collect_grads(const Tape<Real>& tape, const Bound& bound) {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    params_[i].set_grad(tape.grad(bound[i]).values());
  }
}

template class Model<float>;
template class Model<double>;

}  // namespace scar::models
