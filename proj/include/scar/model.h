// scar/model.h

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

#include "scar/model_config.h"
#include "scar/rng.h"
#include "scar/tape.h"

namespace scar::models {

struct ForwardContext {
  bool training = false;
  double dropout = 0.0;
  Rng* rng = nullptr;  // required when training with dropout > 0
};

// One of the four downstream classifiers together with its parameters.
// Parameters are held in parameter_layout() order.
template <typename Real>
class Model {
 public:
  // Glorot-uniform weights, zero biases.
  Model(const ModelConfig& config, Rng& rng);
  // Adopts existing tensors; shapes must match parameter_layout(config).
  Model(const ModelConfig& config, std::vector<Tensor<Real>> params);

  const ModelConfig& config() const { return config_; }
  const std::vector<ParamSpec>& layout() const { return layout_; }
  std::vector<Tensor<Real>>& params() { return params_; }
  const std::vector<Tensor<Real>>& params() const { return params_; }
  std::size_t index_of(const std::string& name) const;
  Tensor<Real>& param(const std::string& name) {
    return params_[index_of(name)];
  }
  const Tensor<Real>& param(const std::string& name) const {
    return params_[index_of(name)];
  }

  // Total number of learnable scalars.
  std::size_t param_count() const;

  // Parameter leaves on a tape, indexed like params().
  struct Bound {
    std::vector<Var> vars;
    Var operator[](std::size_t i) const { return vars[i]; }
  };
  Bound bind(Tape<Real>& tape, bool requires_grad) const;

  // Probability of the fake class, shape [n, 1]. xb is required exactly for
  // fusion models.
  Var forward(Tape<Real>& tape, const Bound& bound, Var xa,
              std::optional<Var> xb, const ForwardContext& ctx) const;

  // Features entering the dense head: [n, head_input_width()]. For fusion
  // models this is Concat(branch a, branch b). When bypass_attention is set
  // a SCAR model skips both attention blocks, which is the concatenation
  // baseline.
  Var head_features(Tape<Real>& tape, const Bound& bound, Var xa,
                    std::optional<Var> xb, bool bypass_attention = false) const;

  // Branch token sequences [n, T, C] after the conv block.
  Var conv_tokens(Tape<Real>& tape, const Bound& bound, Var x,
                  const std::string& prefix) const;

  // Copies gradients of the bound leaves into the parameters' grad slots.
  void collect_grads(const Tape<Real>& tape, const Bound& bound);

  template <typename Other>
  Model<Other> cast() const {
    std::vector<Tensor<Other>> converted;
    for (const auto& p : params_) converted.push_back(p.template cast<Other>());
    return Model<Other>(config_, std::move(converted));
  }

 private:
  Var head(Tape<Real>& tape, const Bound& bound, Var features,
           const ForwardContext& ctx) const;
  Var id(const Bound& bound, const std::string& name) const {
    return bound[index_of(name)];
  }

  ModelConfig config_;
  std::vector<ParamSpec> layout_;
  std::vector<Tensor<Real>> params_;
};

extern template class Model<float>;
extern template class Model<double>;

}  // namespace scar::models
