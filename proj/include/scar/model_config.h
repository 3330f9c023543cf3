// scar/model_config.h

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

#include <cstdint>
#include <string>
#include <vector>

#include "scar/tensor.h"

namespace scar::models {

enum class ModelKind : std::uint8_t { kFcn = 0, kCnn = 1, kConcat = 2, kScar = 3 };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);
inline bool is_fusion(ModelKind kind) {
  return kind == ModelKind::kConcat || kind == ModelKind::kScar;
}

// Dense head widths, fixed for every architecture.
inline constexpr std::uint32_t kHidden1 = 512;
inline constexpr std::uint32_t kHidden2 = 128;

struct ModelConfig {
  ModelKind kind = ModelKind::kFcn;
  std::uint32_t dim_a = 0;
  std::uint32_t dim_b = 0;  // fusion models only
  std::uint32_t channels = 32;
  std::uint32_t kernel = 3;
  std::uint32_t tokens = 32;  // adaptive max-pool output length
  std::uint32_t heads_cross = 2;
  std::uint32_t heads_refine = 2;

  // Throws ConfigError describing the first violated constraint.
  void validate() const;

  // Width of the features entering the dense head.
  std::uint32_t head_input_width() const;
  std::uint32_t cross_head_dim() const { return channels / heads_cross; }
  std::uint32_t refine_head_dim() const { return channels / heads_refine; }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

ModelConfig fcn_config(std::uint32_t dim);
ModelConfig cnn_config(std::uint32_t dim, std::uint32_t tokens = 32);
ModelConfig concat_config(std::uint32_t dim_a, std::uint32_t dim_b,
                          std::uint32_t tokens = 32);
ModelConfig scar_config(std::uint32_t dim_a, std::uint32_t dim_b,
                        std::uint32_t tokens = 32);

struct ParamSpec {
  std::string name;
  Shape shape;
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
  bool is_bias = false;
};

// Every learnable tensor of the architecture, in storage order.
std::vector<ParamSpec> parameter_layout(const ModelConfig& config);

// Sum of the element counts of parameter_layout(config).
std::size_t parameter_count(const ModelConfig& config);

std::string describe(const ModelConfig& config);

}  // namespace scar::models
