// models/model_config.cc

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

#include "scar/model_config.h"

#include <sstream>

namespace scar::models {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFcn:
      return "fcn";
    case ModelKind::kCnn:
      return "cnn";
    case ModelKind::kConcat:
      return "concat";
    case ModelKind::kScar:
      return "scar";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "fcn") return ModelKind::kFcn;
  if (name == "cnn") return ModelKind::kCnn;
  if (name == "concat") return ModelKind::kConcat;
  if (name == "scar") return ModelKind::kScar;
  throw ConfigError("unknown model '" + name +
                    "' (expected fcn, cnn, concat, scar)");
}

void ModelConfig::validate() const {
  if (dim_a == 0) throw ConfigError("input dim must be positive");
  if (is_fusion(kind) && dim_b == 0) {
    throw ConfigError(std::string(to_string(kind)) +
                      " fuses two inputs and needs dim_b > 0");
  }
  if (!is_fusion(kind) && dim_b != 0) {
    throw ConfigError(std::string(to_string(kind)) +
                      " takes a single input; dim_b must be 0");
  }
  if (kind == ModelKind::kFcn) return;
  if (channels == 0 || kernel == 0 || tokens == 0) {
    throw ConfigError("channels, kernel and tokens must be positive");
  }
  for (std::uint32_t d : {dim_a, dim_b}) {
    if (d == 0) continue;
    if (d < kernel) {
      throw ConfigError("input dim " + std::to_string(d) +
                        " shorter than kernel " + std::to_string(kernel));
    }
    if (d - kernel + 1 < tokens) {
      throw ConfigError("conv output length " +
                        std::to_string(d - kernel + 1) +
                        " cannot be pooled into " + std::to_string(tokens) +
                        " tokens");
    }
  }
  if (kind == ModelKind::kScar) {
    if (heads_cross == 0 || channels % heads_cross != 0) {
      throw ConfigError("cross-attention heads " +
                        std::to_string(heads_cross) + " do not divide " +
                        std::to_string(channels) + " channels");
    }
    if (heads_refine == 0 || channels % heads_refine != 0) {
      throw ConfigError("refinement heads " + std::to_string(heads_refine) +
                        " do not divide " + std::to_string(channels) +
                        " channels");
    }
  }
}

std::uint32_t ModelConfig::head_input_width() const {
  switch (kind) {
    case ModelKind::kFcn:
      return dim_a;
    case ModelKind::kCnn:
      return channels * tokens;
    case ModelKind::kConcat:
    case ModelKind::kScar:
      return 2 * channels * tokens;
  }
  return 0;
}

ModelConfig fcn_config(std::uint32_t dim) {
  ModelConfig c;
  c.kind = ModelKind::kFcn;
  c.dim_a = dim;
  return c;
}

ModelConfig cnn_config(std::uint32_t dim, std::uint32_t tokens) {
  ModelConfig c;
  c.kind = ModelKind::kCnn;
  c.dim_a = dim;
  c.tokens = tokens;
  return c;
}

ModelConfig concat_config(std::uint32_t dim_a, std::uint32_t dim_b,
                          std::uint32_t tokens) {
  ModelConfig c;
  c.kind = ModelKind::kConcat;
  c.dim_a = dim_a;
  c.dim_b = dim_b;
  c.tokens = tokens;
  return c;
}

ModelConfig scar_config(std::uint32_t dim_a, std::uint32_t dim_b,
                        std::uint32_t tokens) {
  ModelConfig c = concat_config(dim_a, dim_b, tokens);
  c.kind = ModelKind::kScar;
  return c;
}

std::vector<ParamSpec> parameter_layout(const ModelConfig& config) {
  config.validate();
  std::vector<ParamSpec> layout;
  auto conv = [&](const std::string& prefix) {
    const std::size_t c = config.channels, k = config.kernel;
    layout.push_back({prefix + ".kernel", {c, 1, k}, k, c * k, false});
    layout.push_back({prefix + ".bias", {c}, k, c * k, true});
  };
  auto linear = [&](const std::string& name, std::size_t in, std::size_t out) {
    layout.push_back({name + ".weight", {in, out}, in, out, false});
    layout.push_back({name + ".bias", {out}, in, out, true});
  };

  switch (config.kind) {
    case ModelKind::kFcn:
      break;
    case ModelKind::kCnn:
      conv("conv");
      break;
    case ModelKind::kConcat:
      conv("conv_a");
      conv("conv_b");
      break;
    case ModelKind::kScar: {
      conv("conv_a");
      conv("conv_b");
      const std::size_t c = config.channels;
      for (const char* stage : {"cross1", "cross2"}) {
        for (const char* w : {"q_a", "k_b", "v_b", "q_b", "k_a", "v_a"}) {
          layout.push_back(
              {std::string(stage) + "." + w, {c, c}, c, c, false});
        }
      }
      break;
    }
  }
  linear("fc1", config.head_input_width(), kHidden1);
  linear("fc2", kHidden1, kHidden2);
  linear("out", kHidden2, 1);
  return layout;
}

std::size_t parameter_count(const ModelConfig& config) {
  std::size_t total = 0;
  for (const auto& p : parameter_layout(config)) total += shape_numel(p.shape);
  return total;
}

std::string describe(const ModelConfig& config) {
  std::ostringstream out;
  out << "model=" << to_string(config.kind) << " dim_a=" << config.dim_a;
  if (is_fusion(config.kind)) out << " dim_b=" << config.dim_b;
  if (config.kind != ModelKind::kFcn) {
    out << " channels=" << config.channels << " kernel=" << config.kernel
        << " tokens=" << config.tokens;
  }
  if (config.kind == ModelKind::kScar) {
    out << " heads_cross=" << config.heads_cross
        << " heads_refine=" << config.heads_refine;
  }
  return out.str();
}

}  // namespace scar::models
