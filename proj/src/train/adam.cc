// train/adam.cc

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

#include "scar/adam.h"

#include <cmath>
#include <sstream>

namespace scar::train {

void TrainConfig::validate() const {
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw ConfigError("lr must be >= 0");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must be in [0, 1)");
  if (!(eps_adam > 0.0)) throw ConfigError("eps_adam must be > 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout must be in [0, 1)");
  }
  if (max_epochs == 0) throw ConfigError("max_epochs must be >= 1");
  if (patience == 0) throw ConfigError("patience must be >= 1");
  if (!(min_delta >= 0.0)) throw ConfigError("min_delta must be >= 0");
}

std::string TrainConfig::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "lr=" << lr << " batch_size=" << batch_size << " beta1=" << beta1
      << " beta2=" << beta2 << " eps_adam=" << eps_adam
      << " dropout=" << dropout << " max_epochs=" << max_epochs
      << " patience=" << patience << " min_delta=" << min_delta
      << " seed=" << seed;
  return out.str();
}

AdamState AdamState::zeros_like(const std::vector<Tensor<float>>& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.shape());
    s.v.emplace_back(p.shape());
  }
  return s;
}

void adam_step(std::vector<Tensor<float>>& params, AdamState& state,
               const TrainConfig& cfg) {
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ShapeError("adam: state holds " + std::to_string(state.m.size()) +
                     " moments for " + std::to_string(params.size()) +
                     " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].grad().size() != params[i].numel()) {
      throw ShapeError("adam: parameter " + std::to_string(i) +
                       " has no gradient");
    }
    if (state.m[i].shape() != params[i].shape()) {
      throw ShapeError("adam: moment shape " +
                       shape_to_string(state.m[i].shape()) +
                       " does not match parameter " +
                       shape_to_string(params[i].shape()));
    }
    for (std::size_t j = 0; j < params[i].numel(); ++j) {
      if (!std::isfinite(params[i].grad()[j])) {
        throw NumericError("adam: non-finite gradient in parameter " +
                           std::to_string(i) + " at index " +
                           std::to_string(j) + " (step " +
                           std::to_string(state.step + 1) + ")");
      }
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto theta = params[i].data();
    auto g = params[i].grad();
    auto m = state.m[i].data();
    auto v = state.v[i].data();
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double gj = g[j];
      const double mj = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * gj;
      const double vj = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * gj * gj;
      m[j] = static_cast<float>(mj);
      v[j] = static_cast<float>(vj);
      const double update =
          cfg.lr * (mj / bc1) / (std::sqrt(vj / bc2) + cfg.eps_adam);
      theta[j] = static_cast<float>(theta[j] - update);
    }
  }
}

}  // namespace scar::train
