// scar/adam.h

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
#include <vector>

#include "scar/tensor.h"
#include "scar/train_config.h"

namespace scar::train {

struct AdamState {
  std::vector<Tensor<float>> m;
  std::vector<Tensor<float>> v;
  std::uint64_t step = 0;

  static AdamState zeros_like(const std::vector<Tensor<float>>& params);
};

// Bias-corrected Adam using the gradient slot of each parameter. Moments are
// updated in double and stored as float. A non-finite gradient aborts the
// step before any parameter changes.
void adam_step(std::vector<Tensor<float>>& params, AdamState& state,
               const TrainConfig& cfg);

}  // namespace scar::train
