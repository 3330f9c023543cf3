// scar/loss.h

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
#include <span>

#include "scar/tape.h"

namespace scar::train {

inline constexpr double kBceClamp = 1e-7;

// -mean(y log p + (1 - y) log(1 - p)) for probabilities p of shape [n, 1]
// and labels y in {0, 1}. p is clamped to [clamp, 1 - clamp]; clamped entries
// pass no gradient.
template <typename Real>
Var bce_loss(Tape<Real>& tape, Var probs, std::span<const std::uint8_t> labels,
             double clamp = kBceClamp);

}  // namespace scar::train
