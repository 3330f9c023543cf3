// train/loss.cc

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

#include "scar/loss.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace scar::train {

template <typename Real>
Var bce_loss(Tape<Real>& tape, Var probs, std::span<const std::uint8_t> labels,
             double clamp) {
  const auto& p = tape.value(probs).values();
  if (p.size() != labels.size()) {
    throw ShapeError("bce_loss: " + std::to_string(p.size()) +
                     " predictions for " + std::to_string(labels.size()) +
                     " labels");
  }
  if (p.empty()) throw ShapeError("bce_loss: empty batch");
  const Real lo = static_cast<Real>(clamp), hi = Real(1) - lo;
  const Real n = static_cast<Real>(p.size());
  Real total = 0;
  std::vector<std::uint8_t> y(labels.begin(), labels.end());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Real q = std::clamp(p[i], lo, hi);
    total += y[i] ? std::log(q) : std::log(Real(1) - q);
    if (tape.tracks_branches() && (p[i] < lo || p[i] > hi)) tape.note_branch(i);
  }
  return tape.record(
      "bce_loss", Tensor<Real>({1}, {-total / n}), {probs},
      [probs, y = std::move(y), lo, hi, n](Tape<Real>& t, Var self) {
        const Real g = t.output_grad(self)[0];
        const auto& p = t.value(probs).values();
        auto gp = t.grad_buffer(probs);
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i] < lo || p[i] > hi) continue;
          gp[i] += y[i] ? -g / (n * p[i]) : g / (n * (Real(1) - p[i]));
        }
      });
}

template Var bce_loss<float>(Tape<float>&, Var, std::span<const std::uint8_t>,
                             double);
template Var bce_loss<double>(Tape<double>&, Var,
                              std::span<const std::uint8_t>, double);

}  // namespace scar::train
