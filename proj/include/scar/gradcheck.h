// scar/gradcheck.h

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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scar/tape.h"

namespace scar {

// A differentiable scalar function of one or more tensors, recorded on a
// double-precision tape.
using ScalarFunction =
    std::function<Var(Tape<double>&, std::span<const Var>)>;

struct GradcheckOptions {
  double eps = 1e-5;
  // 0 checks every coordinate; otherwise a seeded subset of at most this many
  // coordinates per input tensor.
  std::size_t max_coords_per_input = 0;
  std::uint64_t seed = 0;
  // Forwarded to Tape::inject_backward_fault for the analytic pass.
  std::optional<std::string> fault_kind;
  double fault_scale = 1.5;
};

struct GradcheckResult {
  // max |analytic - numeric| / max(1, |analytic|) over checked coordinates.
  double max_rel_error = 0.0;
  std::size_t worst_input = 0;
  std::size_t worst_coord = 0;
  std::size_t coords_checked = 0;
  // False if some perturbation flipped a relu/max-pool decision, in which
  // case the central difference straddles a kink and the point is unusable.
  bool branch_stable = true;
};

// Compares reverse-mode gradients with central differences
// (f(x + eps e) - f(x - eps e)) / 2 eps. eps must lie in [1e-5, 1e-3].
// Throws NumericError if any evaluation is non-finite.
GradcheckResult gradcheck(const ScalarFunction& f,
                          const std::vector<Tensor<double>>& points,
                          const GradcheckOptions& options = {});

// Single-input convenience form returning the max relative error.
double gradcheck(const std::function<Var(Tape<double>&, Var)>& f,
                 const Tensor<double>& point, double eps);

}  // namespace scar
