// scar/gradcheck_suite.h

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
#include <optional>
#include <string>
#include <vector>

namespace scar::train {

struct GradcheckRow {
  std::string name;
  bool is_model = false;
  double max_rel_error = 0.0;
  std::size_t coords_checked = 0;
  std::size_t attempts = 0;  // points drawn until one avoided every kink
  bool passed = false;
};

struct GradcheckSuiteOptions {
  double tolerance = 1e-4;
  double eps = 1e-5;
  std::uint64_t seed = 7;
  // Coordinates sampled per tensor for the whole-model rows.
  std::size_t model_coords_per_tensor = 48;
  // Corrupts the backward pass of this op kind (negative control).
  std::optional<std::string> fault_kind;
};

// Row names in report order: every differentiable tape op, bce_loss, then
// BCE over fcn, cnn, concat and scar.
std::vector<std::string> gradcheck_row_names();

std::vector<GradcheckRow> run_gradcheck_suite(
    const GradcheckSuiteOptions& options = {});

}  // namespace scar::train
