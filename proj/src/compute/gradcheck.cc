// compute/gradcheck.cc

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

#include "scar/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scar/rng.h"

namespace scar {

namespace {

struct Evaluation {
  double value;
  std::uint64_t signature;
};

Evaluation evaluate(const ScalarFunction& f,
                    const std::vector<Tensor<double>>& points) {
  Tape<double> tape;
  tape.set_track_branches(true);
  std::vector<Var> vars;
  for (const auto& p : points) vars.push_back(tape.constant(p));
  Var out = f(tape, vars);
  if (tape.value(out).numel() != 1) {
    throw ShapeError("gradcheck: function must return a scalar, got " +
                     shape_to_string(tape.shape(out)));
  }
  const double v = tape.value(out)[0];
  if (!std::isfinite(v)) {
    throw NumericError("gradcheck: non-finite function value");
  }
  return {v, tape.branch_signature()};
}

std::vector<std::size_t> pick_coords(std::size_t n, std::size_t limit,
                                     Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (limit == 0 || limit >= n) return idx;
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

GradcheckResult gradcheck(const ScalarFunction& f,
                          const std::vector<Tensor<double>>& points,
                          const GradcheckOptions& options) {
  if (!(options.eps >= 1e-5 && options.eps <= 1e-3)) {
    throw ConfigError("gradcheck: eps must be in [1e-5, 1e-3]");
  }

  std::vector<std::vector<double>> analytic;
  std::uint64_t base_signature;
  {
    Tape<double> tape;
    tape.set_track_branches(true);
    if (options.fault_kind) {
      tape.inject_backward_fault(*options.fault_kind, options.fault_scale);
    }
    std::vector<Var> vars;
    for (const auto& p : points) vars.push_back(tape.leaf(p, true));
    Var out = f(tape, vars);
    if (!std::isfinite(tape.value(out)[0])) {
      throw NumericError("gradcheck: non-finite function value");
    }
    base_signature = tape.branch_signature();
    tape.backward(out);
    for (Var v : vars) analytic.push_back(tape.grad(v).values());
  }

  GradcheckResult result;
  Rng rng(options.seed);
  std::vector<Tensor<double>> probe = points;
  for (std::size_t in = 0; in < points.size(); ++in) {
    for (std::size_t c :
         pick_coords(points[in].numel(), options.max_coords_per_input, rng)) {
      const double x0 = points[in][c];
      probe[in][c] = x0 + options.eps;
      const Evaluation plus = evaluate(f, probe);
      probe[in][c] = x0 - options.eps;
      const Evaluation minus = evaluate(f, probe);
      probe[in][c] = x0;
      if (plus.signature != base_signature ||
          minus.signature != base_signature) {
        result.branch_stable = false;
      }
      const double numeric = (plus.value - minus.value) / (2.0 * options.eps);
      const double a = analytic[in][c];
      if (!std::isfinite(numeric) || !std::isfinite(a)) {
        throw NumericError("gradcheck: non-finite derivative");
      }
      const double err = std::abs(a - numeric) / std::max(1.0, std::abs(a));
      ++result.coords_checked;
      if (err > result.max_rel_error) {
        result.max_rel_error = err;
        result.worst_input = in;
        result.worst_coord = c;
      }
    }
  }
  return result;
}

double gradcheck(const std::function<Var(Tape<double>&, Var)>& f,
                 const Tensor<double>& point, double eps) {
  GradcheckOptions options;
  options.eps = eps;
  return gradcheck(
             [&f](Tape<double>& t, std::span<const Var> v) { return f(t, v[0]); },
             {point}, options)
      .max_rel_error;
}

}  // namespace scar
