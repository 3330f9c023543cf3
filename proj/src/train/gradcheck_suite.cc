// train/gradcheck_suite.cc

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

#include "scar/gradcheck_suite.h"

#include <functional>

#include "scar/gradcheck.h"
#include "scar/loss.h"
#include "scar/model.h"
#include "scar/ops.h"

namespace scar::train {

namespace {

using models::Model;
using models::ModelConfig;

struct Probe {
  std::vector<Tensor<double>> points;
  ScalarFunction f;
  std::size_t max_coords = 0;
};

Tensor<double> random_tensor(Shape shape, Rng& rng, double scale = 1.0) {
  Tensor<double> t(std::move(shape));
  for (double& v : t.values()) v = rng.uniform(-scale, scale);
  return t;
}

// Contracts v against fixed random weights so every output coordinate gets a
// distinct, nonzero upstream gradient.
Var to_scalar(Tape<double>& tape, Var v, std::uint64_t seed) {
  const std::size_t n = tape.value(v).numel();
  Rng rng(seed);
  Tensor<double> w({n, 1});
  for (double& x : w.values()) x = rng.uniform(-1.0, 1.0);
  Var flat = ops::reshape(tape, v, {1, n});
  return ops::sum(tape, ops::dense(tape, flat, tape.constant(std::move(w)),
                                   std::nullopt));
}

Probe op_probe(const std::string& kind, Rng& rng) {
  const std::uint64_t wseed = rng.next_u64();
  auto unary = [&](Shape shape, std::function<Var(Tape<double>&, Var)> op) {
    Probe p;
    p.points = {random_tensor(std::move(shape), rng)};
    p.f = [op, wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(t, op(t, v[0]), wseed);
    };
    return p;
  };

  if (kind == "dense") {
    Probe p;
    p.points = {random_tensor({3, 4}, rng), random_tensor({4, 5}, rng),
                random_tensor({5}, rng)};
    p.f = [wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(t, ops::dense(t, v[0], v[1], v[2]), wseed);
    };
    return p;
  }
  if (kind == "conv1d") {
    Probe p;
    p.points = {random_tensor({2, 1, 7}, rng), random_tensor({4, 1, 3}, rng),
                random_tensor({4}, rng)};
    p.f = [wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(t, ops::conv1d(t, v[0], v[1], v[2]), wseed);
    };
    return p;
  }
  if (kind == "adaptive_maxpool1d") {
    return unary({2, 3, 10}, [](Tape<double>& t, Var x) {
      return ops::adaptive_maxpool1d(t, x, 4);
    });
  }
  if (kind == "relu") {
    return unary({3, 6}, [](Tape<double>& t, Var x) { return ops::relu(t, x); });
  }
  if (kind == "sigmoid") {
    return unary({3, 6},
                 [](Tape<double>& t, Var x) { return ops::sigmoid(t, x); });
  }
  if (kind == "sdpa") {
    Probe p;
    p.points = {random_tensor({2, 3, 4}, rng), random_tensor({2, 5, 4}, rng),
                random_tensor({2, 5, 3}, rng)};
    p.f = [wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(t, ops::sdpa(t, v[0], v[1], v[2]), wseed);
    };
    return p;
  }
  if (kind == "multi_head_attention") {
    Probe p;
    p.points = {random_tensor({2, 3, 4}, rng), random_tensor({2, 5, 4}, rng),
                random_tensor({4, 4}, rng), random_tensor({4, 4}, rng),
                random_tensor({4, 4}, rng)};
    p.f = [wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(
          t, ops::multi_head_attention(t, v[0], v[1], v[2], v[3], v[4], 2),
          wseed);
    };
    return p;
  }
  if (kind == "dropout") {
    const std::uint64_t mask_seed = rng.next_u64();
    return unary({4, 6}, [mask_seed](Tape<double>& t, Var x) {
      Rng mask_rng(mask_seed);
      return ops::dropout(t, x, 0.3, &mask_rng, true);
    });
  }
  if (kind == "reshape") {
    return unary({2, 6}, [](Tape<double>& t, Var x) {
      return ops::reshape(t, x, {3, 4});
    });
  }
  if (kind == "transpose") {
    return unary({2, 3, 4},
                 [](Tape<double>& t, Var x) { return ops::transpose(t, x); });
  }
  if (kind == "concat") {
    Probe p;
    p.points = {random_tensor({2, 3}, rng), random_tensor({2, 4}, rng)};
    p.f = [wseed](Tape<double>& t, std::span<const Var> v) {
      return to_scalar(t, ops::concat(t, {v[0], v[1]}), wseed);
    };
    return p;
  }
  if (kind == "slice") {
    return unary({3, 6}, [](Tape<double>& t, Var x) {
      return ops::slice(t, x, 1, 4);
    });
  }
  if (kind == "sum") {
    return unary({3, 4}, [](Tape<double>& t, Var x) { return ops::sum(t, x); });
  }
  if (kind == "bce_loss") {
    Probe p;
    Tensor<double> probs({4, 1});
    for (double& v : probs.values()) v = rng.uniform(0.05, 0.95);
    p.points = {std::move(probs)};
    p.f = [](Tape<double>& t, std::span<const Var> v) {
      static const std::uint8_t labels[] = {0, 1, 1, 0};
      return bce_loss(t, v[0], labels);
    };
    return p;
  }
  throw ConfigError("gradcheck suite has no probe for op " + kind);
}

ModelConfig small_config(const std::string& name) {
  if (name == "fcn") return models::fcn_config(6);
  if (name == "cnn") return models::cnn_config(12, 4);
  if (name == "concat") return models::concat_config(10, 12, 4);
  if (name == "scar") return models::scar_config(10, 12, 4);
  throw ConfigError("unknown model " + name);
}

Probe model_probe(const std::string& name, Rng& rng, std::size_t coords) {
  const ModelConfig cfg = small_config(name);
  Rng init(rng.next_u64());
  const Model<double> model = Model<float>(cfg, init).cast<double>();
  Probe p;
  p.points = model.params();
  // Scale the head so the sigmoid is not saturated and BCE stays informative.
  p.points.push_back(random_tensor({2, cfg.dim_a}, rng, 2.0));
  const bool fusion = models::is_fusion(cfg.kind);
  if (fusion) p.points.push_back(random_tensor({2, cfg.dim_b}, rng, 2.0));
  const std::size_t n_params = model.params().size();
  const std::uint64_t mask_seed = rng.next_u64();
  p.f = [cfg, n_params, fusion, mask_seed](Tape<double>& t,
                                           std::span<const Var> v) {
    Model<double> m(cfg, [&] {
      std::vector<Tensor<double>> ps;
      for (std::size_t i = 0; i < n_params; ++i) ps.push_back(t.value(v[i]));
      return ps;
    }());
    typename Model<double>::Bound bound;
    bound.vars.assign(v.begin(), v.begin() + n_params);
    Rng mask_rng(mask_seed);
    const models::ForwardContext ctx{true, 0.2, &mask_rng};
    std::optional<Var> xb;
    if (fusion) xb = v[n_params + 1];
    Var probs = m.forward(t, bound, v[n_params], xb, ctx);
    static const std::uint8_t labels[] = {0, 1};
    return bce_loss(t, probs, labels);
  };
  p.max_coords = coords;
  return p;
}

GradcheckRow run_row(const std::string& name, bool is_model,
                     const GradcheckSuiteOptions& options, Rng& rng) {
  GradcheckRow row;
  row.name = name;
  row.is_model = is_model;
  constexpr std::size_t kMaxAttempts = 8;
  GradcheckResult result;
  while (row.attempts < kMaxAttempts) {
    ++row.attempts;
    Probe probe = is_model
                      ? model_probe(name, rng, options.model_coords_per_tensor)
                      : op_probe(name, rng);
    GradcheckOptions go;
    go.eps = options.eps;
    go.max_coords_per_input = probe.max_coords;
    go.seed = rng.next_u64();
    go.fault_kind = options.fault_kind;
    result = gradcheck(probe.f, probe.points, go);
    if (result.branch_stable) break;
  }
  row.max_rel_error = result.max_rel_error;
  row.coords_checked = result.coords_checked;
  row.passed = result.branch_stable && result.max_rel_error < options.tolerance;
  return row;
}

const std::vector<std::string>& model_rows() {
  static const std::vector<std::string> names = {"fcn", "cnn", "concat",
                                                 "scar"};
  return names;
}

}  // namespace

std::vector<std::string> gradcheck_row_names() {
  std::vector<std::string> names = ops::differentiable_op_kinds();
  names.push_back("bce_loss");
  for (const auto& m : model_rows()) names.push_back(m);
  return names;
}

std::vector<GradcheckRow> run_gradcheck_suite(
    const GradcheckSuiteOptions& options) {
  Rng rng(options.seed);
  std::vector<GradcheckRow> rows;
  for (const auto& kind : ops::differentiable_op_kinds()) {
    rows.push_back(run_row(kind, false, options, rng));
  }
  rows.push_back(run_row("bce_loss", false, options, rng));
  for (const auto& m : model_rows()) {
    rows.push_back(run_row(m, true, options, rng));
  }
  return rows;
}

}  // namespace scar::train
