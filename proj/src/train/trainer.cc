// train/trainer.cc

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

#include "scar/trainer.h"

#include <chrono>
#include <limits>
#include <numeric>

#include "scar/loss.h"

namespace scar::train {

Batch gather_batch(const Examples& ex, std::span<const std::size_t> index) {
  const std::size_t n = index.size();
  Batch b;
  std::vector<float> xa(n * ex.dim_a);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(&ex.xa[index[i] * ex.dim_a], ex.dim_a, &xa[i * ex.dim_a]);
    b.labels.push_back(ex.labels[index[i]]);
  }
  b.xa = Tensor<float>({n, ex.dim_a}, std::move(xa));
  if (ex.paired()) {
    std::vector<float> xb(n * ex.dim_b);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(&ex.xb[index[i] * ex.dim_b], ex.dim_b, &xb[i * ex.dim_b]);
    }
    b.xb = Tensor<float>({n, ex.dim_b}, std::move(xb));
  }
  return b;
}

void check_compatible(const Model<float>& model, const Examples& ex) {
  const auto& c = model.config();
  const bool fusion = models::is_fusion(c.kind);
  if (fusion != ex.paired()) {
    throw ShapeError(std::string(models::to_string(c.kind)) +
                     (fusion ? " needs paired inputs" : " needs a single input"));
  }
  if (c.dim_a != ex.dim_a || (fusion && c.dim_b != ex.dim_b)) {
    throw ShapeError("data dims (" + std::to_string(ex.dim_a) + ", " +
                     std::to_string(ex.dim_b) + ") do not match " +
                     models::describe(c));
  }
}

double train_epoch(Model<float>& model, const Examples& data,
                   const TrainConfig& cfg, Rng& rng, AdamState& adam) {
  if (data.size() == 0) throw DataError(DataError::Kind::kMissingSplit,
                                              "train_epoch: empty data");
  check_compatible(model, data);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));

  const models::ForwardContext ctx{true, cfg.dropout, &rng};
  double loss_sum = 0.0;
  std::size_t batches = 0;
  for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
    const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
    Batch batch = gather_batch(
        data, std::span<const std::size_t>(order).subspan(begin, end - begin));
    Tape<float> tape;
    auto bound = model.bind(tape, true);
    Var xa = tape.constant(std::move(batch.xa));
    std::optional<Var> xb;
    if (batch.xb) xb = tape.constant(std::move(*batch.xb));
    Var probs = model.forward(tape, bound, xa, xb, ctx);
    Var loss = bce_loss(tape, probs, batch.labels);
    tape.backward(loss);
    model.collect_grads(tape, bound);
    adam_step(model.params(), adam, cfg);
    loss_sum += tape.value(loss)[0];
    ++batches;
  }
  return loss_sum / static_cast<double>(batches);
}

std::vector<float> score_dataset(const Model<float>& model,
                                 const Examples& data,
                                 std::size_t batch_size) {
  check_compatible(model, data);
  std::vector<float> scores;
  scores.reserve(data.size());
  const models::ForwardContext ctx{};
  std::vector<std::size_t> index;
  for (std::size_t begin = 0; begin < data.size(); begin += batch_size) {
    const std::size_t end = std::min(data.size(), begin + batch_size);
    index.resize(end - begin);
    std::iota(index.begin(), index.end(), begin);
    Batch batch = gather_batch(data, index);
    Tape<float> tape;
    auto bound = model.bind(tape, false);
    Var xa = tape.constant(std::move(batch.xa));
    std::optional<Var> xb;
    if (batch.xb) xb = tape.constant(std::move(*batch.xb));
    Var probs = model.forward(tape, bound, xa, xb, ctx);
    const auto& p = tape.value(probs).values();
    scores.insert(scores.end(), p.begin(), p.end());
  }
  return scores;
}

EvalReport evaluate(const Model<float>& model, const Examples& data,
                    std::string split) {
  const auto scores = score_dataset(model, data);
  return make_report(std::move(split), scores, data.labels);
}

EarlyStopping::EarlyStopping(std::size_t patience, double min_delta)
    : patience_(patience), min_delta_(min_delta),
      best_(std::numeric_limits<double>::infinity()),
      reference_(std::numeric_limits<double>::infinity()) {}

bool EarlyStopping::update(double value) {
  if (value < reference_ - min_delta_) {
    reference_ = value;
    stale_ = 0;
  } else {
    ++stale_;
  }
  if (value < best_) {
    best_ = value;
    return true;
  }
  return false;
}

FitResult fit(Model<float> model, const Examples& train, const Examples& dev,
              const TrainConfig& cfg,
              const std::function<void(const EpochRecord&)>& on_epoch) {
  cfg.validate();
  if (train.size() == 0 || dev.size() == 0) {
    throw DataError(DataError::Kind::kMissingSplit,
                          "fit: train and dev splits must be nonempty");
  }
  check_compatible(model, train);
  check_compatible(model, dev);

  Rng rng(cfg.seed);
  AdamState adam = AdamState::zeros_like(model.params());
  EarlyStopping stopper(cfg.patience, cfg.min_delta);
  FitResult result{model, 0, 0.0, {}};
  const auto start = std::chrono::steady_clock::now();

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = train_epoch(model, train, cfg, rng, adam);
    rec.dev_eer = evaluate(model, dev, "dev").eer;
    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    result.history.push_back(rec);
    if (stopper.update(rec.dev_eer)) {
      result.best = model;
      result.best_epoch = epoch;
      result.best_dev_eer = rec.dev_eer;
    }
    if (on_epoch) on_epoch(rec);
    if (stopper.should_stop()) break;
  }
  return result;
}

}  // namespace scar::train
