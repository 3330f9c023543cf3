// scar/trainer.h

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
#include <vector>

#include "scar/adam.h"
#include "scar/dataset.h"
#include "scar/metrics.h"
#include "scar/model.h"
#include "scar/train_config.h"

namespace scar::train {

using data::Examples;
using models::Model;

// Gathers rows `index[begin, end)` of ex into input tensors.
struct Batch {
  Tensor<float> xa;
  std::optional<Tensor<float>> xb;
  std::vector<std::uint8_t> labels;
};
Batch gather_batch(const Examples& ex, std::span<const std::size_t> index);

// Checks that the model's input dims match the examples. Throws ShapeError.
void check_compatible(const Model<float>& model, const Examples& ex);

// One pass over the data: seeded shuffle, batches of cfg.batch_size with the
// last partial batch kept, one Adam step per batch. Returns the mean batch
// loss.
double train_epoch(Model<float>& model, const Examples& data,
                   const TrainConfig& cfg, Rng& rng, AdamState& adam);

// Inference-mode probabilities in data order. Rows are scored independently,
// so the result does not depend on batch_size.
std::vector<float> score_dataset(const Model<float>& model,
                                 const Examples& data,
                                 std::size_t batch_size = 256);

EvalReport evaluate(const Model<float>& model, const Examples& data,
                    std::string split);

// Patience-based stopping on a metric where lower is better. The best value
// updates on any strict decrease; the patience counter only resets when the
// decrease beats min_delta.
class EarlyStopping {
 public:
  EarlyStopping(std::size_t patience, double min_delta);

  // Returns true when `value` is a new best.
  bool update(double value);
  bool should_stop() const { return stale_ >= patience_; }
  double best() const { return best_; }

 private:
  std::size_t patience_;
  double min_delta_;
  double best_;
  double reference_;
  std::size_t stale_ = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double dev_eer = 0.0;
  std::int64_t elapsed_ms = 0;
};

struct FitResult {
  Model<float> best;
  std::size_t best_epoch = 0;
  double best_dev_eer = 0.0;
  std::vector<EpochRecord> history;
};

// Trains with early stopping on dev EER and returns the best-dev checkpoint.
FitResult fit(Model<float> model, const Examples& train, const Examples& dev,
              const TrainConfig& cfg,
              const std::function<void(const EpochRecord&)>& on_epoch = {});

}  // namespace scar::train
